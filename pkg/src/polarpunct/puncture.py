"""Puncture pattern generation and diagnostics.

Two pattern families:

* QUP (quasi-uniform puncturing): source set {0, ..., Q-1}, coded symbols
  at its bit-reversed image. Channel independent.
* WQP (worst-quality puncturing): source set = the Q least reliable frozen
  bit channels. Requires Q <= |F|; the propagated destination set is then
  guaranteed to stay inside the frozen set, so no information bit channel
  is ever punctured.

Diagnostics report the punctured information channels, the union bound of
the block error probability (punctured information channels counted at
error probability 1/2, everything else at its unpunctured value) and the
quality loss: for each punctured coded bit, 1/2 minus the unpunctured error
probability of the destination channel its source propagates to.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .bitops import bit_reverse, bit_reverse_set
from .construct import PolarCodeSpec, ReliabilityProfile
from .degrade import propagate_puncture

QUP = "qup"
WQP = "wqp"
CUSTOM = "custom"


class UnsupportedConfiguration(ValueError):
    """Raised for configurations the pattern guarantees do not extend to."""


@dataclass(frozen=True)
class PuncturePattern:
    """A puncture choice in both index domains.

    ``source_set`` lives in the bit-channel index domain, ``coded_set`` is
    its bit-reversed image (the coded-symbol positions not transmitted) and
    ``destination_set`` the propagated set of punctured bit channels.
    ``pairs`` aligns each source with its destination.
    """

    scheme: str
    n: int
    source_set: tuple[int, ...]
    coded_set: tuple[int, ...]
    destination_set: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]

    @property
    def q(self) -> int:
        return len(self.source_set)

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def transmitted(self) -> int:
        return self.size - self.q

    def to_json_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "n": self.n,
            "q": self.q,
            "source_set": list(self.source_set),
            "coded_set": list(self.coded_set),
            "destination_set": list(self.destination_set),
            "pairs": [{"source": s, "destination": d} for s, d in self.pairs],
        }


@dataclass(frozen=True)
class PatternReport:
    """Diagnostics of a pattern against a code spec and reliability profile."""

    scheme: str
    q: int
    punctured_info_channels: tuple[int, ...]
    union_bound: float
    quality_loss: float
    per_bit_loss: tuple[float, ...]
    n: int
    info_set: tuple[int, ...]
    profile_method: str

    def to_json_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "q": self.q,
            "punctured_info_channels": list(self.punctured_info_channels),
            "union_bound": self.union_bound,
            "quality_loss": self.quality_loss,
            "per_bit_loss": list(self.per_bit_loss),
        }


@dataclass(frozen=True)
class PatternComparison:
    """Quality-loss and union-bound deltas between two reports (first minus second)."""

    quality_loss_delta: float
    union_bound_delta: float


def _pattern_from_source(source: Iterable[int], n: int, scheme: str) -> PuncturePattern:
    src = tuple(sorted(set(source)))
    prop = propagate_puncture(src, n)
    coded = tuple(sorted(bit_reverse(i, n) for i in src))
    dest = tuple(sorted(prop.destinations))
    return PuncturePattern(scheme=scheme, n=n, source_set=src, coded_set=coded,
                           destination_set=dest, pairs=prop.pairs)


def qup_pattern(n: int, q: int) -> PuncturePattern:
    """Quasi-uniform pattern: source {0, ..., q-1}, coded symbols bit-reversed."""
    N = 1 << n
    if not 0 < q < N:
        raise ValueError(f"puncture count must be in (0, {N}), got {q}")
    return _pattern_from_source(range(q), n, QUP)


def wqp_pattern(spec: PolarCodeSpec, profile: ReliabilityProfile, q: int) -> PuncturePattern:
    """Worst-quality pattern: the q least reliable frozen bit channels.

    The frozen set is ordered by ascending quality (error probability when
    the profile carries one, the raw metric otherwise; ties to the lower
    index) and the first q entries become the source set. Raises
    :class:`UnsupportedConfiguration` for q > |F|, where the
    no-punctured-information-channel guarantee no longer holds.
    """
    if spec.n != profile.n:
        raise ValueError("spec and profile widths differ")
    if q <= 0:
        raise ValueError(f"puncture count must be positive, got {q}")
    frozen = set(spec.frozen_set)
    if q > len(frozen):
        raise UnsupportedConfiguration(
            f"q={q} exceeds the frozen-set size {len(frozen)}; "
            "puncturing beyond N - (k + crc_bits) is not supported")
    worst = [int(i) for i in profile.worst_first() if int(i) in frozen]
    return _pattern_from_source(worst[:q], spec.n, WQP)


def custom_pattern(coded_positions: Iterable[int], n: int) -> PuncturePattern:
    """Pattern from explicit coded-symbol positions (what a radio drops).

    Converted internally to the bit-channel domain via bit reversal. An
    empty position set yields the trivial q = 0 pattern.
    """
    coded = sorted(set(coded_positions))
    N = 1 << n
    if len(coded) >= N:
        raise ValueError("cannot puncture every coded symbol")
    return _pattern_from_source(bit_reverse_set(coded, n), n, CUSTOM)


def analyze_pattern(pattern: PuncturePattern, spec: PolarCodeSpec,
                    profile: ReliabilityProfile) -> PatternReport:
    """Union bound and quality loss of a pattern under a fixed information set.

    Punctured information channels are counted at error probability 1/2 in
    the union bound; all other information channels keep their unpunctured
    error probability. The per-bit quality loss of puncturing the coded bit
    paired with source i is 1/2 minus the unpunctured error probability of
    the destination channel i propagates to.
    """
    if pattern.n != spec.n or spec.n != profile.n:
        raise ValueError("pattern, spec and profile widths differ")
    if profile.error_prob is None:
        raise UnsupportedConfiguration(
            f"{profile.method} profiles carry no error probability; "
            "quality-loss reporting needs a probability-bearing construction")
    pb = profile.error_prob
    info = np.array(spec.info_set, dtype=int)
    dest = set(pattern.destination_set)
    hit = tuple(sorted(dest & set(spec.info_set)))

    per_bit = tuple(float(0.5 - pb[d]) for _, d in pattern.pairs)
    union = float(np.where(np.isin(info, sorted(dest)), 0.5, pb[info]).sum())
    return PatternReport(
        scheme=pattern.scheme, q=pattern.q,
        punctured_info_channels=hit,
        union_bound=union,
        quality_loss=float(sum(per_bit)),
        per_bit_loss=per_bit,
        n=spec.n, info_set=spec.info_set, profile_method=profile.method,
    )


def compare_patterns(a: PatternReport, b: PatternReport) -> PatternComparison:
    """Deltas (first minus second); negative means the first pattern is better."""
    if (a.n, a.info_set, a.profile_method) != (b.n, b.info_set, b.profile_method):
        raise ValueError("reports come from different specs or profiles")
    return PatternComparison(
        quality_loss_delta=a.quality_loss - b.quality_loss,
        union_bound_delta=a.union_bound - b.union_bound,
    )
