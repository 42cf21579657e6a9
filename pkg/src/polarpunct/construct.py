"""Bit-channel reliability profiles and fixed information-set selection.

Three constructions are provided:

* ``bec_bhattacharyya`` -- exact Bhattacharyya recursion for the binary
  erasure channel (Z_upper = 2Z - Z^2, Z_lower = Z^2 per level),
* ``ga_reliability`` -- density evolution under a Gaussian approximation
  for BPSK over AWGN, tracking the per-channel LLR mean,
* ``pw_reliability`` -- polarization-weight beta expansion (rank only, no
  error probability).

Indices are natural bit-channel indices: the MSB of the index selects the
transform applied at the first (size-2) polarization level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import brentq
from scipy.special import erfc

BEC_EXACT = "bec"
GA = "ga"
PW = "pw"

DEFAULT_PW_BETA = 2.0 ** 0.25

# Mean value where the LLR-mean transfer function switches from the
# exponential-polynomial fit to the asymptotic tail form.
_PHI_SPLIT = 10.0
_PHI_INV_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class ReliabilityProfile:
    """Per-bit-channel quality metric plus derived error probability.

    ``metric`` holds Z for the BEC construction (lower is better), the LLR
    mean for GA (higher is better) and the polarization weight for PW
    (higher is better). ``error_prob`` is ``None`` for PW.
    """

    n: int
    method: str
    params: dict = field(repr=False)
    metric: np.ndarray = field(repr=False)
    error_prob: Optional[np.ndarray] = field(repr=False, default=None)

    def __post_init__(self):
        if self.method not in (BEC_EXACT, GA, PW):
            raise ValueError(f"unknown construction method {self.method!r}")
        if len(self.metric) != 1 << self.n:
            raise ValueError("metric length must be 2**n")

    @property
    def size(self) -> int:
        return 1 << self.n

    def quality(self) -> np.ndarray:
        """Per-index quality key; higher means more reliable."""
        if self.method == BEC_EXACT:
            return -self.metric
        return self.metric

    def best_first(self) -> np.ndarray:
        """Indices from most to least reliable.

        Exact metric ties are broken by higher popcount first (an index with
        more ones covers, hence upgrades, one with fewer), then by lower
        index. The popcount key only matters for degenerate profiles (metric
        underflow, erasure probability 0 or 1) and keeps the selected set
        upward-closed under the covering order, which the puncture-closure
        guarantee relies on.
        """
        idx = np.arange(self.size)
        pop = np.array([bin(i).count("1") for i in range(self.size)])
        order = np.lexsort((idx, -pop, -self.quality()))
        return order

    def worst_first(self) -> np.ndarray:
        """Indices from least to most reliable (ties: lower popcount, lower index)."""
        idx = np.arange(self.size)
        pop = np.array([bin(i).count("1") for i in range(self.size)])
        return np.lexsort((idx, pop, self.quality()))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "method": self.method,
            "params": dict(self.params),
            "metric": self.metric.tolist(),
            "error_prob": None if self.error_prob is None else self.error_prob.tolist(),
        }


@dataclass(frozen=True)
class PolarCodeSpec:
    """Code parameters with a fixed information set.

    ``info_set`` holds the ``k + crc_bits`` most reliable indices under the
    construction it was derived from; ``frozen_set`` is its complement.
    Once selected the sets stay fixed, in particular across puncturing.
    """

    n: int
    k: int
    crc_bits: int
    info_set: tuple[int, ...]
    frozen_set: tuple[int, ...]
    construction: str

    def __post_init__(self):
        N = 1 << self.n
        info = set(self.info_set)
        frozen = set(self.frozen_set)
        if info & frozen:
            raise ValueError("information and frozen sets overlap")
        if info | frozen != set(range(N)):
            raise ValueError("information and frozen sets must partition [0, N)")
        if len(info) != self.k + self.crc_bits:
            raise ValueError("information set size must equal k + crc_bits")

    @property
    def size(self) -> int:
        return 1 << self.n

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "crc_bits": self.crc_bits,
            "I": list(self.info_set),
            "F": list(self.frozen_set),
            "construction": self.construction,
        }


def bec_bhattacharyya(n: int, erasure_prob: float) -> ReliabilityProfile:
    """Exact Bhattacharyya parameters of all bit channels of a BEC.

    Starting from Z = erasure probability, each level maps
    Z -> 2Z - Z^2 (index bit 0) and Z -> Z^2 (index bit 1). The reported
    error probability is Z/2, the bit error probability of an erasure
    channel under a fair tie break.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if not 0.0 <= erasure_prob <= 1.0:
        raise ValueError(f"erasure probability must be in [0, 1], got {erasure_prob}")
    z = np.array([float(erasure_prob)])
    for _ in range(n):
        nxt = np.empty(2 * z.size)
        nxt[0::2] = 2.0 * z - z * z
        nxt[1::2] = z * z
        z = nxt
    return ReliabilityProfile(
        n=n, method=BEC_EXACT, params={"erasure_prob": float(erasure_prob)},
        metric=z, error_prob=z / 2.0,
    )


def _ln_phi(x: float) -> float:
    """log of the LLR-mean transfer function (mean -> 1 - normalized capacity proxy)."""
    if x < 0:
        raise ValueError("mean must be >= 0")
    if x == 0.0:
        return 0.0
    if x < _PHI_SPLIT:
        return -0.4527 * x ** 0.86 + 0.0218
    return 0.5 * (math.log(math.pi) - math.log(x)) - x / 4.0 + math.log1p(-10.0 / (7.0 * x))


def _phi(x: float) -> float:
    return math.exp(_ln_phi(x))


def _phi_inv_ln(ln_y: float) -> float:
    """Inverse of the transfer function given log(y), by bracketed root finding."""
    if ln_y >= 0.0:
        return 0.0
    hi = 1.0
    for _ in range(80):
        if _ln_phi(hi) <= ln_y:
            break
        hi *= 2.0
    else:
        raise RuntimeError(f"failed to bracket phi inverse for ln_y={ln_y}")
    try:
        return brentq(lambda x: _ln_phi(x) - ln_y, 0.0, hi, rtol=_PHI_INV_RTOL)
    except Exception as exc:  # pragma: no cover - diagnostics path
        raise RuntimeError(f"phi inverse did not converge for ln_y={ln_y}: {exc}") from exc


def ga_reliability(n: int, design_snr_db: float) -> ReliabilityProfile:
    """Gaussian-approximation density evolution for BPSK over AWGN.

    ``design_snr_db`` is the design Es/N0 in dB; the all-channel LLR mean is
    initialized to 2/sigma^2 with sigma^2 = 1 / (2 * 10**(snr/10)). Per
    level the pair of output means is

        m_upper = phi_inv(1 - (1 - phi(m))**2)        (index bit 0)
        m_lower = 2 m                                  (index bit 1)

    where phi is the standard two-regime transfer approximation
    (exp(-0.4527 x**0.86 + 0.0218) below x = 10, the asymptotic
    sqrt(pi/x) exp(-x/4) (1 - 10/(7x)) above). The upper branch is carried
    in the log domain so large means do not underflow. The error probability
    is Q(sqrt(m/2)).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if not math.isfinite(design_snr_db):
        raise ValueError("design SNR must be finite")
    sigma2 = 1.0 / (2.0 * 10.0 ** (design_snr_db / 10.0))
    means = np.array([2.0 / sigma2])
    for _ in range(n):
        upper = np.empty(means.size)
        for i, m in enumerate(means):
            lp = _ln_phi(float(m))
            # ln(1 - (1 - phi)^2) = ln(phi) + ln(2 - phi), stable for tiny phi
            ln_y = lp + math.log(2.0 - math.exp(lp))
            upper[i] = _phi_inv_ln(ln_y)
        nxt = np.empty(2 * means.size)
        nxt[0::2] = upper
        nxt[1::2] = 2.0 * means
        means = nxt
    error_prob = 0.5 * erfc(np.sqrt(means) / 2.0)  # Q(sqrt(m/2))
    return ReliabilityProfile(
        n=n, method=GA, params={"design_snr_db": float(design_snr_db)},
        metric=means, error_prob=error_prob,
    )


def pw_reliability(n: int, beta: float = DEFAULT_PW_BETA) -> ReliabilityProfile:
    """Polarization weights: weight(i) = sum of beta**j over set bits j of i.

    Bit j = 0 is the LSB. Provides a reliability rank only; no error
    probability is attached.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    N = 1 << n
    weights = np.zeros(N)
    for j in range(n):
        weights[(np.arange(N) >> j) & 1 == 1] += beta ** j
    return ReliabilityProfile(n=n, method=PW, params={"beta": float(beta)}, metric=weights)


def select_information_set(profile: ReliabilityProfile, count: int,
                           crc_bits: int = 0) -> PolarCodeSpec:
    """Pick the ``count`` most reliable indices as the information set.

    ``count`` includes any CRC bits (``k = count - crc_bits`` pure
    information bits). The selection is deterministic; see
    :meth:`ReliabilityProfile.best_first` for the tie-break rule.
    """
    N = profile.size
    if not 0 < count <= N:
        raise ValueError(f"count must be in [1, {N}], got {count}")
    if crc_bits not in (0, 8, 16):
        raise ValueError(f"crc_bits must be 0, 8 or 16, got {crc_bits}")
    if count <= crc_bits:
        raise ValueError("count must exceed crc_bits")
    order = profile.best_first()
    info = tuple(sorted(int(i) for i in order[:count]))
    frozen = tuple(sorted(set(range(N)) - set(info)))
    params = ",".join(f"{k}={v:g}" for k, v in profile.params.items())
    return PolarCodeSpec(
        n=profile.n, k=count - crc_bits, crc_bits=crc_bits,
        info_set=info, frozen_set=frozen,
        construction=f"{profile.method}({params})",
    )
