"""Recursive degradation process on bit-channel index sets.

The process carries a set of bit-channel indices through ``n`` levels. At
level ``k`` the indices that differ only at bit ``k`` of their binary
expansions (bit 1 = MSB) form a pair, and the basic mapping is applied to
each pair:

* exactly one member occupied: it moves to the member whose bit ``k`` is 0,
* both members occupied: each maps to itself.

The resulting source-to-destination map is a bijection, and every
destination is covered by its source (see :func:`polarpunct.bitops.covers`).
The same mapping describes puncture propagation: when the coded symbols at
the bit-reversed image of a source set are not transmitted, the destination
set is exactly the set of bit channels that end up carrying zero
information (zero LLR at the decoder).
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .bitops import bit_reverse_set, check_index, check_width


def basic_map(occupied: Iterable[int]) -> dict[int, int]:
    """One pair step: map a nonempty subset of {0, 1} to its degraded image.

    ``{0} -> {0}``, ``{1} -> {0}``, ``{0, 1} -> {0, 1}`` with 0 -> 0 and
    1 -> 1. Returns the element pairing as a dict. Cardinality is preserved.
    """
    occ = frozenset(occupied)
    if occ == frozenset({0}):
        return {0: 0}
    if occ == frozenset({1}):
        return {1: 0}
    if occ == frozenset({0, 1}):
        return {0: 0, 1: 1}
    raise ValueError(f"occupied must be a nonempty subset of {{0, 1}}, got {set(occupied)!r}")


@dataclass(frozen=True)
class PropagationMap:
    """Source-to-destination bijection produced by the degradation process.

    ``pairs`` is ordered by ascending source index. ``levels[k][j]`` is the
    position of the j-th source after ``k`` levels, so ``levels[0]`` lists
    the sources and ``levels[n]`` the destinations, aligned pairwise.
    """

    n: int
    pairs: tuple[tuple[int, int], ...]
    levels: tuple[tuple[int, ...], ...]

    @property
    def sources(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.pairs)

    @property
    def destinations(self) -> frozenset[int]:
        return frozenset(d for _, d in self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "pairs": [{"source": s, "destination": d} for s, d in self.pairs],
            "levels": [list(level) for level in self.levels],
        }


def propagate(indices: Iterable[int], n: int) -> PropagationMap:
    """Run the degradation process on a level-0 index set of width ``n``."""
    check_width(n)
    sources = sorted(set(indices))
    for i in sources:
        check_index(i, n)

    position = {s: s for s in sources}
    levels = [tuple(sources)]
    for k in range(1, n + 1):
        bit = 1 << (n - k)
        occupied = set(position.values())
        moved: dict[int, int] = {}
        for s, p in position.items():
            lo = p & ~bit
            pair_occupancy = set()
            if lo in occupied:
                pair_occupancy.add(0)
            if (lo | bit) in occupied:
                pair_occupancy.add(1)
            mapping = basic_map(pair_occupancy)
            moved[s] = lo | (mapping[1 if p & bit else 0] << (n - k))
        position = moved
        levels.append(tuple(position[s] for s in sources))

    pairs = tuple((s, position[s]) for s in sources)
    return PropagationMap(n=n, pairs=pairs, levels=tuple(levels))


def propagate_puncture(indices: Iterable[int], n: int) -> PropagationMap:
    """Puncture propagation: identical mapping to :func:`propagate`.

    ``indices`` is the source set in the bit-channel index domain; the coded
    symbols actually dropped sit at its bit-reversed image. The destinations
    are the bit channels rendered useless by the puncture.
    """
    return propagate(indices, n)


def punctured_bit_channels(coded_positions: Iterable[int], n: int) -> frozenset[int]:
    """Bit channels punctured when the given coded-symbol positions are dropped.

    Convenience wrapper: bit-reverses the coded positions into the source
    domain, then propagates.
    """
    return propagate_puncture(bit_reverse_set(coded_positions, n), n).destinations
