"""Bit-index algebra: binary expansions, bit reversal, and the covering order.

All functions take the index width ``n`` explicitly; an index is valid for
width ``n`` when it lies in ``[0, 2**n)``. Bit 1 of an expansion is the most
significant bit, bit ``n`` the least significant.
"""

from __future__ import annotations

from collections.abc import Iterable

MIN_WIDTH = 1
MAX_WIDTH = 32


def check_width(n: int) -> None:
    if not isinstance(n, (int,)) or not MIN_WIDTH <= n <= MAX_WIDTH:
        raise ValueError(f"width must be an integer in [{MIN_WIDTH}, {MAX_WIDTH}], got {n!r}")


def check_index(i: int, n: int) -> None:
    check_width(n)
    if not 0 <= i < (1 << n):
        raise ValueError(f"index {i} out of range [0, {1 << n}) for width {n}")


def binary_expand(i: int, n: int) -> tuple[int, ...]:
    """Binary expansion of ``i`` as exactly ``n`` bits, MSB first."""
    check_index(i, n)
    return tuple((i >> (n - 1 - k)) & 1 for k in range(n))


def bit_reverse(i: int, n: int) -> int:
    """Reverse the ``n``-bit expansion of ``i``. Self-inverse."""
    check_index(i, n)
    r = 0
    for _ in range(n):
        r = (r << 1) | (i & 1)
        i >>= 1
    return r


def bit_reverse_set(indices: Iterable[int], n: int) -> frozenset[int]:
    """Bit-reverse each element of a set of indices sharing width ``n``.

    Cardinality is preserved because reversal is a permutation.
    """
    return frozenset(bit_reverse(i, n) for i in indices)


def covers(i: int, j: int, n: int) -> bool:
    """True iff every bit of ``j``'s expansion is <= the matching bit of ``i``'s.

    This is the covering relation ``j`` below ``i``: reflexive, transitive,
    antisymmetric. A covered bit channel is stochastically degraded with
    respect to the covering one.
    """
    check_index(i, n)
    check_index(j, n)
    return (j & ~i) == 0
