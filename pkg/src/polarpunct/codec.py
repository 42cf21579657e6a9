"""Polar codec: encoder, CRC helpers, SC decoding and CRC-aided SCL decoding.

Conventions (fixed so results are bit-exact reproducible):

* The generator is the bit-reversal permutation composed with the n-fold
  Kronecker power of [[1, 0], [1, 1]]; encoding is an involution.
* Bit channel i of the natural input index i matches the reliability
  profiles from :mod:`polarpunct.construct`.
* Frozen bits are all-zero. A decision LLR of exactly 0 decodes to 0, so a
  punctured information channel errs with probability 1/2 on uniform data.
* CRC: MSB-first long division, initial register 0, no reflection, no
  final XOR; CRC bits are appended after the information bits and the
  payload occupies the information set in ascending index order.
* The check-node combine is the exact log-domain boxplus by default; a
  min-sum variant sits behind the ``min_sum`` flag.
* SCL path metrics are exact: a path extension by decision u on decision
  LLR L adds log(1 + exp(-(1 - 2u) L)), so with a full list the best
  final metric is the maximum-likelihood path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bitops import bit_reverse
from .construct import PolarCodeSpec

LLR_SATURATION = 40.0


# --------------------------------------------------------------------------- CRC

@dataclass(frozen=True)
class CrcPoly:
    """CRC generator polynomial; ``poly`` holds the coefficients below x**width."""

    name: str
    width: int
    poly: int


CRC8_0X9B = CrcPoly("crc8-0x9b", 8, 0x9B)
CRC16_0X8005 = CrcPoly("crc16-0x8005", 16, 0x8005)

_CRC_BY_WIDTH = {8: CRC8_0X9B, 16: CRC16_0X8005}


def crc_for_width(width: int) -> CrcPoly:
    try:
        return _CRC_BY_WIDTH[width]
    except KeyError:
        raise ValueError(f"no CRC polynomial registered for width {width}") from None


def crc_remainder(bits, poly: CrcPoly) -> np.ndarray:
    """Remainder of bitwise polynomial long division, MSB first, init 0."""
    if not isinstance(poly, CrcPoly):
        raise ValueError(f"unknown polynomial id {poly!r}")
    bits = np.asarray(bits).astype(np.uint8).ravel()
    r = poly.width
    mask = (1 << r) - 1
    reg = 0
    for b in bits:
        feedback = ((reg >> (r - 1)) & 1) ^ int(b)
        reg = (reg << 1) & mask
        if feedback:
            reg ^= poly.poly
    return np.array([(reg >> (r - 1 - k)) & 1 for k in range(r)], dtype=np.uint8)


def crc_append(bits, poly: CrcPoly) -> np.ndarray:
    """Append the CRC remainder; ``crc_check`` passes on the result."""
    bits = np.asarray(bits).astype(np.uint8).ravel()
    if bits.size < 1:
        raise ValueError("need at least one information bit")
    return np.concatenate([bits, crc_remainder(bits, poly)])


def crc_check(bits, poly: CrcPoly) -> bool:
    """True iff the trailing ``poly.width`` bits are the CRC of the rest."""
    return not crc_remainder(bits, poly).any()


@lru_cache(maxsize=32)
def _crc_remainder_matrix(length: int, poly: CrcPoly) -> np.ndarray:
    """Rows: remainder of each unit vector; batched remainder = bits @ M mod 2."""
    m = np.zeros((length, poly.width), dtype=np.uint8)
    for i in range(length):
        e = np.zeros(length, dtype=np.uint8)
        e[i] = 1
        m[i] = crc_remainder(e, poly)
    return m


def crc_check_batch(bits: np.ndarray, poly: CrcPoly) -> np.ndarray:
    """Vectorized ``crc_check`` over the last axis."""
    bits = np.asarray(bits, dtype=np.uint8)
    m = _crc_remainder_matrix(bits.shape[-1], poly)
    rem = bits @ m % 2
    return ~rem.any(axis=-1)


# --------------------------------------------------------------------------- encoder

@lru_cache(maxsize=32)
def bit_reversal_permutation(n: int) -> np.ndarray:
    if n == 0:
        return np.zeros(1, dtype=np.intp)
    return np.array([bit_reverse(i, n) for i in range(1 << n)], dtype=np.intp)


def _check_block(x: np.ndarray) -> int:
    N = x.shape[-1]
    n = N.bit_length() - 1
    if N < 1 or (1 << n) != N:
        raise ValueError(f"block length must be a power of two, got {N}")
    return n


def polar_transform(u) -> np.ndarray:
    """Butterfly transform over GF(2) (the Kronecker-power part, no permutation)."""
    u = np.asarray(u)
    N = u.shape[-1]
    _check_block(u)
    x = np.ascontiguousarray(u.astype(np.uint8) & 1)
    m = 2
    while m <= N:
        v = x.reshape(-1, N // m, m)
        v[..., : m // 2] ^= v[..., m // 2 :]
        m *= 2
    return x


def encode(u) -> np.ndarray:
    """Map input bits to the codeword; operates on the last axis, batchable.

    An involution: ``encode(encode(u)) == u``.
    """
    u = np.asarray(u)
    n = _check_block(u)
    w = polar_transform(u)
    return w[..., bit_reversal_permutation(n)]


def place_payload(payload, spec: PolarCodeSpec) -> np.ndarray:
    """Spread info (+CRC) bits over the information set, zeros on frozen bits."""
    payload = np.asarray(payload).astype(np.uint8)
    want = spec.k + spec.crc_bits
    if payload.shape[-1] != want:
        raise ValueError(f"payload length {payload.shape[-1]} != k + crc_bits = {want}")
    u = np.zeros(payload.shape[:-1] + (spec.size,), dtype=np.uint8)
    u[..., np.array(spec.info_set, dtype=np.intp)] = payload
    return u


def extract_payload(u, spec: PolarCodeSpec) -> np.ndarray:
    """Inverse of :func:`place_payload` (info + CRC bits, ascending index)."""
    u = np.asarray(u)
    return u[..., np.array(spec.info_set, dtype=np.intp)]


# --------------------------------------------------------------------------- node operations

def _boxplus(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact check-node combine 2*atanh(tanh(a/2)*tanh(b/2)), stable form.

    Exactly zero when either input is zero, which keeps punctured (zero-LLR)
    positions punctured through the tree.
    """
    out = np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))
    out += np.log1p(np.exp(-np.abs(a + b))) - np.log1p(np.exp(-np.abs(a - b)))
    return out


def _minsum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))


def _g(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return b + (1.0 - 2.0 * c) * a


def _frozen_mask(spec: PolarCodeSpec) -> np.ndarray:
    mask = np.zeros(spec.size, dtype=bool)
    mask[np.array(spec.frozen_set, dtype=np.intp)] = True
    return mask


# --------------------------------------------------------------------------- SC

def sc_decode(llr, spec: PolarCodeSpec, *, min_sum: bool = False,
              return_decision_llrs: bool = False):
    """Successive cancellation decoding.

    Parameters
    ----------
    llr : array (..., N)
        Channel LLRs log P(y|0)/P(y|1) in coded-symbol order. Punctured
        positions carry exactly 0.
    spec : PolarCodeSpec
        Frozen positions decode to 0; information positions are
        hard-decided from the bit-channel LLR (0 on a tie).

    Returns the estimated input vector(s) ``u_hat`` with frozen zeros
    included; with ``return_decision_llrs`` also the per-bit decision LLRs.
    """
    llr = np.asarray(llr, dtype=np.float64)
    if llr.shape[-1] != spec.size:
        raise ValueError(f"LLR length {llr.shape[-1]} != N = {spec.size}")
    batch_shape = llr.shape[:-1]
    w = llr.reshape(-1, spec.size)[:, bit_reversal_permutation(spec.n)]
    B, N = w.shape
    frozen = _frozen_mask(spec)
    f = _minsum if min_sum else _boxplus

    u_hat = np.zeros((B, N), dtype=np.uint8)
    dec_llr = np.zeros((B, N))

    def rec(node_llr: np.ndarray, lo: int) -> np.ndarray:
        m = node_llr.shape[1]
        if m == 1:
            dec_llr[:, lo] = node_llr[:, 0]
            if frozen[lo]:
                return np.zeros((B, 1), dtype=np.uint8)
            u = (node_llr[:, 0] < 0).astype(np.uint8)
            u_hat[:, lo] = u
            return u[:, None]
        half = m // 2
        a, b = node_llr[:, :half], node_llr[:, half:]
        x_left = rec(f(a, b), lo)
        x_right = rec(_g(a, b, x_left), lo + half)
        return np.concatenate([x_left ^ x_right, x_right], axis=1)

    rec(w, 0)
    u_hat = u_hat.reshape(batch_shape + (N,))
    if return_decision_llrs:
        return u_hat, dec_llr.reshape(batch_shape + (N,))
    return u_hat


# --------------------------------------------------------------------------- SCL

def _softplus(x: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, x)


class _ListState:
    """Batched list-decoder state: arrays indexed (frame, path, position).

    Per-depth LLR and partial-sum buffers hold the single active segment of
    each depth, so a path permutation has to reorder every buffer. Locals
    never survive across a leaf: everything is re-read from the registry,
    which keeps views valid after the fancy-indexed path gathers.
    """

    def __init__(self, w: np.ndarray, L: int, frozen: np.ndarray, f):
        B, N = w.shape
        self.B, self.L, self.N = B, L, N
        self.n = N.bit_length() - 1
        self.f = f
        self.p = [np.repeat(w[:, None, :], L, axis=1)]
        self.c = [np.zeros((B, L, N), dtype=np.uint8)]
        for d in range(1, self.n + 1):
            self.p.append(np.zeros((B, L, N >> d)))
            self.c.append(np.zeros((B, L, N >> d), dtype=np.uint8))
        self.frozen = frozen
        self.pm = np.full((B, L), np.inf)
        self.pm[:, 0] = 0.0
        self.u = np.zeros((B, L, N), dtype=np.uint8)
        self._bidx = np.arange(B)[:, None]

    def run(self) -> None:
        self._rec(0, 0)

    def _rec(self, d: int, lo: int) -> None:
        if d == self.n:
            self._leaf(lo)
            return
        half = (self.N >> d) // 2
        self.p[d + 1][...] = self.f(self.p[d][..., :half], self.p[d][..., half:])
        self._rec(d + 1, lo)
        self.c[d][..., :half] = self.c[d + 1]
        self.p[d + 1][...] = _g(self.p[d][..., :half], self.p[d][..., half:],
                                self.c[d][..., :half])
        self._rec(d + 1, lo + half)
        self.c[d][..., half:] = self.c[d + 1]
        self.c[d][..., :half] ^= self.c[d][..., half:]

    def _leaf(self, lo: int) -> None:
        llr = self.p[self.n][..., 0]
        if self.frozen[lo]:
            self.pm = self.pm + _softplus(-llr)
            self.c[self.n][..., 0] = 0
            return
        hard = llr < 0
        mag = np.abs(llr)
        cand = np.concatenate([self.pm + _softplus(-mag), self.pm + _softplus(mag)], axis=1)
        order = np.argsort(cand, axis=1, kind="stable")[:, : self.L]
        src = order % self.L
        flip = (order >= self.L).astype(np.uint8)
        self._permute(src)
        dec = np.take_along_axis(hard, src, axis=1).astype(np.uint8) ^ flip
        self.pm = np.take_along_axis(cand, order, axis=1)
        self.u[..., lo] = dec
        self.c[self.n][..., 0] = dec

    def _permute(self, src: np.ndarray) -> None:
        # p[0] holds identical channel LLRs on every path; skip it.
        for d in range(1, self.n + 1):
            self.p[d] = self.p[d][self._bidx, src]
        for d in range(self.n + 1):
            self.c[d] = self.c[d][self._bidx, src]
        self.u = self.u[self._bidx, src]


def scl_decode(llr, spec: PolarCodeSpec, list_size: int,
               crc: CrcPoly | None = None, *, min_sum: bool = False) -> np.ndarray:
    """Successive cancellation list decoding with optional CRC selection.

    Keeps the ``list_size`` best paths by exact path metric (ties to the
    lower path index). The returned path is the best-metric one passing the
    CRC when ``crc`` is given, otherwise the best-metric path. With
    ``list_size=1`` and no CRC the output equals :func:`sc_decode`
    bit for bit.
    """
    if list_size < 1:
        raise ValueError(f"list size must be >= 1, got {list_size}")
    if crc is not None and spec.crc_bits != crc.width:
        raise ValueError(f"spec carries {spec.crc_bits} CRC bits but poly width is {crc.width}")
    llr = np.asarray(llr, dtype=np.float64)
    if llr.shape[-1] != spec.size:
        raise ValueError(f"LLR length {llr.shape[-1]} != N = {spec.size}")
    batch_shape = llr.shape[:-1]
    w = llr.reshape(-1, spec.size)[:, bit_reversal_permutation(spec.n)]
    B = w.shape[0]

    state = _ListState(w, list_size, _frozen_mask(spec), _minsum if min_sum else _boxplus)
    state.run()

    order = np.argsort(state.pm, axis=1, kind="stable")
    if crc is None:
        best = order[:, 0]
    else:
        payload = extract_payload(state.u, spec)
        ok = crc_check_batch(payload.reshape(B * list_size, -1), crc).reshape(B, list_size)
        ok_sorted = np.take_along_axis(ok, order, axis=1)
        first_ok = np.argmax(ok_sorted, axis=1)
        pick = np.where(ok_sorted.any(axis=1), first_ok, 0)
        best = np.take_along_axis(order, pick[:, None], axis=1)[:, 0]
    u_best = state.u[np.arange(B), best]
    return u_best.reshape(batch_shape + (spec.size,))
