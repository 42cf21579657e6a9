"""Channel models and transmit/receive rate matching.

BPSK over AWGN maps bit 0 -> +1, bit 1 -> -1 with noise variance
sigma^2 = 1 / (2 R 10**(EbN0_dB / 10)) and LLR 2y / sigma^2, where R is the
punctured rate (information bits over transmitted symbols, CRC overhead
excluded). The BEC produces LLR 0 on an erasure and +/- the saturation
value otherwise. Dropped coded symbols reappear at the receiver as LLR 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codec import LLR_SATURATION
from .puncture import PuncturePattern

AWGN = "awgn"
BEC = "bec"


@dataclass(frozen=True)
class ChannelConfig:
    """Channel kind plus its sweep parameter.

    ``param`` is Eb/N0 in dB for AWGN and the erasure probability for the
    BEC. ``rate_for_ebn0`` is the punctured code rate R = K/M used in the
    Eb/N0 to noise-variance conversion (ignored for the BEC).
    """

    kind: str
    param: float
    rate_for_ebn0: float = 1.0

    def __post_init__(self):
        if self.kind not in (AWGN, BEC):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if self.kind == BEC and not 0.0 <= self.param <= 1.0:
            raise ValueError(f"erasure probability must be in [0, 1], got {self.param}")
        if self.kind == AWGN and not 0.0 < self.rate_for_ebn0 <= 1.0:
            raise ValueError(f"rate must be in (0, 1], got {self.rate_for_ebn0}")

    def noise_variance(self) -> float:
        if self.kind != AWGN:
            raise ValueError("noise variance is only defined for the AWGN channel")
        return 1.0 / (2.0 * self.rate_for_ebn0 * 10.0 ** (self.param / 10.0))


def puncture_tx(x, pattern: PuncturePattern) -> np.ndarray:
    """Drop the pattern's coded positions; survivors keep ascending order."""
    x = np.asarray(x)
    if x.shape[-1] != pattern.size:
        raise ValueError(f"codeword length {x.shape[-1]} != N = {pattern.size}")
    keep = np.setdiff1d(np.arange(pattern.size), np.array(pattern.coded_set, dtype=np.intp))
    return x[..., keep]


def transmit(bits, cfg: ChannelConfig, rng) -> np.ndarray:
    """Send bits through the channel, returning received LLRs.

    ``rng`` is a :class:`numpy.random.Generator` or an integer seed.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    bits = np.asarray(bits).astype(np.uint8)
    if cfg.kind == AWGN:
        sigma2 = cfg.noise_variance()
        symbols = 1.0 - 2.0 * bits
        y = symbols + np.sqrt(sigma2) * rng.standard_normal(bits.shape)
        return 2.0 * y / sigma2
    erased = rng.random(bits.shape) < cfg.param
    llr = np.where(bits == 0, LLR_SATURATION, -LLR_SATURATION)
    return np.where(erased, 0.0, llr)


def depuncture_rx(rx_llr, pattern: PuncturePattern) -> np.ndarray:
    """Insert LLR 0 at the pattern's coded positions, restoring length N."""
    rx_llr = np.asarray(rx_llr, dtype=np.float64)
    if rx_llr.shape[-1] != pattern.transmitted:
        raise ValueError(
            f"received length {rx_llr.shape[-1]} != N - Q = {pattern.transmitted}")
    keep = np.setdiff1d(np.arange(pattern.size), np.array(pattern.coded_set, dtype=np.intp))
    out = np.zeros(rx_llr.shape[:-1] + (pattern.size,))
    out[..., keep] = rx_llr
    return out
