"""Monte-Carlo FER/BER sweep harness.

A sweep runs one point per channel parameter. Each point draws uniform
random information bits per frame, attaches the CRC, places the payload on
the information set, encodes, drops the punctured coded symbols, sends the
survivors through the channel, re-inserts zero LLRs, decodes and counts
frame and information-bit errors.

Reproducibility: frames are processed in fixed-size batches and every batch
derives its own random stream from (master_seed, point_index, batch_index),
so (config, master_seed) fully determines every emitted number regardless
of execution order. A point stops after the batch that reaches max_frames
or min_frame_errors, whichever comes first; stopping on an error count
makes the FER estimate a fixed-error-count estimator.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import channel as chan
from . import codec, construct, puncture
from ._version import __version__

DECODERS = ("sc", "scl")
PUNCTURINGS = ("none", "qup", "wqp", "custom")
CONSTRUCTIONS = (construct.BEC_EXACT, construct.GA, construct.PW)


@dataclass(frozen=True)
class SimConfig:
    """Full description of one simulation sweep."""

    n: int
    k: int
    crc_bits: int = 0
    construction: str = "ga"
    puncturing: str = "none"
    q: int = 0
    custom_coded: tuple[int, ...] | None = None
    decoder: str = "sc"
    list_size: int = 8
    channel: str = chan.AWGN
    sweep: tuple[float, ...] = ()
    max_frames: int = 100_000
    min_frame_errors: int = 100
    master_seed: int = 0
    batch_size: int = 1000

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def transmitted(self) -> int:
        return self.size - self.q

    @property
    def rate(self) -> float:
        return self.k / self.transmitted

    def construction_kind(self) -> str:
        return self.construction.partition(":")[0]

    def construction_value(self) -> float | None:
        _, _, val = self.construction.partition(":")
        return float(val) if val else None

    def validate(self) -> None:
        N = self.size
        if not 1 <= self.n <= 20:
            raise ValueError(f"n must be in [1, 20], got {self.n}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.crc_bits not in (0, 8, 16):
            raise ValueError(f"crc_bits must be 0, 8 or 16, got {self.crc_bits}")
        if self.k + self.crc_bits > N:
            raise ValueError("k + crc_bits exceeds the block length")
        if self.puncturing not in PUNCTURINGS:
            raise ValueError(f"puncturing must be one of {PUNCTURINGS}")
        if self.puncturing == "none" and self.q != 0:
            raise ValueError("q must be 0 without puncturing")
        if self.puncturing in ("qup", "wqp") and not 0 < self.q < N:
            raise ValueError(f"q must be in (0, {N}) for {self.puncturing}")
        if self.puncturing == "wqp" and self.q > N - (self.k + self.crc_bits):
            raise ValueError("wqp requires q <= N - (k + crc_bits)")
        if self.puncturing == "custom":
            if self.custom_coded is None:
                raise ValueError("custom puncturing needs coded positions")
            if len(set(self.custom_coded)) != self.q:
                raise ValueError("q must match the number of custom coded positions")
        if self.k > self.transmitted:
            raise ValueError("more information bits than transmitted symbols")
        kind = self.construction_kind()
        if kind not in CONSTRUCTIONS:
            raise ValueError(f"construction must be one of {CONSTRUCTIONS}")
        if kind == construct.BEC_EXACT and self.construction_value() is None:
            raise ValueError("bec construction needs an erasure probability, e.g. bec:0.5")
        if kind == construct.GA and self.construction_value() is None and self.channel != chan.AWGN:
            raise ValueError("ga construction needs an explicit design SNR on this channel")
        if self.decoder not in DECODERS:
            raise ValueError(f"decoder must be one of {DECODERS}")
        if self.decoder == "scl" and self.list_size < 1:
            raise ValueError("list_size must be >= 1")
        if self.crc_bits:
            codec.crc_for_width(self.crc_bits)
        if self.channel not in (chan.AWGN, chan.BEC):
            raise ValueError(f"channel must be awgn or bec, got {self.channel}")
        if not self.sweep:
            raise ValueError("sweep must contain at least one point")
        if len(set(self.sweep)) != len(self.sweep):
            raise ValueError("sweep points must be distinct")
        if self.channel == chan.BEC and not all(0.0 <= e <= 1.0 for e in self.sweep):
            raise ValueError("BEC sweep points must be erasure probabilities in [0, 1]")
        if self.max_frames < 1 or self.min_frame_errors < 1 or self.batch_size < 1:
            raise ValueError("max_frames, min_frame_errors and batch_size must be >= 1")
        if self.master_seed < 0:
            raise ValueError("master_seed must be >= 0")

    def design_snr_db(self) -> float | None:
        """Design Es/N0 for the GA construction.

        Defaults to the sweep's Eb/N0 midpoint converted to Es/N0 at the
        punctured rate when no explicit value is configured.
        """
        if self.construction_kind() != construct.GA:
            return None
        explicit = self.construction_value()
        if explicit is not None:
            return explicit
        mid = 0.5 * (min(self.sweep) + max(self.sweep))
        return mid + 10.0 * math.log10(self.rate)

    def to_json_dict(self) -> dict:
        d = asdict(self)
        d["custom_coded"] = None if self.custom_coded is None else list(self.custom_coded)
        d["sweep"] = list(self.sweep)
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "SimConfig":
        d = dict(d)
        if d.get("custom_coded") is not None:
            d["custom_coded"] = tuple(d["custom_coded"])
        d["sweep"] = tuple(d["sweep"])
        return cls(**d)


@dataclass(frozen=True)
class PointResult:
    sweep_param: float
    frames: int
    frame_errors: int
    bit_errors: int
    info_bits_sent: int
    fer: float
    ber: float
    wall_time_s: float = field(compare=False)

    def to_json_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SimResult:
    config: SimConfig
    points: tuple[PointResult, ...]
    pattern: dict | None
    version: str = __version__

    def to_json_dict(self) -> dict:
        return {
            "version": self.version,
            "config": self.config.to_json_dict(),
            "pattern": self.pattern,
            "points": [p.to_json_dict() for p in self.points],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "SimResult":
        return cls(
            config=SimConfig.from_json_dict(d["config"]),
            points=tuple(PointResult(**p) for p in d["points"]),
            pattern=d.get("pattern"),
            version=d.get("version", __version__),
        )


def build_components(cfg: SimConfig):
    """Profile, code spec, pattern and CRC polynomial for a validated config."""
    cfg.validate()
    kind = cfg.construction_kind()
    if kind == construct.BEC_EXACT:
        profile = construct.bec_bhattacharyya(cfg.n, cfg.construction_value())
    elif kind == construct.GA:
        profile = construct.ga_reliability(cfg.n, cfg.design_snr_db())
    else:
        beta = cfg.construction_value()
        profile = construct.pw_reliability(cfg.n, construct.DEFAULT_PW_BETA if beta is None else beta)
    spec = construct.select_information_set(profile, cfg.k + cfg.crc_bits, crc_bits=cfg.crc_bits)
    if cfg.puncturing == "none":
        pattern = None
    elif cfg.puncturing == "qup":
        pattern = puncture.qup_pattern(cfg.n, cfg.q)
    elif cfg.puncturing == "wqp":
        pattern = puncture.wqp_pattern(spec, profile, cfg.q)
    else:
        pattern = puncture.custom_pattern(cfg.custom_coded, cfg.n)
    crc_poly = codec.crc_for_width(cfg.crc_bits) if cfg.crc_bits else None
    return profile, spec, pattern, crc_poly


def _decode(llr: np.ndarray, cfg: SimConfig, spec, crc_poly) -> np.ndarray:
    if cfg.decoder == "sc":
        return codec.sc_decode(llr, spec)
    return codec.scl_decode(llr, spec, cfg.list_size, crc=crc_poly)


def run_point(cfg: SimConfig, sweep_value: float, *, _components=None) -> PointResult:
    """Monte-Carlo loop for one sweep point; deterministic given the config."""
    if _components is None:
        _components = build_components(cfg)
    _, spec, pattern, crc_poly = _components
    point_index = cfg.sweep.index(sweep_value)
    channel_cfg = chan.ChannelConfig(kind=cfg.channel, param=sweep_value,
                                     rate_for_ebn0=cfg.rate)
    crc_matrix = codec._crc_remainder_matrix(cfg.k, crc_poly) if crc_poly else None

    start = time.perf_counter()
    frames = frame_errors = bit_errors = 0
    batch_index = 0
    while frames < cfg.max_frames and frame_errors < cfg.min_frame_errors:
        B = min(cfg.batch_size, cfg.max_frames - frames)
        rng = np.random.default_rng([cfg.master_seed, point_index, batch_index])
        info = rng.integers(0, 2, size=(B, cfg.k), dtype=np.uint8)
        payload = info if crc_matrix is None else np.concatenate(
            [info, info @ crc_matrix % 2], axis=1)
        u = codec.place_payload(payload, spec)
        x = codec.encode(u)
        tx = x if pattern is None else chan.puncture_tx(x, pattern)
        rx = chan.transmit(tx, channel_cfg, rng)
        soft = rx if pattern is None else chan.depuncture_rx(rx, pattern)
        u_hat = _decode(soft, cfg, spec, crc_poly)
        info_hat = codec.extract_payload(u_hat, spec)[:, : cfg.k]
        errs = info_hat != info
        frame_errors += int(errs.any(axis=1).sum())
        bit_errors += int(errs.sum())
        frames += B
        batch_index += 1

    info_bits = frames * cfg.k
    return PointResult(
        sweep_param=float(sweep_value), frames=frames, frame_errors=frame_errors,
        bit_errors=bit_errors, info_bits_sent=info_bits,
        fer=frame_errors / frames, ber=bit_errors / info_bits,
        wall_time_s=time.perf_counter() - start,
    )


def _run_point_task(args) -> PointResult:
    cfg, value = args
    return run_point(cfg, value)


def run_sweep(cfg: SimConfig, workers: int = 1) -> SimResult:
    """Run every sweep point; points are independent and order-insensitive."""
    components = build_components(cfg)
    pattern = components[2]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = tuple(pool.map(_run_point_task, [(cfg, v) for v in cfg.sweep]))
    else:
        points = tuple(run_point(cfg, v, _components=components) for v in cfg.sweep)
    return SimResult(config=cfg, points=points,
                     pattern=None if pattern is None else pattern.to_json_dict())


CSV_COLUMNS = ("sweep_param", "frames", "frame_errors", "FER", "bit_errors", "BER")


def result_csv(result: SimResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for p in result.points:
        writer.writerow([p.sweep_param, p.frames, p.frame_errors, p.fer,
                         p.bit_errors, p.ber])
    return buf.getvalue()


def emit(result: SimResult, out_prefix: str, formats: tuple[str, ...] = ("json", "csv")) -> list[str]:
    """Write the result as <prefix>.json and/or <prefix>.csv; returns the paths."""
    paths = []
    for fmt in formats:
        if fmt not in ("json", "csv"):
            raise ValueError(f"unknown format {fmt!r}")
        path = f"{out_prefix}.{fmt}"
        try:
            with open(path, "w") as fh:
                if fmt == "json":
                    json.dump(result.to_json_dict(), fh, indent=2)
                    fh.write("\n")
                else:
                    fh.write(result_csv(result))
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
        paths.append(path)
    return paths


def load_result(path: str) -> SimResult:
    with open(path) as fh:
        return SimResult.from_json_dict(json.load(fh))
