import dataclasses
import json

import numpy as np
import pytest

from polarpunct.sim import (
    CSV_COLUMNS,
    SimConfig,
    build_components,
    emit,
    load_result,
    result_csv,
    run_point,
    run_sweep,
)


def tiny_cfg(**kw) -> SimConfig:
    base = dict(n=5, k=12, crc_bits=0, construction="ga", puncturing="qup", q=8,
                decoder="sc", channel="awgn", sweep=(2.0, 4.0), max_frames=400,
                min_frame_errors=1000, master_seed=9, batch_size=100)
    base.update(kw)
    return SimConfig(**base)


class TestConfigValidation:
    def test_valid(self):
        tiny_cfg().validate()

    @pytest.mark.parametrize("kw", [
        dict(k=0),
        dict(crc_bits=5),
        dict(q=32),
        dict(puncturing="wqp", q=25),          # beyond N - k
        dict(puncturing="none", q=4),
        dict(puncturing="custom"),              # missing positions
        dict(decoder="bp"),
        dict(channel="fading"),
        dict(sweep=()),
        dict(sweep=(1.0, 1.0)),
        dict(construction="bec"),               # missing erasure probability
        dict(construction="quantized:1"),
        dict(channel="bec", sweep=(0.2, 1.4)),
        dict(master_seed=-1),
        dict(k=30, q=8),                        # k > transmitted symbols
    ])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            tiny_cfg(**kw).validate()

    def test_ga_design_defaults_to_sweep_midpoint(self):
        cfg = tiny_cfg(sweep=(1.0, 3.0))
        # Es/N0 = midpoint Eb/N0 + 10 log10(R) with the punctured rate
        expected = 2.0 + 10 * np.log10(cfg.rate)
        assert cfg.design_snr_db() == pytest.approx(expected)

    def test_ga_explicit_design(self):
        assert tiny_cfg(construction="ga:1.25").design_snr_db() == 1.25

    def test_bec_channel_needs_explicit_ga_design(self):
        with pytest.raises(ValueError):
            tiny_cfg(channel="bec", construction="ga", sweep=(0.3,)).validate()

    def test_round_trip_json(self):
        cfg = tiny_cfg()
        back = SimConfig.from_json_dict(json.loads(json.dumps(cfg.to_json_dict())))
        assert back == cfg


class TestBuildComponents:
    def test_patterns_by_scheme(self):
        profile, spec, pattern, crc = build_components(tiny_cfg())
        assert pattern.scheme == "qup"
        assert crc is None
        assert len(spec.info_set) == 12

    def test_wqp_destination_avoids_info(self):
        cfg = tiny_cfg(puncturing="wqp", q=8, crc_bits=8, k=12)
        _, spec, pattern, crc = build_components(cfg)
        assert not set(pattern.destination_set) & set(spec.info_set)
        assert crc.width == 8

    def test_custom(self):
        cfg = tiny_cfg(puncturing="custom", q=3, custom_coded=(0, 8, 16))
        _, _, pattern, _ = build_components(cfg)
        assert pattern.coded_set == (0, 8, 16)

    def test_rejected_before_any_trial(self):
        with pytest.raises(ValueError):
            run_point(tiny_cfg(q=40), 2.0)


class TestRunPoint:
    def test_noiseless_point(self):
        cfg = tiny_cfg(sweep=(30.0,), max_frames=200)
        res = run_point(cfg, 30.0)
        assert res.fer == 0.0
        assert res.ber == 0.0
        assert res.frames == 200

    def test_counts_consistent(self):
        cfg = tiny_cfg(sweep=(1.0,), max_frames=300)
        res = run_point(cfg, 1.0)
        assert res.fer == res.frame_errors / res.frames
        assert res.ber == res.bit_errors / res.info_bits_sent
        assert res.info_bits_sent == res.frames * cfg.k
        assert res.bit_errors >= res.frame_errors

    def test_matched_seed_rerun_identical(self):
        cfg = tiny_cfg(sweep=(2.0,))
        a = run_point(cfg, 2.0)
        b = run_point(cfg, 2.0)
        assert a == b  # wall time excluded from comparison

    def test_seed_changes_results(self):
        cfg = tiny_cfg(sweep=(1.5,), max_frames=300)
        a = run_point(cfg, 1.5)
        b = run_point(dataclasses.replace(cfg, master_seed=10), 1.5)
        assert (a.frame_errors, a.bit_errors) != (b.frame_errors, b.bit_errors)

    def test_max_frames_cap(self):
        cfg = tiny_cfg(sweep=(0.0,), max_frames=250, min_frame_errors=10_000)
        assert run_point(cfg, 0.0).frames == 250

    def test_early_stop_on_frame_errors(self):
        cfg = tiny_cfg(sweep=(-5.0,), max_frames=100_000, min_frame_errors=30,
                       batch_size=50)
        res = run_point(cfg, -5.0)
        assert res.frame_errors >= 30
        assert res.frames < 100_000


class TestRunSweep:
    def test_points_match_run_point(self):
        cfg = tiny_cfg()
        sweep = run_sweep(cfg)
        singles = [run_point(cfg, v) for v in cfg.sweep]
        assert list(sweep.points) == singles
        assert sweep.pattern["scheme"] == "qup"

    def test_parallel_workers_identical(self):
        cfg = tiny_cfg(max_frames=200)
        assert run_sweep(cfg, workers=2) == run_sweep(cfg, workers=1)

    def test_fer_decreases_with_snr(self):
        cfg = tiny_cfg(puncturing="wqp", q=8, sweep=(0.0, 5.0), max_frames=2000,
                       batch_size=500)
        res = run_sweep(cfg)
        assert res.points[0].fer > res.points[1].fer

    def test_scl_with_crc_beats_sc(self):
        base = dict(n=6, k=32, crc_bits=8, construction="ga", puncturing="wqp",
                    q=10, channel="awgn", sweep=(2.5,), max_frames=10_000,
                    min_frame_errors=10_000, master_seed=1, batch_size=2000)
        sc = run_point(SimConfig(decoder="sc", **base), 2.5)
        scl = run_point(SimConfig(decoder="scl", list_size=8, **base), 2.5)
        assert scl.fer <= sc.fer

    def test_bec_channel_runs(self):
        cfg = tiny_cfg(channel="bec", construction="bec:0.3", sweep=(0.2, 0.35),
                       max_frames=300)
        res = run_sweep(cfg)
        assert res.points[0].fer <= res.points[1].fer


class TestEmit:
    def test_csv_shape(self):
        res = run_sweep(tiny_cfg(max_frames=100))
        text = result_csv(res)
        lines = text.strip().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 1 + len(res.points)

    def test_json_round_trip(self, tmp_path):
        res = run_sweep(tiny_cfg(max_frames=100))
        paths = emit(res, str(tmp_path / "out"))
        assert sorted(p.split(".")[-1] for p in paths) == ["csv", "json"]
        back = load_result(str(tmp_path / "out.json"))
        assert back == res
        # wall time is serialized even though it is excluded from equality
        assert back.points[0].wall_time_s == res.points[0].wall_time_s

    def test_unwritable_path(self):
        res = run_sweep(tiny_cfg(max_frames=100))
        with pytest.raises(OSError):
            emit(res, "/nonexistent_dir_zz/out")

    def test_unknown_format(self):
        res = run_sweep(tiny_cfg(max_frames=100))
        with pytest.raises(ValueError):
            emit(res, "x", formats=("yaml",))
