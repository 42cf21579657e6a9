"""Command-line front end.

Subcommands:

* ``construct`` -- emit a reliability profile and code spec as JSON,
* ``puncture``  -- emit a puncture pattern and its diagnostics,
* ``propagate`` -- emit the source-to-destination map of an index set,
* ``simulate``  -- run a Monte-Carlo sweep, emit CSV/JSON,
* ``compare``   -- run two sweep configs and emit a joint CSV.

Exit code 0 on success, 1 with a message on stderr for configuration
errors. Config files are JSON with the same field names as the
``simulate`` flags; flags override file values.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import construct as cons
from . import degrade, puncture, sim
from ._version import __version__


def _int_list(text: str) -> list[int]:
    if not text.strip():
        return []
    return [int(tok) for tok in text.replace(",", " ").split()]


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.replace(",", " ").split()]


def _write_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _build_profile(args) -> cons.ReliabilityProfile:
    kind, _, val = args.construction.partition(":")
    if kind == cons.BEC_EXACT:
        if not val:
            raise ValueError("bec construction needs an erasure probability, e.g. bec:0.5")
        return cons.bec_bhattacharyya(args.n, float(val))
    if kind == cons.GA:
        if not val:
            raise ValueError("ga construction needs a design Es/N0 in dB here, e.g. ga:1.0")
        return cons.ga_reliability(args.n, float(val))
    if kind == cons.PW:
        return cons.pw_reliability(args.n, float(val) if val else cons.DEFAULT_PW_BETA)
    raise ValueError(f"unknown construction {args.construction!r}")


def _cmd_construct(args) -> int:
    profile = _build_profile(args)
    spec = cons.select_information_set(profile, args.k + args.crc, crc_bits=args.crc)
    payload = profile.to_json_dict()
    payload.update({"I": list(spec.info_set), "F": list(spec.frozen_set),
                    "k": spec.k, "crc_bits": spec.crc_bits})
    _write_json(payload, args.out)
    return 0


def _make_pattern(scheme: str, args, spec, profile):
    if scheme == "qup":
        return puncture.qup_pattern(args.n, args.q)
    if scheme == "wqp":
        if spec is None or profile is None:
            raise ValueError("wqp needs --construction and --k")
        return puncture.wqp_pattern(spec, profile, args.q)
    if scheme == "custom":
        if not args.custom_file:
            raise ValueError("custom scheme needs --custom-file")
        with open(args.custom_file) as fh:
            coded = json.load(fh)
        return puncture.custom_pattern(coded, args.n)
    raise ValueError(f"unknown scheme {scheme!r}")


def _cmd_puncture(args) -> int:
    profile = spec = None
    if args.construction:
        profile = _build_profile(args)
        if args.k:
            spec = cons.select_information_set(profile, args.k + args.crc, crc_bits=args.crc)

    schemes = args.compare.split(",") if args.compare else [args.scheme]
    entries = []
    reports = []
    for scheme in schemes:
        pattern = _make_pattern(scheme.strip(), args, spec, profile)
        entry = pattern.to_json_dict()
        if spec is not None and profile is not None and profile.error_prob is not None:
            report = puncture.analyze_pattern(pattern, spec, profile)
            entry["report"] = report.to_json_dict()
            reports.append(report)
        entries.append(entry)

    payload: dict = {"patterns": entries}
    if len(reports) == 2:
        delta = puncture.compare_patterns(reports[0], reports[1])
        payload["comparison"] = {
            "quality_loss_delta": delta.quality_loss_delta,
            "union_bound_delta": delta.union_bound_delta,
        }
    _write_json(payload, args.out)
    return 0


def _cmd_propagate(args) -> int:
    indices = _int_list(args.set)
    if args.domain == "coded":
        from .bitops import bit_reverse_set
        indices = sorted(bit_reverse_set(indices, args.n))
    pmap = degrade.propagate_puncture(indices, args.n)
    _write_json(pmap.to_json_dict(), args.out)
    return 0


_SIM_FIELDS = ("n", "k", "crc_bits", "construction", "puncturing", "q",
               "decoder", "list_size", "channel", "sweep", "max_frames",
               "min_frame_errors", "master_seed", "batch_size", "custom_coded")


def _config_from_args(args) -> sim.SimConfig:
    base: dict = {}
    if args.config:
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        unknown = set(file_cfg) - set(_SIM_FIELDS)
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        base.update(file_cfg)
    overrides = {
        "n": args.n, "k": args.k, "crc_bits": args.crc,
        "construction": args.construction, "puncturing": args.puncture,
        "q": args.q, "decoder": args.decoder, "list_size": args.list_size,
        "channel": args.channel,
        "sweep": _float_list(args.sweep) if args.sweep else None,
        "max_frames": args.max_frames, "min_frame_errors": args.min_errors,
        "master_seed": args.seed, "batch_size": args.batch_size,
    }
    if getattr(args, "custom_file", None):
        with open(args.custom_file) as fh:
            base["custom_coded"] = json.load(fh)
            base.setdefault("q", len(set(base["custom_coded"])))
    base.update({k: v for k, v in overrides.items() if v is not None})
    if base.get("custom_coded") is not None:
        base["custom_coded"] = tuple(base["custom_coded"])
    if "sweep" in base:
        base["sweep"] = tuple(base["sweep"])
    cfg = sim.SimConfig(**base)
    cfg.validate()
    return cfg


def _cmd_simulate(args) -> int:
    cfg = _config_from_args(args)
    result = sim.run_sweep(cfg, workers=args.workers)
    paths = sim.emit(result, args.out, tuple(args.format.split(",")))
    for point in result.points:
        print(f"{point.sweep_param:g}: frames={point.frames} "
              f"FER={point.fer:.4g} BER={point.ber:.4g}")
    print("wrote " + ", ".join(paths))
    return 0


def _cmd_compare(args) -> int:
    results = []
    for path in (args.config_a, args.config_b):
        with open(path) as fh:
            cfg = sim.SimConfig.from_json_dict(json.load(fh))
        cfg.validate()
        results.append(sim.run_sweep(cfg, workers=args.workers))
    a, b = results
    if [p.sweep_param for p in a.points] != [p.sweep_param for p in b.points]:
        raise ValueError("the two configs must share the same sweep for a joint report")
    lines = ["sweep_param,FER_a,BER_a,FER_b,BER_b"]
    for pa, pb in zip(a.points, b.points):
        lines.append(f"{pa.sweep_param},{pa.fer},{pa.ber},{pb.fer},{pb.ber}")
    with open(args.out + ".csv", "w") as fh:
        fh.write("\n".join(lines) + "\n")
    sim.emit(a, args.out + "_a", ("json",))
    sim.emit(b, args.out + "_b", ("json",))
    print(f"wrote {args.out}.csv")
    return 0


def _add_construction_flags(p, require_k: bool) -> None:
    p.add_argument("--construction", help="bec:EPS | ga:ESN0_DB | pw[:BETA]")
    p.add_argument("--k", type=int, required=require_k, help="information bits")
    p.add_argument("--crc", type=int, default=0, choices=(0, 8, 16))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polar-punct",
                                     description="polar-code rate-matching toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit reliability profile and code spec")
    p.add_argument("--n", type=int, required=True)
    _add_construction_flags(p, require_k=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("puncture", help="emit a puncture pattern and diagnostics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--scheme", default="qup", choices=("qup", "wqp", "custom"))
    p.add_argument("--custom-file", help="JSON list of coded-symbol positions")
    p.add_argument("--compare", help="comma pair of schemes, e.g. qup,wqp")
    _add_construction_flags(p, require_k=False)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_puncture)

    p = sub.add_parser("propagate", help="emit the propagation map of an index set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", required=True, help="comma-separated indices")
    p.add_argument("--domain", default="source", choices=("source", "coded"))
    p.add_argument("--out")
    p.set_defaults(func=_cmd_propagate)

    p = sub.add_parser("simulate", help="run a Monte-Carlo sweep")
    p.add_argument("--config", help="JSON config file; flags override")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--crc", type=int, choices=(0, 8, 16))
    p.add_argument("--construction")
    p.add_argument("--puncture", choices=("none", "qup", "wqp", "custom"))
    p.add_argument("--custom-file")
    p.add_argument("--q", type=int)
    p.add_argument("--decoder", choices=("sc", "scl"))
    p.add_argument("--list-size", type=int, dest="list_size")
    p.add_argument("--channel", choices=("awgn", "bec"))
    p.add_argument("--sweep", help="comma-separated channel parameters")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-frames", type=int, dest="max_frames")
    p.add_argument("--min-errors", type=int, dest="min_errors")
    p.add_argument("--batch-size", type=int, dest="batch_size")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="sim_out")
    p.add_argument("--format", default="json,csv")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("compare", help="run two configs and emit a joint CSV")
    p.add_argument("--config-a", required=True)
    p.add_argument("--config-b", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="compare_out")
    p.set_defaults(func=_cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
