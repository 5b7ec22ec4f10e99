"""Command-line interface.

Verbs: transmit, assess, compare, svc, synth, bench.  Errors print a single
``error[<kind>]: message`` line to stderr and exit with 2 (config), 3 (data)
or 4 (numeric failure).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bench import benchmark
from .config import RunConfig, load_run_config
from .errors import ComfortError, ConfigError
from .metrics import full_assessment
from .report import compare, emit_report
from .svc import run_svc
from .traceio import DEMO_COMPONENTS, atomic_write_text, load_trace, save_trace, synth_trace


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config with overrides")
    common.add_argument(
        "--model",
        metavar="ID",
        default="NHM",
        help="bundle configuration: EXP, AHM, EHM or NHM (default NHM)",
    )
    common.add_argument("--out", metavar="DIR", default=None, help="output directory")
    common.add_argument("-v", "--verbose", action="store_true", help="info-level logging")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="motioncomfort",
        description="Seat-to-head motion transmission and comfort assessment",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("transmit", parents=[common], help="predict head motion from a seat trace")
    p.add_argument("--trace", help="seat trace CSV (or 'trace' in --config)")

    p = sub.add_parser("assess", parents=[common], help="full comfort assessment of a seat trace")
    p.add_argument("--trace", help="seat trace CSV (or 'trace' in --config)")
    p.add_argument("--no-svc", action="store_true", help="skip the sickness-incidence model")

    p = sub.add_parser("compare", parents=[common], help="assess one trace under several models")
    p.add_argument("--trace", help="seat trace CSV (or 'trace' in --config)")
    p.add_argument(
        "--models",
        default="EXP,AHM,EHM,NHM",
        help="comma-separated model ids (default EXP,AHM,EHM,NHM)",
    )

    p = sub.add_parser("svc", parents=[common], help="sickness incidence of a head trace")
    p.add_argument("--trace", help="head trace CSV (or 'trace' in --config)")

    p = sub.add_parser("synth", parents=[common], help="write a synthetic trace")
    p.add_argument("--spec", help="JSON synthesis spec (list of components)")
    p.add_argument("--duration", type=float, default=60.0, help="seconds (default 60)")
    p.add_argument("--rate", type=float, default=100.0, help="sample rate Hz (default 100)")

    p = sub.add_parser("bench", parents=[common], help="time the full pipeline")
    p.add_argument("--duration", type=float, default=19807.0, help="seconds (default 19807)")
    p.add_argument("--rate", type=float, default=100.0, help="sample rate Hz (default 100)")
    p.add_argument("--no-svc", action="store_true", help="skip the sickness-incidence model")
    return parser


def _load_config(args) -> RunConfig:
    if args.config:
        return load_run_config(args.config)
    return RunConfig()


def _trace_path(args, cfg: RunConfig):
    path = args.trace or cfg.trace_path
    if path is None:
        raise ConfigError("no input trace: pass --trace or set 'trace' in the config")
    return path


def _run(args) -> int:
    cfg = _load_config(args)
    out_dir = Path(args.out) if args.out else (cfg.out_dir or Path("."))

    if args.verb == "transmit":
        from .transmission import transmit

        seat = load_trace(_trace_path(args, cfg))
        bundle = cfg.resolve_bundle(args.model)
        head, _ = transmit(seat, bundle)
        out = out_dir / "head.csv"
        save_trace(head, out)
        print(f"wrote {out}")
        return 0

    if args.verb == "assess":
        seat = load_trace(_trace_path(args, cfg))
        bundle = cfg.resolve_bundle(args.model)
        rc, ms = cfg.regimes()
        report = full_assessment(
            seat,
            bundle,
            rc=rc,
            ms=ms,
            svc_params=cfg.svc_params(),
            registry=cfg.registry(),
            include_svc=not args.no_svc,
        )
        written = emit_report(report, out_dir)
        print(f"rc_total={report.rc.total:.6g} ms_total={report.ms.total:.6g}", end="")
        if report.msi is not None:
            print(f" msi_final={report.msi.final:.6g}", end="")
        print()
        for path in written.values():
            print(f"wrote {path}")
        return 0

    if args.verb == "compare":
        if cfg.bundle_manifest is not None:
            raise ConfigError("compare works on named model configurations, not a fixed manifest")
        seat = load_trace(_trace_path(args, cfg))
        model_ids = [m.strip() for m in args.models.split(",") if m.strip()]
        rc, ms = cfg.regimes()
        table = compare(
            seat,
            model_ids,
            rc=rc,
            ms=ms,
            svc_params=cfg.svc_params(),
            registry=cfg.registry(),
        )
        out = out_dir / "comparison.csv"
        atomic_write_text(out, table.to_csv())
        print(table.to_text())
        print(f"wrote {out}")
        return 0

    if args.verb == "svc":
        head = load_trace(_trace_path(args, cfg))
        series = run_svc(head, cfg.svc_params())
        lines = ["time_s,msi_percent"]
        lines.extend(
            f"{t:.17g},{m:.17g}" for t, m in zip(series.time_s, series.msi_percent)
        )
        out = out_dir / "msi.csv"
        atomic_write_text(out, "\n".join(lines) + "\n")
        print(f"msi_final={series.final:.6g}")
        print(f"wrote {out}")
        return 0

    if args.verb == "synth":
        if args.spec:
            try:
                components = json.loads(Path(args.spec).read_text())
            except OSError as exc:
                raise ConfigError(f"cannot read synth spec {args.spec}: {exc}") from exc
            except json.JSONDecodeError as exc:
                raise ConfigError(f"malformed synth spec {args.spec}: {exc}") from exc
            if not isinstance(components, list):
                raise ConfigError("synth spec must be a JSON list of components")
        else:
            components = DEMO_COMPONENTS
        trace = synth_trace(components, args.duration, args.rate)
        out = out_dir / "trace.csv"
        save_trace(trace, out)
        print(f"wrote {out}")
        return 0

    if args.verb == "bench":
        bundle = cfg.resolve_bundle(args.model)
        result = benchmark(args.duration, args.rate, bundle, include_svc=not args.no_svc)
        out = out_dir / "bench.json"
        atomic_write_text(out, json.dumps(result.as_dict(), indent=2, sort_keys=True) + "\n")
        print(result.summary())
        print(f"wrote {out}")
        return 0

    raise ConfigError(f"unknown verb {args.verb!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _run(args)
    except ComfortError as exc:
        print(f"error[{exc.kind}]: {exc}", file=sys.stderr)
        return exc.exit_code


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
