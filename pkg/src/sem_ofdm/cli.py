"""Command line entry point: ``sem-ofdm <command> [options]``.

Precedence is built-in defaults, then the ``--config`` TOML file, then flags.
Failures print a single ``error: kind=<Type> message=<text>`` line to stderr
and exit nonzero (2 for usage errors, 1 otherwise).
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import figures
from .harness import ExperimentSpec, Stopping, Sweep, run_sweep
from .mitigation import MitigationConfig, Mode
from .ofdm import Scheme
from .output import emit_plot_script, write_csv

log = logging.getLogger("sem_ofdm")

_SWEEPS = {
    "ber": Sweep.EBN0,
    "variance": Sweep.SEM_VARIANCE,
    "freq": Sweep.SEM_FREQUENCY,
    "rmse": Sweep.RMSE_VS_L,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_config(path) -> dict:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ValueError(f"invalid TOML in {path}: {exc}") from exc


def _normalize(data: dict) -> dict:
    data = dict(data)
    channel = data.pop("channel", None)
    if channel is not None:
        extra = set(channel) - {"eb_opt_n0_db"}
        if extra:
            raise ValueError(f"unknown keys in [channel]: {sorted(extra)}")
        if "eb_opt_n0_db" in channel:
            data["eb_opt_n0_db"] = channel["eb_opt_n0_db"]
    return data


def _default_spec(command: str) -> ExperimentSpec:
    sweep = _SWEEPS[command]
    if command == "rmse":
        return ExperimentSpec(
            mitigation=MitigationConfig(mode=Mode.BLIND), sweep=sweep, eb_opt_n0_db=20.0
        )
    return ExperimentSpec(sweep=sweep)


def _default_axis(spec: ExperimentSpec) -> tuple[float, ...]:
    if spec.sweep is Sweep.EBN0:
        return figures.EBN0_ACO if spec.ofdm.scheme is Scheme.ACO else figures.EBN0_DCO7
    if spec.sweep is Sweep.SEM_VARIANCE:
        return figures.VARIANCES
    if spec.sweep is Sweep.SEM_FREQUENCY:
        return figures.FREQUENCIES
    return figures.WINDOWS


def _scale(spec: ExperimentSpec, full: bool) -> ExperimentSpec:
    if not full:
        return spec
    return replace(spec, stopping=Stopping(10**7, 500, 10**8), estimates=1000)


def _overlay(spec: ExperimentSpec, config: dict, command: str | None) -> ExperimentSpec:
    if not config:
        return spec
    if command and "sweep" in config and Sweep(config["sweep"]) is not _SWEEPS[command]:
        raise ValueError(f"config sweep {config['sweep']!r} conflicts with command {command!r}")
    return ExperimentSpec.from_dict(config, base=spec)


def build_spec(command: str, config: dict | None = None, seed: int | None = None,
               full_scale: bool = False) -> ExperimentSpec:
    spec = _overlay(_scale(_default_spec(command), full_scale), _normalize(config or {}), command)
    if not spec.axis:
        spec = replace(spec, axis=_default_axis(spec))
    if seed is not None:
        spec = replace(spec, master_seed=seed)
    return spec


def _outputs(results, out: Path, plot: bool, timestamp: bool, title: str) -> list[Path]:
    paths = []
    if len(results) == 1:
        paths.append(write_csv(results[0], out, timestamp))
    else:
        for r in results:
            paths.append(write_csv(r, out.with_name(f"{out.stem}_{r.name}{out.suffix or '.csv'}"), timestamp))
    written = list(paths)
    if plot:
        written.append(emit_plot_script(results, paths, out.with_suffix(".gp"), title))
    return written


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML file mirroring ExperimentSpec")
    common.add_argument("--seed", type=int, help="master seed (overrides config)")
    common.add_argument("--out", type=Path, help="CSV output path")
    common.add_argument("--plot", action="store_true", help="also write a gnuplot script")
    common.add_argument("--full-scale", action="store_true", help="10x bits, 1000 estimates")
    common.add_argument("--workers", type=int, default=1, help="parallel sweep points")
    common.add_argument("--quiet", action="store_true", help="only print errors")
    common.add_argument("--no-timestamp", action="store_true", help="omit the time comment")

    parser = _Parser(prog="sem-ofdm", description="Optical OFDM under periodic SEM.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("ber", parents=[common], help="BER versus Eb(opt)/N0")
    sub.add_parser("variance", parents=[common], help="BER versus SEM variance")
    sub.add_parser("freq", parents=[common], help="BER versus SEM frequency")
    sub.add_parser("rmse", parents=[common], help="estimator RMSE versus window length")
    rep = sub.add_parser("reproduce", parents=[common], help="regenerate a named figure")
    rep.add_argument("figure_id", metavar="figure-id", help=", ".join(figures.FIGURE_IDS))
    return parser


def _run(args) -> list[Path]:
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    config = _normalize(load_config(args.config)) if args.config else {}
    timestamp = not args.no_timestamp

    if args.command == "reproduce":
        curves = figures.figure(args.figure_id, args.full_scale)
        out = args.out or Path("results") / f"{args.figure_id}.csv"
        results = []
        for name, spec in curves:
            spec = _overlay(spec, config, None)
            if args.seed is not None:
                spec = replace(spec, master_seed=args.seed)
            log.info("%s: curve %s (%d points)", args.figure_id, name, len(spec.axis))
            results.append(run_sweep(spec, args.workers, name))
        return _outputs(results, out, args.plot, timestamp, args.figure_id)

    spec = build_spec(args.command, config, args.seed, args.full_scale)
    out = args.out or Path("results") / f"{args.command}.csv"
    log.info("%s sweep over %d points", spec.sweep.value, len(spec.axis))
    result = run_sweep(spec, args.workers, args.command)
    return _outputs([result], out, args.plot, timestamp, "")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    quiet = "--quiet" in argv
    logging.basicConfig(
        level=logging.WARNING if quiet else logging.INFO,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        args = _build_parser().parse_args(argv)
        paths = _run(args)
    except UsageError as exc:
        print(f"error: kind=UsageError message={exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: kind=KeyError message={exc.args[0]}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: kind={type(exc).__name__} message={exc}", file=sys.stderr)
        return 1
    if not quiet:
        for p in paths:
            print(p)
    return 0


if __name__ == "__main__":
    sys.exit(main())
