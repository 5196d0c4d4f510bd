"""CSV and gnuplot output for sweep results."""

from __future__ import annotations

import datetime as _dt
import json
import math
from pathlib import Path

from .harness import RNG_FAMILY, Row, SweepResult, Sweep

HEADER = "axis,errors,bits,ber,rmse_amp,rmse_phase,seed"
COLUMNS = HEADER.split(",")

_AXIS_LABELS = {
    Sweep.EBN0: "E_b(opt)/N_0 (dB)",
    Sweep.SEM_VARIANCE: "SEM variance",
    Sweep.SEM_FREQUENCY: "SEM normalized frequency l",
    Sweep.RMSE_VS_L: "Number of OFDM symbols L",
}


def _fmt(v) -> str:
    if isinstance(v, float) and math.isnan(v):
        return "nan"
    return repr(v)


def row_values(row: Row) -> tuple:
    return (row.axis, row.errors, row.bits, row.ber, row.rmse_amp, row.rmse_phase, row.seed)


def format_csv(result: SweepResult, timestamp: bool = True) -> str:
    lines = [f"# sem_ofdm sweep: {result.name or result.spec.sweep.value}"]
    if timestamp:
        lines.append(f"# generated: {_dt.datetime.now(_dt.timezone.utc).isoformat()}")
    lines.append(f"# rng: {RNG_FAMILY}, point seed = blake2b64('<master_seed>:<index>')")
    lines.append("# spec: " + json.dumps(result.spec.to_dict(), sort_keys=True))
    truncated = [r.axis for r in result.rows if r.truncated]
    if truncated:
        lines.append("# truncated: " + " ".join(_fmt(a) for a in truncated))
    lines.append(HEADER)
    lines.extend(",".join(_fmt(v) for v in row_values(r)) for r in result.rows)
    return "\n".join(lines) + "\n"


def write_csv(result: SweepResult, path, timestamp: bool = True) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(format_csv(result, timestamp))
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc
    return path


def read_csv(path) -> tuple[list[Row], dict]:
    """Parse a CSV written by :func:`write_csv`; returns ``(rows, meta)``."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read CSV {path}: {exc}") from exc
    meta: dict = {}
    rows: list[Row] = []
    truncated: set[float] = set()
    seen_header = False
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            key, value = key.strip(), value.strip()
            if key == "spec":
                meta["spec"] = json.loads(value)
            elif key == "truncated":
                truncated = {float(v) for v in value.split()}
            else:
                meta[key] = value
            continue
        if not seen_header:
            if line.strip() != HEADER:
                raise ValueError(f"{path}: unexpected header {line!r}")
            seen_header = True
            continue
        a, e, b, ber, ra, rp, s = line.split(",")
        axis = float(a)
        rows.append(
            Row(axis, int(e), int(b), float(ber), float(ra), float(rp), int(s),
                truncated=axis in truncated)
        )
    if not seen_header:
        raise ValueError(f"{path}: missing header")
    return rows, meta


def csv_body(path) -> str:
    """Non-comment lines only; what the determinism contract covers."""
    return "".join(
        line for line in Path(path).read_text().splitlines(keepends=True) if not line.startswith("#")
    )


def emit_plot_script(results, csv_paths, path, title: str = "") -> Path:
    """gnuplot script plotting every result against its CSV file."""
    results = list(results)
    csv_paths = [Path(p) for p in csv_paths]
    path = Path(path)
    sweep = results[0].spec.sweep
    rmse = sweep is Sweep.RMSE_VS_L
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set logscale y",
        f"set xlabel '{_AXIS_LABELS[sweep]}'",
        f"set ylabel '{'Amplitude RMS error' if rmse else 'BER'}'",
    ]
    if rmse:
        lines.append("set logscale x")
    if title:
        lines.append(f"set title '{title}'")
    column = 5 if rmse else 4
    plots = []
    for result, csv in zip(results, csv_paths):
        try:
            rel = csv.resolve().relative_to(path.resolve().parent)
        except ValueError:
            rel = csv.resolve()
        name = result.name or csv.stem
        plots.append(f"'{rel}' using 1:{column} with linespoints title '{name}'")
    lines.append("plot " + ", \\\n     ".join(plots))
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write plot script to {path}: {exc}") from exc
    return path
