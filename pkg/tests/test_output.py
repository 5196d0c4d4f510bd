import math
import os

import pytest

from sem_ofdm.harness import ExperimentSpec, Row, SweepResult
from sem_ofdm.output import HEADER, csv_body, emit_plot_script, format_csv, read_csv, write_csv


def result(rows=None, name="demo"):
    rows = rows if rows is not None else (
        Row(4.0, 120, 1_000_000, 1.2e-4, seed=11),
        Row(8.0, 3, 10_000_000, 3e-7, seed=12, truncated=True),
    )
    return SweepResult(tuple(rows), ExperimentSpec(axis=tuple(r.axis for r in rows)), name)


def test_header_and_comment_block(tmp_path):
    path = write_csv(result(), tmp_path / "r.csv")
    lines = path.read_text().splitlines()
    data = [ln for ln in lines if not ln.startswith("#")]
    assert data[0] == HEADER
    assert any(ln.startswith("# spec: {") for ln in lines)
    assert "# truncated: 8.0" in lines
    assert lines.index(HEADER) > max(i for i, ln in enumerate(lines) if ln.startswith("#"))


def test_round_trip(tmp_path):
    res = result()
    rows, meta = read_csv(write_csv(res, tmp_path / "r.csv"))
    for got, want in zip(rows, res.rows):
        assert (got.axis, got.errors, got.bits, got.ber, got.seed, got.truncated) == (
            want.axis, want.errors, want.bits, want.ber, want.seed, want.truncated)
        assert math.isnan(got.rmse_amp) and math.isnan(got.rmse_phase)
    assert ExperimentSpec.from_dict(meta["spec"]) == res.spec


def test_rmse_values_round_trip_exactly(tmp_path):
    rows = (Row(100.0, rmse_amp=0.1733123456789, rmse_phase=0.017, seed=1),)
    got, _ = read_csv(write_csv(result(rows), tmp_path / "r.csv"))
    assert got[0].rmse_amp == rows[0].rmse_amp


def test_timestamp_suppressible():
    assert "# generated:" in format_csv(result())
    assert "# generated:" not in format_csv(result(), timestamp=False)
    assert format_csv(result(), timestamp=False) == format_csv(result(), timestamp=False)


def test_empty_result_is_header_only(tmp_path):
    path = write_csv(result(rows=()), tmp_path / "e.csv")
    assert csv_body(path) == HEADER + "\n"
    assert read_csv(path)[0] == []


def test_write_error_names_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError, match="file"):
        write_csv(result(), blocker / "sub" / "r.csv")


def test_read_rejects_foreign_csv(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError, match="header"):
        read_csv(p)
    with pytest.raises(OSError, match="missing.csv"):
        read_csv(tmp_path / "missing.csv")


def test_plot_script(tmp_path):
    a, b = result(name="sine"), result(name="square")
    paths = [write_csv(a, tmp_path / "a.csv"), write_csv(b, tmp_path / "b.csv")]
    gp = emit_plot_script([a, b], paths, tmp_path / "fig.gp", title="fig").read_text()
    assert "'a.csv' using 1:4" in gp and "title 'square'" in gp
    assert "set logscale y" in gp
    assert os.path.isabs(gp) is False
