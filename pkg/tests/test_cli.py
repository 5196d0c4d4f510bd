import pytest

from sem_ofdm import figures
from sem_ofdm.cli import build_spec, main
from sem_ofdm.harness import Sweep, derive_seed
from sem_ofdm.mitigation import Mode
from sem_ofdm.output import HEADER, csv_body, read_csv

QUICK_TOML = """
master_seed = 3
axis = [6.0, 10.0]
[ofdm]
n = 64
[stopping]
min_bits = 10000
min_errors = 5
max_bits = 50000
"""


@pytest.fixture
def config(tmp_path):
    path = tmp_path / "quick.toml"
    path.write_text(QUICK_TOML)
    return path


def test_ber_command_writes_csv_and_plot(tmp_path, config, capsys):
    out = tmp_path / "ber.csv"
    assert main(["ber", "--config", str(config), "--out", str(out), "--plot", "--quiet"]) == 0
    rows, meta = read_csv(out)
    assert [r.axis for r in rows] == [6.0, 10.0]
    assert rows[0].seed == derive_seed(3, 0)
    assert meta["spec"]["ofdm"]["n"] == 64
    assert out.with_suffix(".gp").exists()
    assert capsys.readouterr().out == ""


def test_seed_flag_overrides_config(tmp_path, config):
    out = tmp_path / "b.csv"
    assert main(["ber", "--config", str(config), "--seed", "8", "--out", str(out), "--quiet"]) == 0
    assert read_csv(out)[0][0].seed == derive_seed(8, 0)


def test_rerun_is_byte_identical(tmp_path, config):
    outs = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for out, workers in zip(outs, ("1", "2")):
        main(["ber", "--config", str(config), "--out", str(out), "--workers", workers,
              "--quiet", "--no-timestamp"])
    assert outs[0].read_text() == outs[1].read_text()
    assert csv_body(outs[0]).startswith(HEADER)


def test_error_line_and_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("[sem]\nvariance = -1\n")
    assert main(["ber", "--config", str(bad), "--out", str(tmp_path / "x.csv")]) == 1
    err = capsys.readouterr().err.strip().splitlines()[-1]
    assert err.startswith("error: kind=ValueError message=")

    assert main(["ber", "--config", str(tmp_path / "none.toml")]) == 1
    assert "none.toml" in capsys.readouterr().err

    assert main(["ber", "--workers", "0"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["reproduce", "fig99"]) == 2
    assert "error: kind=KeyError" in capsys.readouterr().err


def test_invalid_toml(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("axis = [1,\n")
    assert main(["ber", "--config", str(bad)]) == 1
    assert "invalid TOML" in capsys.readouterr().err


def test_build_spec_defaults_and_precedence():
    assert build_spec("rmse").mitigation.mode is Mode.BLIND
    assert build_spec("freq").axis == figures.FREQUENCIES
    assert build_spec("variance").sweep is Sweep.SEM_VARIANCE
    dco = build_spec("ber", {"ofdm": {"scheme": "DCO", "bias_db": 7.0}})
    assert dco.axis == tuple(float(v) for v in figures.EBN0_DCO7)
    assert build_spec("ber", {"channel": {"eb_opt_n0_db": 13.0}}).eb_opt_n0_db == 13.0
    full = build_spec("rmse", full_scale=True)
    assert full.estimates == 1000 and full.stopping.min_bits == 10**7
    assert build_spec("rmse", {"estimates": 50}, full_scale=True).estimates == 50
    with pytest.raises(ValueError, match="conflicts"):
        build_spec("ber", {"sweep": "rmse_vs_l"})


def test_reproduce_writes_one_csv_per_curve(tmp_path, config):
    out = tmp_path / "fig2.csv"
    assert main(["reproduce", "fig2", "--config", str(config), "--out", str(out),
                 "--plot", "--quiet"]) == 0
    names = [name for name, _ in figures.figure("fig2")]
    for name in names:
        assert (tmp_path / f"fig2_{name}.csv").exists()
    gp = (tmp_path / "fig2.gp").read_text()
    assert all(f"title '{n}'" in gp for n in names)


@pytest.mark.parametrize("fig_id", figures.FIGURE_IDS)
def test_every_figure_builds(fig_id):
    curves = figures.figure(fig_id)
    assert curves and len({n for n, _ in curves}) == len(curves)
    for _, spec in curves:
        assert spec.axis
        for v in (spec.axis[0], spec.axis[-1]):
            spec.at(v)
    full = figures.figure(fig_id, full_scale=True)
    assert full[0][1].stopping.min_bits > curves[0][1].stopping.min_bits


def test_figure_ids_complete():
    expected = {"fig2", "fig3a", "fig3b", "fig4a", "fig4b", "fig5", "fig7a", "fig7b", "fig8a",
                "fig8b", "fig11a", "fig11b", "fig12"}
    expected |= {f"fig{n}{s}" for n in (9, 10) for s in "abcd"}
    assert set(figures.FIGURE_IDS) == expected
