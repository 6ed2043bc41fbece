import importlib.util
import math

import numpy as np
import pytest

from qpid import ValidationError, __version__
from qpid.cli import main
from qpid.classical import DYADIC
from qpid.experiments import (
    SweepConfig,
    format_value,
    run_darwinism,
    run_motivating,
    run_pooling,
    run_scramble,
    run_tables,
    scramble_partitions,
)

HAVE_MPL = importlib.util.find_spec("matplotlib") is not None


def test_format_value_round_trips():
    for x in (0.1, 1 / 3, 2.0, 1e-17, -0.0):
        assert float(format_value(x)) == x
    assert format_value(np.float64(0.5)) == "0.5"
    assert format_value(True) == "1"
    assert format_value(np.int64(7)) == "7"


def test_csv_header_and_line_endings():
    _, table = run_tables("dyadic", seed=17)
    text = table.to_csv()
    lines = text.split("\n")
    assert lines[0] == f"# qpid v{__version__} seed=17 cmd=tables dist=dyadic"
    assert lines[1].startswith("dist,i_ta,i_tb,i_tab,b0,b1,b,")
    assert "\r" not in text
    assert text.endswith("\n")


def test_tables_named_and_custom(tmp_path):
    result, _ = run_tables("triadic")
    assert result.b == pytest.approx(0.0, abs=1e-12)
    path = tmp_path / "dyadic.csv"
    DYADIC.to_csv(path)
    result, table = run_tables(str(path))
    assert result.unique_a == pytest.approx(1.0, abs=1e-12)
    assert table.rows[0][0] == "dyadic.csv"
    assert abs(result.i_tab - (result.unique_a + result.unique_b + result.redundant + result.synergy)) <= 1e-12
    with pytest.raises(ValidationError):
        run_tables("nope")


def test_motivating_rows():
    results, table = run_motivating("plain")
    assert [r[0] for r in table.rows] == ["psi1", "psi2"]
    assert results["psi1"].bq == pytest.approx(0.0, abs=1e-9)
    assert results["psi2"].bq == pytest.approx(2.0, abs=1e-9)


def test_scramble_partitions_desk():
    parts = scramble_partitions((2, 2, 3, 3))
    d_a = [math.prod((2, 2, 3, 3)[i] for i in a) for a, _ in parts]
    assert d_a == [1, 2, 3, 4, 6, 9, 12, 18, 36]


def test_sweep_config_validation():
    with pytest.raises(ValidationError):
        SweepConfig(factors=())
    with pytest.raises(ValidationError):
        SweepConfig(draws=0)
    with pytest.raises(ValidationError):
        SweepConfig(factors=(2,), d_t=4)
    assert SweepConfig().d_ab == 36


def test_scramble_rows_and_identities():
    table = run_scramble(SweepConfig(draws=2, seed=3))
    assert len(table.rows) == 18
    x = table.column("x")
    assert list(x) == sorted(x)
    i_ta, i_tb = table.column("i_ta"), table.column("i_tb")
    ua, ub = table.column("unique_a"), table.column("unique_b")
    np.testing.assert_allclose(table.column("i_tab"), 4.0, atol=1e-9)
    assert np.all(i_ta <= 4 + 1e-9)
    assert np.abs((ua - ub) - (i_ta - i_tb)).max() <= 1e-12


def test_scramble_full_warns():
    with pytest.warns(RuntimeWarning):
        # D_T=1 keeps the three 441-dim points cheap
        run_scramble(SweepConfig(factors=(21, 21), d_t=1))


def test_darwinism_dense_limit():
    with pytest.raises(ValidationError):
        run_darwinism(n=13, engine="dense")
    with pytest.raises(ValidationError):
        run_darwinism(n=4, engine="tensor")
    table = run_darwinism(n=4, engine="dense")
    assert list(table.column("m_a")) == [1, 2, 3, 4]


def test_pooling_summary():
    table = run_pooling("qubit", "mixed", samples=20, seed=1)
    assert table.summary["fraction"] == pytest.approx(table.column("bq1_le_bq0").mean())
    assert "env_dim=8" in table.command
    with pytest.raises(ValidationError):
        run_pooling("ququart")
    with pytest.raises(ValidationError):
        run_pooling(samples=0)


def test_parallel_matches_serial():
    serial = run_pooling("qubit", "pure", samples=12, seed=5)
    parallel = run_pooling("qubit", "pure", samples=12, seed=5, workers=2)
    assert serial.to_csv() == parallel.to_csv()


# ---------------------------------------------------------------- CLI


def test_cli_stdout_and_file(tmp_path, capsys):
    assert main(["tables", "--dist", "dyadic"]) == 0
    out = capsys.readouterr()
    assert out.out.startswith("# qpid v")
    assert "unique_a=1.000000" in out.err
    path = tmp_path / "m.csv"
    assert main(["--seed", "9", "--out", str(path), "motivating"]) == 0
    assert path.read_bytes().startswith(b"# qpid v" + __version__.encode() + b" seed=9 cmd=motivating variant=star\n")


def test_cli_is_byte_deterministic(tmp_path):
    paths = [tmp_path / f"run{i}.csv" for i in range(2)]
    for p in paths:
        assert main(["--seed", "4", "--out", str(p), "pooling", "--samples", "15", "--kind", "pure"]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["tables", "--dist", str(tmp_path / "missing.csv")]) == 2
    assert main(["scramble", "--factors", "2", "--d-t", "4"]) == 2
    assert main(["darwinism", "--n", "20", "--engine", "dense"]) == 2
    # plain Z is indefinite for this state, which is a numerical failure
    assert main(["--variant", "plain", "darwinism", "--n", "2"]) == 3
    with pytest.raises(SystemExit) as exc:
        main(["--seed", "-1", "tables"])
    assert exc.value.code == 2
    capsys.readouterr()


@pytest.mark.skipif(not HAVE_MPL, reason="matplotlib not installed")
def test_cli_plot(tmp_path, capsys):
    svg = tmp_path / "d.svg"
    assert main(["--plot", str(svg), "darwinism", "--n", "5"]) == 0
    assert svg.read_text().lstrip().startswith("<?xml")
    capsys.readouterr()
