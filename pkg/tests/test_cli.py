import io
import json
import math
import pytest
import pandas as pd
from run import build_parser, main


def run(argv) -> int:
    return main(build_parser().parse_args(argv))


def test_gamma_table(capsys):
    assert run(["semigroup", "--gens", "2,3,5,7,11", "--gamma"]) == 0
    out = capsys.readouterr().out
    assert "gamma,77/16" in out
    assert out.startswith("# spec=")


def test_two_dimensional_constants(capsys):
    assert run(["semigroup", "--spec", "fig2", "--gamma"]) == 0
    assert "directional_constant_j1,2261/660" in capsys.readouterr().out


def test_json_format(capsys):
    assert run(["semigroup", "--gens", "2,3", "--bound", "20", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert [row["element"] for row in payload["data"]] == [1, 2, 3, 4, 6, 8, 9, 12, 16, 18]
    assert payload["metadata"]["command"].startswith("python run.py semigroup --gens 2,3")


def test_fig1_preset(tmp_path, capsys):
    out = tmp_path / "fig1.csv"
    argv = ["curve", "--fig1", "--r", "0.5", "--beta-grid", "-3:3:13", "--out", str(out)]
    assert run(argv) == 0
    assert "Processing curve" in capsys.readouterr().out
    frame = pd.read_csv(out, comment="#")
    assert list(frame.columns) == ["r", "beta", "F", "tail_bound", "truncation_K"]
    assert len(frame) == 13
    for beta, F in zip(frame["beta"], frame["F"]):
        assert F == pytest.approx(math.log(math.cosh(beta)), abs=1e-12)
    command = [line for line in out.read_text().splitlines() if line.startswith("# command=")]
    assert "--truncation 100" in command[0]


def test_curve_metadata(tmp_path):
    out = tmp_path / "curve.csv"
    argv = ["curve", "--gens", "2,3", "--r", "0.3,0.7", "--beta-grid", "-1:1:5", "--out", str(out)]
    assert run(argv) == 0
    header = dict(
        line[2:].split("=", 1) for line in out.read_text().splitlines() if line.startswith("# ")
    )
    assert json.loads(header["r"]) == [0.3, 0.7]
    assert json.loads(header["generators"]) == [[2], [3]]
    frame = pd.read_csv(out, comment="#")
    assert int(header["truncation_K"]) == frame["truncation_K"].max()
    assert float(header["tail_bound"]) == pytest.approx(frame["tail_bound"].max())
    assert float(header["tail_bound"]) <= 1e-12


def test_preset_command_mismatch(capsys):
    assert run(["rate", "--fig1", "--x-grid", "-0.5:0.5:3"]) == 2
    assert "runs 'curve'" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["decompose", "--gens", "2"],
        ["semigroup", "--gens", "2,4"],
        ["semigroup", "--spec", "fig3"],
        ["curve", "--gens", "2", "--beta", "1"],
        ["curve", "--gens", "2", "--r", "0.3", "--beta", "1", "--executor", "dask"],
        ["curve", "--gens", "2", "--r", "0.3", "--beta", "1", "--tol", "0"],
        ["rate", "--gens", "2", "--r", "0.3"],
        ["free-energy", "--gens", "2", "--r", "1.5", "--beta", "1"],
        ["gibbs", "--gens", "2", "--beta", "1", "--sites", "1,2", "--values", "1"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == 2
    assert "error:" in capsys.readouterr().err


def test_sample_is_reproducible(capsys):
    argv = ["sample", "--spec", "two_three", "--box", "20", "--beta", "0.5"]
    argv += ["--count", "50", "--seed", "7"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first
    assert len(pd.read_csv(io.StringIO(first), comment="#")) == 50


def test_gibbs_command(capsys):
    argv = ["gibbs", "--gens", "2", "--beta", "0,1", "--sites", "1,2", "--values", "1,1"]
    argv += ["--box", "2"]
    assert run(argv) == 0
    out = capsys.readouterr().out
    frame = pd.read_csv(io.StringIO(out), comment="#")
    assert frame["limit"].iloc[0] == pytest.approx(0.25)
    assert frame["finite"].iloc[1] == pytest.approx(frame["limit"].iloc[1])


@pytest.mark.slow
def test_verify(capsys):
    assert run(["verify", "--max-sites", "20"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out), comment="#")
    assert frame["passed"].all()
