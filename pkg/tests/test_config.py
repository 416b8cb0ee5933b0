import json
import pytest
import numpy as np
import pandas as pd
from multiplicative_ising.errors import ConfigError
from multiplicative_ising.lattice.semigroup import validate_generators
from multiplicative_ising.postprocessor.intervals import binomial_band, clopper_pearson_interval
from multiplicative_ising.postprocessor.report import build_report
from multiplicative_ising.postprocessor.writers import render, write_output
from multiplicative_ising.utils.load_config import (
    load_processor_config,
    load_spec_catalogue,
    load_spec_config,
)
from multiplicative_ising.utils.configs.spec import SpecConfig
from multiplicative_ising.utils.path_handler import Paths


def test_spec_catalogue():
    catalogue = load_spec_catalogue()
    assert {"doubling", "two_three", "fig1", "fig2", "diag23", "product6"} <= set(catalogue)
    fig2 = load_spec_config("fig2").to_spec()
    assert fig2 == validate_generators([(2, 3), (3, 5), (5, 7), (7, 11), (11, 2)], 2)


def test_unknown_spec():
    with pytest.raises(ConfigError, match="Available specs"):
        load_spec_config("fig3")


def test_presets():
    fig1 = load_processor_config("fig1")
    assert fig1.name == "fig1"
    assert fig1.command == "curve"
    assert fig1.spec == "fig1"
    assert load_processor_config("fig2").spec == "fig2"
    with pytest.raises(ConfigError):
        load_processor_config("fig9")


def test_output_path(tmp_path):
    paths = Paths(tmp_path)
    path = paths.output_path("curve", "fig1")
    assert path == tmp_path / "outs" / "curve" / "fig1.csv"
    assert not path.parent.exists()
    paths.output_path("curve", "fig1", extension="json", mkdir=True)
    assert path.parent.is_dir()
    with pytest.raises(ValueError):
        Paths.safe_return(tmp_path, "link", mkdir=True)


@pytest.fixture
def output():
    data = pd.DataFrame({"beta": [0.0, 0.5], "F": [0.0, 0.12]})
    return {"data": data, "metadata": {"command": "python run.py curve --r 0.3", "r": 0.3}}


def test_render_csv(output):
    lines = render(output).splitlines()
    assert lines[0] == "# command=python run.py curve --r 0.3"
    assert lines[1] == "# r=0.3"
    assert lines[2] == "beta,F"
    assert len(lines) == 5


def test_render_json(output):
    payload = json.loads(render(output, "json"))
    assert payload["metadata"]["r"] == 0.3
    assert payload["data"][1] == {"beta": 0.5, "F": 0.12}


def test_render_rejects_format(output):
    with pytest.raises(ValueError, match="Available formats"):
        render(output, "parquet")


def test_write_output(tmp_path, output):
    path = write_output(output, tmp_path / "outs" / "curve.csv")
    assert path.read_text() == render(output)
    assert [p.name for p in path.parent.iterdir()] == ["curve.csv"]
    frame = pd.read_csv(path, comment="#")
    assert frame["F"].tolist() == [0.0, 0.12]


def test_build_report():
    report = build_report(
        {
            "good": ([1e-14, 3e-13], 1e-12, 0),
            "bad": ([1e-3], 1e-12, 0),
            "empty": ([], 1e-12, 4),
        }
    )
    assert list(report.columns) == ["check", "cases", "skipped", "max_error", "tolerance", "passed"]
    assert report["passed"].tolist() == [True, False, False]
    assert report["cases"].tolist() == [2, 1, 0]
    assert report["max_error"].iloc[0] == 3e-13


def test_clopper_pearson():
    lower, upper = clopper_pearson_interval(0, 10)
    assert lower == 0.0 and 0 < upper < 1
    lower, upper = clopper_pearson_interval(10, 10)
    assert upper == 1.0 and 0 < lower < 1
    lower, upper = clopper_pearson_interval(np.array([3, 50]), np.array([10, 100]), coverage=0.95)
    assert np.all(lower < np.array([0.3, 0.5]))
    assert np.all(upper > np.array([0.3, 0.5]))
    with pytest.raises(ValueError):
        clopper_pearson_interval(11, 10)


def test_binomial_band():
    lower, upper = binomial_band(0.5, 100, nsigma=2)
    assert lower == pytest.approx(0.4)
    assert upper == pytest.approx(0.6)


def test_config_names():
    with pytest.raises(ConfigError):
        SpecConfig(name="", d=1, generators=[[2]])
    config = SpecConfig(name="halving", d=1, generators=[[2]])
    assert repr(config) == "SpecConfig(name='halving', d=1, generators=[[2]], direction=1)"
