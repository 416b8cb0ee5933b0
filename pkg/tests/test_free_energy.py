import math
import pytest
import numpy as np
from fractions import Fraction
from multiplicative_ising.errors import BiasOutOfRange, ToleranceTooTight, UnboundedChain
from multiplicative_ising.thermodynamics.free_energy import (
    build_series,
    finite_mgf,
    free_energy_1d,
    free_energy_curve,
    free_energy_derivative,
    free_energy_directional,
    free_energy_general,
    series_directional,
)
from multiplicative_ising.thermodynamics.reference import (
    doubling_closed_form,
    product_closed_form,
)

SPECS = ["doubling", "two_three", "fig1", "fig2", "diag23", "product6"]


@pytest.mark.parametrize("name", SPECS)
@pytest.mark.parametrize("r", [0.1, 0.37, 0.5, 0.9])
def test_vanishes_at_zero(name, r, request):
    result = build_series(r, request.getfixturevalue(name)).value(0.0)
    assert result.value == 0.0
    assert result.converged


@pytest.mark.parametrize("name", SPECS)
@pytest.mark.parametrize("beta", [-3.0, -0.7, 0.2, 1.0, 3.0])
def test_half_bias_is_log_cosh(name, beta, request):
    value = build_series(0.5, request.getfixturevalue(name)).value(beta).value
    assert value == pytest.approx(math.log(math.cosh(beta)), abs=1e-12)


def test_log_cosh_one(fig1):
    assert free_energy_1d(0.5, 1.0, fig1).value == pytest.approx(0.433780830483027, abs=1e-12)


@pytest.mark.parametrize("r", [0.15, 0.3, 0.8])
@pytest.mark.parametrize("beta", [-2.0, -0.5, 0.4, 1.7])
def test_doubling_closed_form(doubling, r, beta):
    value = free_energy_1d(r, beta, doubling, truncation=100).value
    assert value == pytest.approx(doubling_closed_form(r, beta, K=100), abs=1e-12)


@pytest.mark.parametrize("r, beta", [(0.3, -1.2), (0.7, 0.9), (0.2, 2.5)])
def test_product_generator_closed_form(product6, r, beta):
    result = free_energy_directional(r, beta, product6, 1, truncation=100)
    assert result.value == pytest.approx(product_closed_form(r, beta, 6, K=100), abs=1e-12)


def test_one_dimensional_spec_is_series_1d(two_three):
    assert build_series(0.3, two_three).constant == Fraction(1, 3)
    assert build_series(0.3, [2, 3]).value(0.8).value == free_energy_1d(0.3, 0.8, two_three).value


def test_directional_constant(fig2):
    series = series_directional(fig2, 0.3, 1, normalization="directional")
    assert series.constant == Fraction(2261, 660)
    assert series.slope_limit == pytest.approx(float(Fraction(2261, 660) * Fraction(77, 16)))
    site = series_directional(fig2, 0.3, 1)
    assert site.slope_limit == pytest.approx(1.0)


def test_normalizations_scale(fig2):
    site = series_directional(fig2, 0.3, 1, normalization="site").value(1.1).value
    directional = free_energy_directional(
        0.3, 1.1, fig2, 1, normalization="directional"
    ).value
    scale = float(Fraction(2261, 660) * Fraction(77, 16))
    assert directional == pytest.approx(site * scale, rel=1e-12)


def test_certified_tail(fig1):
    result = free_energy_1d(0.3, 1.5, fig1, tol=1e-12)
    assert result.converged
    assert result.tail_bound < 1e-12
    assert result.truncation_K > 0
    tighter = free_energy_1d(0.3, 1.5, fig1, truncation=result.truncation_K + 200)
    assert tighter.value == pytest.approx(result.value, abs=1e-12)


def test_strict_tolerance(fig1):
    with pytest.raises(ToleranceTooTight):
        free_energy_1d(0.3, 1.5, fig1, tol=0.0, strict=True)


def test_fixed_truncation_reports_tail(fig1):
    result = free_energy_1d(0.3, -2.0, fig1, truncation=5)
    assert result.truncation_K == 5
    assert result.tail_bound > 0


def test_terms_decay(two_three):
    terms = build_series(0.3, two_three).terms(1.0, 30)
    assert len(terms) == 30
    assert abs(terms[-1]) < abs(terms[0])


@pytest.mark.parametrize("beta", [-2.0, -0.3, 0.6, 2.5])
def test_derivative(two_three, beta):
    assert free_energy_derivative(0.5, beta, two_three) == pytest.approx(math.tanh(beta), abs=1e-12)
    series = build_series(0.35, two_three)
    step = 1e-5
    numeric = (series.value(beta + step).value - series.value(beta - step).value) / (2 * step)
    assert series.derivative(beta) == pytest.approx(numeric, abs=1e-6)


@pytest.mark.parametrize("name", ["fig1", "fig2"])
def test_curve_shape(name, request):
    series = build_series(0.3, request.getfixturevalue(name))
    betas = np.linspace(-3, 3, 61)
    frame = free_energy_curve(series, betas, truncation=100)
    assert list(frame.columns) == ["beta", "F", "tail_bound", "truncation_K"]
    F = frame["F"].to_numpy()
    assert np.all(F[:-2] - 2 * F[1:-1] + F[2:] >= -1e-8)
    slopes = np.diff(F) / np.diff(betas)
    assert np.all(np.abs(slopes) < series.slope_limit)
    assert F[30] == pytest.approx(0.0, abs=1e-12)


def test_curve_rejects_unknown_executor(doubling):
    with pytest.raises(ValueError, match="Available options"):
        free_energy_curve(build_series(0.3, doubling), [0.1], executor="dask")


def test_general_matches_series_in_1d(doubling, two_three):
    general = free_energy_general(0.3, 0.8, doubling, K_cap=64)
    assert general.tail_bound == math.inf
    assert general.normalization == "volume"
    assert general.value == pytest.approx(free_energy_1d(0.3, 0.8, doubling).value, abs=1e-10)
    general = free_energy_general(0.3, 0.8, two_three, K_cap=400)
    assert general.value == pytest.approx(free_energy_1d(0.3, 0.8, two_three).value, abs=1e-7)


def test_general_vanishes_at_zero(diag23):
    assert free_energy_general(0.4, 0.0, diag23, K_cap=12).value == 0.0


def test_general_against_finite_volume(diag23):
    general = free_energy_general(0.4, 0.5, diag23, K_cap=24).value
    finite = finite_mgf(0.4, 0.5, diag23, (2**7 * 3**4, 3**7 * 2**4), cap="rank")
    assert finite == pytest.approx(general, abs=0.02)


def test_finite_mgf_examples(doubling, fig2):
    assert finite_mgf(0.5, 1.0, doubling, (2,)) == pytest.approx(math.log(math.cosh(1.0)))
    assert finite_mgf(0.3, 0.0, fig2, (30, 20)) == 0.0
    with pytest.raises(ValueError):
        finite_mgf(0.3, 0.5, doubling, (8,), normalize="root")


def test_finite_mgf_converges(doubling):
    finite = finite_mgf(0.3, 0.7, doubling, (2**16,))
    assert finite == pytest.approx(free_energy_1d(0.3, 0.7, doubling).value, abs=5e-3)


def test_finite_mgf_site_normalization(fig2):
    box = (2**20, 2**10)
    finite = finite_mgf(0.3, 0.9, fig2, box, normalize="site")
    limit = free_energy_directional(0.3, 0.9, fig2, 1, normalization="site").value
    assert finite == pytest.approx(limit, abs=0.01)


def test_unbounded_direction(product6):
    with pytest.raises(UnboundedChain):
        series_directional(product6, 0.3, 2)


def test_bias_out_of_range(doubling):
    with pytest.raises(BiasOutOfRange):
        free_energy_1d(1.0, 0.5, doubling)
