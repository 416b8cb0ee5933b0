import math
import pytest
import itertools
from multiplicative_ising.gibbs.measure import (
    CylinderEvent,
    check_multiplication_invariance,
    cylinder_marginal,
    finite_volume_probability,
    layer_views,
    limit_cylinder_probability,
)
from multiplicative_ising.processors.verify_processor import INVARIANCE_CASES, SPECS
from multiplicative_ising.thermodynamics.transfer import bond_agreement


def test_event_validation():
    with pytest.raises(ValueError):
        CylinderEvent(sites=(1, 2), values=(1,))
    with pytest.raises(ValueError):
        CylinderEvent(sites=(1, 1), values=(1, -1))
    with pytest.raises(ValueError):
        CylinderEvent(sites=(1, 2), values=(1, 0))
    with pytest.raises(ValueError):
        CylinderEvent(sites=((1, 2), 3), values=(1, 1))


def test_event_helpers():
    event = CylinderEvent(sites=(1, 3), values=(1, -1))
    assert event.sites == ((1,), (3,))
    assert len(event) == 2
    assert event.scaled(2).sites == ((2,), (6,))
    assert CylinderEvent.from_json(event.to_json()) == event
    planar = CylinderEvent(sites=((1, 2), (3, 5)), values=(-1, 1))
    assert planar.scaled((2, 3)).sites == ((2, 6), (6, 15))
    assert CylinderEvent.from_json(planar.to_json()) == planar


def test_layer_views(doubling):
    event = CylinderEvent(sites=(8, 3, 1, 2), values=(-1, 1, 1, 1))
    views = layer_views(event, doubling)
    assert [v.root for v in views] == [(1,), (3,)]
    assert views[0].positions == (1, 2, 4)
    assert views[0].values == (1, 1, -1)
    assert views[1].positions == (1,)


@pytest.mark.parametrize("beta", [-1.3, 0.0, 0.8, 2.0])
def test_limit_examples(doubling, beta):
    q = bond_agreement(beta)
    same = CylinderEvent(sites=(1, 2, 4), values=(1, 1, 1))
    assert limit_cylinder_probability(same, beta, doubling) == pytest.approx(0.5 * q**2)
    apart = CylinderEvent(sites=(3, 5), values=(1, -1))
    assert limit_cylinder_probability(apart, beta, doubling) == pytest.approx(0.25)
    gap = CylinderEvent(sites=(1, 4), values=(-1, -1))
    expected = 0.5 * (q**2 + (1 - q) ** 2)
    assert limit_cylinder_probability(gap, beta, doubling) == pytest.approx(expected)


def test_limit_sums_to_one(two_three):
    sites = (1, 2, 3, 5, 6)
    total = math.fsum(
        limit_cylinder_probability(CylinderEvent(sites=sites, values=v), 0.7, two_three)
        for v in itertools.product([-1, 1], repeat=len(sites))
    )
    assert total == pytest.approx(1.0, abs=1e-12)


def test_marginal_consistency(fig2):
    event = CylinderEvent(sites=((1, 1), (2, 3), (6, 15), (5, 2)), values=(1, -1, 1, 1))
    marginal = cylinder_marginal(event, [(1, 1), (6, 15), (5, 2)])
    assert marginal.sites == ((1, 1), (6, 15), (5, 2))
    flipped = CylinderEvent(sites=event.sites, values=(1, 1, 1, 1))
    both = limit_cylinder_probability(event, 0.9, fig2) + limit_cylinder_probability(
        flipped, 0.9, fig2
    )
    assert both == pytest.approx(limit_cylinder_probability(marginal, 0.9, fig2), abs=1e-14)


@pytest.mark.parametrize(
    "name, sites, m",
    [
        ("doubling", (1, 2), 3),
        ("doubling", (1, 2, 3, 4, 6), 2),
        ("doubling", (1, 2, 4, 5), 5),
        ("doubling", (1, 3, 6, 12), 7),
        ("two_three", (1, 2, 3, 4), 5),
        ("two_three", (1, 2, 5, 6), 7),
        ("fig2", ((1, 1), (2, 3)), (13, 17)),
        ("diag23", ((1, 1), (2, 3), (4, 9), (2, 1)), (2, 3)),
        ("diag23", ((1, 1), (2, 3), (4, 9), (2, 1)), (3, 5)),
    ],
)
def test_multiplication_invariance(name, sites, m, request):
    spec = request.getfixturevalue(name)
    for values in itertools.product([-1, 1], repeat=len(sites)):
        event = CylinderEvent(sites=sites, values=values)
        assert check_multiplication_invariance(event, m, 1.1, spec) < 1e-12


def test_shared_factor_multiplier_moves_ranks(fig2):
    # (2, 3) is itself a generator, so scaling stretches the gap between the two sites
    event = CylinderEvent(sites=((1, 1), (2, 3)), values=(1, 1))
    assert check_multiplication_invariance(event, (2, 3), 1.1, fig2) > 1e-2
    flat = check_multiplication_invariance(event, (2, 3), 0.0, fig2)
    assert flat == pytest.approx(0.0, abs=1e-15)


def test_verify_catalog_multipliers():
    planar = {m for name, _, m in INVARIANCE_CASES if SPECS[name].d == 2}
    linear = {m for name, _, m in INVARIANCE_CASES if SPECS[name].d == 1}
    assert {2, 3, 5, 7} <= linear
    assert {(2, 3), (3, 5)} <= planar


def test_identity_invariance(fig1):
    event = CylinderEvent(sites=(1, 2, 7), values=(1, -1, -1))
    assert check_multiplication_invariance(event, 1, 0.4, fig1) == 0.0


def test_finite_volume_infinite_temperature(two_three):
    event = CylinderEvent(sites=(1, 2, 5, 7, 100), values=(1, -1, 1, 1, -1))
    assert finite_volume_probability(event, 0.0, two_three, (12,)) == pytest.approx(2**-5)


def test_finite_volume_examples(doubling):
    beta = 0.9
    q = bond_agreement(beta)
    single = CylinderEvent(sites=(3,), values=(-1,))
    assert finite_volume_probability(single, beta, doubling, (8,)) == pytest.approx(0.5)
    pair = CylinderEvent(sites=(1, 2), values=(1, 1))
    assert finite_volume_probability(pair, beta, doubling, (2,)) == pytest.approx(0.5 * q)


def test_finite_volume_matches_limit(doubling):
    # free-ended chains already carry the limit marginals
    event = CylinderEvent(sites=(1, 2, 4, 3), values=(1, 1, -1, 1))
    finite = finite_volume_probability(event, -0.6, doubling, (2**10,))
    assert finite == pytest.approx(limit_cylinder_probability(event, -0.6, doubling), rel=1e-12)


def test_finite_volume_many_touched_chains(doubling):
    # five chains, 28 spins in their closed domains
    sites = (1, 2, 4, 3, 6, 5, 7, 9, 18)
    values = (1, -1, -1, 1, 1, -1, 1, 1, -1)
    event = CylinderEvent(sites=sites, values=values)
    finite = finite_volume_probability(event, 0.7, doubling, (64,))
    assert finite == pytest.approx(limit_cylinder_probability(event, 0.7, doubling), rel=1e-12)
