import math
import pytest
from multiplicative_ising.errors import TooLargeForEnumeration, UnboundedChain
from multiplicative_ising.gibbs.measure import CylinderEvent, finite_volume_probability
from multiplicative_ising.oracle.brute_force import (
    brute_force_block_entropy,
    brute_force_cylinder,
    brute_force_mgf,
    involved_sites,
)
from multiplicative_ising.thermodynamics.free_energy import finite_mgf
from multiplicative_ising.thermodynamics.transfer import ising_block_entropy


def test_involved_sites(doubling, two_three):
    involved = involved_sites(doubling, (2,))
    assert involved.sites == ((1,), (2,), (4,))
    assert involved.bonds == ((0, 1), (1, 2))
    assert involved.volume == 2
    # 1-2-3-4 with the successor 6, and 5-10
    assert len(involved_sites(two_three, (5,))) == 7


def test_involved_sites_unbounded(product6):
    with pytest.raises(UnboundedChain):
        involved_sites(product6, (4, 2), 2)


def test_fair_coin(doubling):
    assert brute_force_mgf(0.5, 1.0, doubling, (2,)) == pytest.approx(math.log(math.cosh(1.0)))


@pytest.mark.parametrize("r, beta", [(0.2, 0.7), (0.6, -1.4)])
def test_single_bond(doubling, r, beta):
    expected = math.log(
        math.exp(beta) * (r**2 + (1 - r) ** 2) + math.exp(-beta) * 2 * r * (1 - r)
    )
    assert brute_force_mgf(r, beta, doubling, (1,)) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize(
    "name, box, cap",
    [
        ("doubling", (12,), "coordinate"),
        ("two_three", (8,), "coordinate"),
        ("fig1", (6,), "coordinate"),
        ("diag23", (3, 3), "coordinate"),
        ("diag23", (3, 3), "rank"),
        ("product6", (4, 2), "coordinate"),
    ],
)
@pytest.mark.parametrize("r, beta", [(0.3, -0.8), (0.5, 0.6), (0.8, 2.0)])
def test_finite_mgf_matches_enumeration(name, box, cap, r, beta, request):
    spec = request.getfixturevalue(name)
    oracle = brute_force_mgf(r, beta, spec, box, cap=cap)
    assert finite_mgf(r, beta, spec, box, cap=cap) == pytest.approx(oracle, abs=1e-12)
    site = brute_force_mgf(r, beta, spec, box, cap=cap, normalize="site")
    assert finite_mgf(r, beta, spec, box, cap=cap, normalize="site") == pytest.approx(
        site, abs=1e-12
    )


@pytest.mark.parametrize(
    "name, box, event",
    [
        ("doubling", (6,), CylinderEvent(sites=(1, 2, 3), values=(1, -1, 1))),
        ("doubling", (6,), CylinderEvent(sites=(3, 12), values=(1, 1))),
        ("two_three", (8,), CylinderEvent(sites=(2, 4, 9), values=(-1, -1, 1))),
        ("diag23", (3, 3), CylinderEvent(sites=((1, 1), (2, 3)), values=(1, -1))),
    ],
)
@pytest.mark.parametrize("beta", [-0.7, 0.0, 1.5])
def test_cylinder_matches_enumeration(name, box, event, beta, request):
    spec = request.getfixturevalue(name)
    oracle = brute_force_cylinder(event, beta, spec, box)
    assert finite_volume_probability(event, beta, spec, box) == pytest.approx(oracle, abs=1e-12)


@pytest.mark.parametrize("beta", [0.0, 0.3, 1.2])
def test_block_entropy(beta):
    for k in range(1, 9):
        assert brute_force_block_entropy(beta, k) == pytest.approx(
            ising_block_entropy(beta, k), abs=1e-12
        )


def test_too_large(two_three):
    with pytest.raises(TooLargeForEnumeration):
        brute_force_mgf(0.3, 0.5, two_three, (8,), max_sites=3)
    event = CylinderEvent(sites=(1,), values=(1,))
    with pytest.raises(TooLargeForEnumeration):
        brute_force_cylinder(event, 0.5, two_three, (8,), max_sites=3)


@pytest.mark.slow
def test_futures_matches_iterative(two_three):
    iterative = brute_force_mgf(0.3, 0.9, two_three, (14,), max_sites=24)
    futures = brute_force_mgf(
        0.3, 0.9, two_three, (14,), max_sites=24, executor="futures", workers=2
    )
    assert futures == pytest.approx(iterative, rel=1e-14)
