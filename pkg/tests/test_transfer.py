import math
import pytest
import itertools
import numpy as np
from fractions import Fraction
from multiplicative_ising.errors import BiasOutOfRange, EmptyBlock
from multiplicative_ising.thermodynamics.transfer import (
    binary_entropy,
    block_probability_from_agreement,
    bond_agreement,
    chain_log_expectation,
    chain_partition,
    field_from_bias,
    ising_block_entropy,
    ising_block_probability,
    log_chain_partition,
    spectral,
    transfer_matrix,
)

BETAS = [-4.0, -1.0, -0.2, 0.3, 1.0, 4.0]
FIELDS = [-2.0, -0.4, 0.0, 0.7, 3.0]


def test_field_from_bias():
    assert field_from_bias(0.5) == 0.0
    assert field_from_bias(0.75) == pytest.approx(0.5 * math.log(3))
    assert field_from_bias(0.2) == pytest.approx(-field_from_bias(0.8))
    for r in [0.0, 1.0, -0.1, 1.5]:
        with pytest.raises(BiasOutOfRange):
            field_from_bias(r)


@pytest.mark.parametrize("beta", BETAS)
def test_zero_field_spectrum(beta):
    data = spectral(beta, 0.0)
    assert data.lambda_plus == pytest.approx(2 * math.cosh(beta), rel=1e-14)
    assert data.lambda_minus == pytest.approx(2 * math.sinh(beta), rel=1e-13)
    assert data.overlap == pytest.approx(2.0, rel=1e-14)


def test_infinite_temperature_spectrum():
    data = spectral(0.0, 0.8)
    assert data.lambda_plus == pytest.approx(2 * math.cosh(0.8))
    assert data.lambda_minus == 0.0


@pytest.mark.parametrize("beta, h", itertools.product(BETAS, FIELDS))
def test_spectrum_matches_numpy(beta, h):
    data = spectral(beta, h)
    low, high = np.linalg.eigvalsh(transfer_matrix(beta, h))
    assert data.lambda_plus == pytest.approx(high, rel=1e-12)
    assert data.lambda_minus == pytest.approx(low, rel=1e-9, abs=1e-12 * high)
    assert data.residual() < 1e-12
    assert data.overlap + data.overlap_minus == pytest.approx(2 * math.cosh(h), rel=1e-12)
    assert 0 <= data.amplitude < 1
    assert abs(data.ratio) < 1
    assert 1 - data.amplitude == pytest.approx(data.one_minus_amplitude, rel=1e-9)


def test_eigenvector_direction():
    data = spectral(0.6, 0.4)
    w = data.w_plus / np.linalg.norm(data.w_plus)
    assert abs(float(w @ data.e_plus)) == pytest.approx(1.0, rel=1e-12)
    assert float(data.e_plus @ data.e_minus) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("beta, h", [(150.0, 0.0), (150.0, 0.5), (150.0, -0.5), (-150.0, 0.4)])
def test_eigenvector_far_from_origin(beta, h):
    # w_+ loses every digit to cancellation here, the rotation angle does not
    data = spectral(beta, h)
    e = data.e_plus
    assert float(e @ e) == pytest.approx(1.0, rel=1e-15)
    image = transfer_matrix(beta, h) @ e / data.lambda_plus
    assert image == pytest.approx(e, abs=1e-12)


@pytest.mark.parametrize("beta, h", itertools.product([-30.0, -3.0, 0.5, 25.0], [-1.0, 0.2]))
def test_log_bracket(beta, h):
    data = spectral(beta, h)
    ks = np.arange(0, 40)
    values = data.log_bracket(ks)
    assert np.all(np.isfinite(values))
    naive = np.log1p(data.amplitude * data.ratio ** ks.astype(float))
    np.testing.assert_allclose(values, naive, rtol=1e-6, atol=1e-12)
    assert data.log_bracket(3) == pytest.approx(values[3])


def test_chain_partition_small():
    beta, h = 0.7, -0.3
    assert chain_partition(beta, h, 1) == pytest.approx(2 * math.cosh(h))
    expected = math.exp(beta + 2 * h) + 2 * math.exp(-beta) + math.exp(beta - 2 * h)
    assert chain_partition(beta, h, 2) == pytest.approx(expected)


@pytest.mark.parametrize("n", [3, 7, 12])
def test_chain_partition_enumeration(n):
    beta, h = -0.4, 0.9
    total = 0.0
    for spins in itertools.product([-1, 1], repeat=n):
        bonds = sum(a * b for a, b in zip(spins[:-1], spins[1:]))
        total += math.exp(beta * bonds + h * sum(spins))
    assert chain_partition(beta, h, n) == pytest.approx(total, rel=1e-12)


@pytest.mark.parametrize("beta, h", [(0.5, 0.3), (-0.8, -1.2), (2.0, 0.0)])
def test_long_chain_partition(beta, h):
    n = 200
    M, v = transfer_matrix(beta, h), np.array([math.exp(h / 2), math.exp(-h / 2)])
    log_direct = 0.0
    vec = v.copy()
    for _ in range(n - 1):
        vec = M @ vec
        log_direct += math.log(vec.max())
        vec /= vec.max()
    log_direct += math.log(float(v @ vec))
    assert log_chain_partition(beta, h, n) == pytest.approx(log_direct, rel=1e-12)


def test_chain_partition_rejects_empty():
    with pytest.raises(ValueError):
        log_chain_partition(0.3, 0.1, 0)


def test_chain_log_expectation():
    assert chain_log_expectation(0.3, 0.0, 17) == 0.0
    assert chain_log_expectation(0.5, 1.3, 2) == pytest.approx(math.log(math.cosh(1.3)))
    r, beta = 0.3, 1.0
    total = 0.0
    for spins in itertools.product([-1, 1], repeat=3):
        weight = math.prod(r if s == 1 else 1 - r for s in spins)
        total += weight * math.exp(beta * (spins[0] * spins[1] + spins[1] * spins[2]))
    assert chain_log_expectation(r, beta, 3) == pytest.approx(math.log(total), abs=1e-12)


def test_block_probability():
    q = bond_agreement(1.0)
    assert q == pytest.approx(math.e / (2 * math.cosh(1.0)))
    assert ising_block_probability(2.3, [-1]) == 0.5
    assert ising_block_probability(0.0, [1, -1, 1, 1]) == pytest.approx(2**-4)
    assert ising_block_probability(1.0, [1, 1]) == pytest.approx(0.5 * q)
    assert ising_block_probability(1.0, [1, -1]) == pytest.approx(0.5 * (1 - q))


def test_block_probability_exact():
    prob = block_probability_from_agreement(Fraction(3, 4), (1, 1, -1))
    assert prob == Fraction(3, 32)


def test_block_probabilities_sum_to_one():
    blocks = itertools.product([-1, 1], repeat=5)
    assert math.fsum(ising_block_probability(-0.6, b) for b in blocks) == pytest.approx(1.0)


def test_block_errors():
    with pytest.raises(EmptyBlock):
        ising_block_probability(0.3, [])
    with pytest.raises(EmptyBlock):
        ising_block_entropy(0.3, 0)
    with pytest.raises(ValueError):
        ising_block_probability(0.3, [1, 0])


def test_block_entropy():
    assert ising_block_entropy(0.0, 3) == pytest.approx(3 * math.log(2))
    assert ising_block_entropy(2.7, 1) == pytest.approx(math.log(2))
    q = math.e / (2 * math.cosh(1.0))
    expected = math.log(2) + 3 * binary_entropy(q)
    assert ising_block_entropy(1.0, 4) == pytest.approx(expected)
    probs = [ising_block_probability(1.0, b) for b in itertools.product([-1, 1], repeat=4)]
    assert ising_block_entropy(1.0, 4) == pytest.approx(
        -math.fsum(p * math.log(p) for p in probs), abs=1e-12
    )


def test_binary_entropy():
    assert binary_entropy(0.5) == pytest.approx(math.log(2))
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
