import math
import numpy as np
from fractions import Fraction
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union
from scipy.special import entr, expit
from multiplicative_ising.constants import LOG_SPACE_THRESHOLD
from multiplicative_ising.errors import BiasOutOfRange, EmptyBlock


def field_from_bias(r: float) -> float:
    """effective field h = 1/2 log(r / (1 - r)) of a Bernoulli(r) spin"""
    if not 0 < r < 1:
        raise BiasOutOfRange(f"bias r must lie in (0, 1), got {r}")
    return 0.5 * math.log(r / (1 - r))


def bond_agreement(beta: float) -> float:
    """q = e^beta / (2 cosh beta), probability that neighbouring spins agree"""
    return float(expit(2 * beta))


def binary_entropy(q: float) -> float:
    return float(entr(q) + entr(1 - q))


def transfer_matrix(beta: float, h: float) -> np.ndarray:
    return np.array(
        [
            [math.exp(beta + h), math.exp(-beta)],
            [math.exp(-beta), math.exp(beta - h)],
        ]
    )


def boundary_vector(h: float) -> np.ndarray:
    return np.array([math.exp(h / 2), math.exp(-h / 2)])


class SpectralDerivatives(NamedTuple):
    d_lambda_plus: float
    d_lambda_minus: float
    d_log_overlap: float
    d_amplitude: float
    d_ratio: float


@dataclass(frozen=True)
class SpectralData:
    """
    closed-form spectrum of the chain transfer matrix

    M = [[e^(beta+h), e^-beta], [e^-beta, e^(beta-h)]] has eigenvalues
    Lambda_+- = e^beta (cosh h +- s), s = sqrt(sinh^2 h + e^-4beta), and unit
    eigenvectors e_+ = (cos t, sin t), e_- = (-sin t, cos t) with
    t = 1/2 atan2(e^-2beta, sinh h).
    """

    beta: float
    h: float
    s: float
    theta: float
    lambda_plus: float
    lambda_minus: float
    overlap: float
    overlap_minus: float
    one_minus_amplitude: float
    one_minus_ratio: float

    @property
    def v(self) -> np.ndarray:
        return boundary_vector(self.h)

    @property
    def e_plus(self) -> np.ndarray:
        return np.array([math.cos(self.theta), math.sin(self.theta)])

    @property
    def e_minus(self) -> np.ndarray:
        return np.array([-math.sin(self.theta), math.cos(self.theta)])

    @property
    def w_plus(self) -> np.ndarray:
        """unnormalized eigenvector (-e^-beta, e^(h+beta) - Lambda_+)"""
        return np.array(
            [-math.exp(-self.beta), math.exp(self.h + self.beta) - self.lambda_plus]
        )

    @property
    def ratio(self) -> float:
        return self.lambda_minus / self.lambda_plus

    @property
    def amplitude(self) -> float:
        """A = |v.e_-|^2 / |v.e_+|^2, in [0, 1)"""
        return self.overlap_minus / self.overlap

    @property
    def log_lambda_plus(self) -> float:
        return self.beta + math.log(math.cosh(self.h) + self.s)

    def log_bracket(self, k: Union[int, np.ndarray]) -> np.ndarray:
        """
        log(1 + A rho^k) for integer k >= 0, rho = Lambda_-/Lambda_+

        odd powers of a negative ratio are evaluated as
        log((1 - A) + A (1 - |rho|^k)) so nothing cancels when A |rho|^k -> 1
        """
        k = np.asarray(k, dtype=np.int64)
        shape = k.shape
        k = np.atleast_1d(k)
        A = self.amplitude
        if A == 0.0:
            return np.zeros(shape)
        if self.one_minus_ratio >= 1.0:
            log_abs = np.where(k == 0, 0.0, -np.inf)
        else:
            log_abs = k * math.log1p(-self.one_minus_ratio)
        out = np.log1p(A * np.exp(log_abs))
        if self.lambda_minus < 0:
            odd = k % 2 == 1
            if np.any(odd):
                out[odd] = np.log(
                    self.one_minus_amplitude + A * -np.expm1(log_abs[odd])
                )
        return out.reshape(shape)

    def log_partition(self, n: Union[int, np.ndarray]) -> np.ndarray:
        """log Z(beta, h, n) = log(ov_+ Lambda_+^(n-1) (1 + A rho^(n-1)))"""
        n = np.asarray(n, dtype=np.int64)
        return (
            math.log(self.overlap)
            + (n - 1) * self.log_lambda_plus
            + self.log_bracket(n - 1)
        )

    def residual(self) -> float:
        """max |M e_+ - Lambda_+ e_+| relative to Lambda_+"""
        M = transfer_matrix(self.beta, self.h)
        return float(
            np.max(np.abs(M @ self.e_plus - self.lambda_plus * self.e_plus))
            / self.lambda_plus
        )

    def derivatives(self) -> SpectralDerivatives:
        """beta-derivatives of Lambda_+-, log |v.e_+|^2, A and rho at fixed h"""
        beta, h, s, theta = self.beta, self.h, self.s, self.theta
        shift = 2 * math.exp(-3 * beta) / s
        d_plus = self.lambda_plus - shift
        d_minus = self.lambda_minus + shift
        d_theta = -math.sinh(h) * math.exp(-2 * beta) / s**2
        norm = math.exp(h / 2) * math.cos(theta) + math.exp(-h / 2) * math.sin(theta)
        d_norm = d_theta * (
            -math.exp(h / 2) * math.sin(theta) + math.exp(-h / 2) * math.cos(theta)
        )
        d_log_overlap = 2 * d_norm / norm
        d_amplitude = -(1 + self.amplitude) * d_log_overlap
        d_ratio = (
            d_minus * self.lambda_plus - self.lambda_minus * d_plus
        ) / self.lambda_plus**2
        return SpectralDerivatives(
            d_lambda_plus=d_plus,
            d_lambda_minus=d_minus,
            d_log_overlap=d_log_overlap,
            d_amplitude=d_amplitude,
            d_ratio=d_ratio,
        )


def spectral(beta: float, h: float) -> SpectralData:
    """
    spectral data of the transfer matrix at (beta, h)

    Parameters:
    -----------
        beta:
            inverse temperature, any real with |beta| <= ~170
        h:
            effective field

    Returns:
    --------
        SpectralData
    """
    sh, ch = math.sinh(h), math.cosh(h)
    s = math.sqrt(sh**2 + math.exp(-4 * beta))
    theta = 0.5 * math.atan2(math.exp(-2 * beta), sh)
    lambda_plus = math.exp(beta) * (ch + s)
    lambda_minus = 2 * math.exp(-beta) * math.sinh(2 * beta) / (ch + s)
    overlap = (math.exp(h / 2) * math.cos(theta) + math.exp(-h / 2) * math.sin(theta)) ** 2
    overlap_minus = (
        -math.exp(h / 2) * math.sin(theta) + math.exp(-h / 2) * math.cos(theta)
    ) ** 2
    one_minus_amplitude = 2 * (sh**2 + math.exp(-2 * beta)) / (s * overlap)
    if lambda_minus < 0:
        one_minus_ratio = 2 * math.exp(beta) * ch / lambda_plus
    else:
        one_minus_ratio = 2 * math.exp(beta) * s / lambda_plus
    return SpectralData(
        beta=beta,
        h=h,
        s=s,
        theta=theta,
        lambda_plus=lambda_plus,
        lambda_minus=lambda_minus,
        overlap=overlap,
        overlap_minus=overlap_minus,
        one_minus_amplitude=one_minus_amplitude,
        one_minus_ratio=one_minus_ratio,
    )


def log_chain_partition(beta: float, h: float, n: int) -> float:
    """
    log Z(beta, h, n) = log v^T M^(n-1) v

    short chains iterate the matrix with rescaling, long chains use the
    spectral form
    """
    if n < 1:
        raise ValueError(f"a chain has at least one spin, got n={n}")
    if n > LOG_SPACE_THRESHOLD:
        return float(spectral(beta, h).log_partition(n))
    M = transfer_matrix(beta, h)
    v = boundary_vector(h)
    vec = v.copy()
    log_scale = 0.0
    for _ in range(n - 1):
        vec = M @ vec
        top = vec.max()
        vec /= top
        log_scale += math.log(top)
    return log_scale + math.log(float(v @ vec))


def chain_partition(beta: float, h: float, n: int) -> float:
    """Z(beta, h, n) = sum over n spins of exp(beta sum s_i s_i+1 + h sum s_i)"""
    return math.exp(log_chain_partition(beta, h, n))


def chain_log_expectation(r: float, beta: float, n: int) -> float:
    """
    log E[exp(beta sum_{i<n} s_i s_i+1)] for n i.i.d. Bernoulli(r) spins in {-1, +1}
    """
    h = field_from_bias(r)
    if beta == 0:
        return 0.0
    return 0.5 * n * math.log(r * (1 - r)) + log_chain_partition(beta, h, n)


def _check_block(block: Sequence[int]) -> None:
    if len(block) == 0:
        raise EmptyBlock("a block needs at least one spin")
    if any(x not in (-1, 1) for x in block):
        raise ValueError(f"block values must be -1 or +1, got {list(block)}")


def block_probability_from_agreement(
    q: Union[float, Fraction], block: Sequence[int]
) -> Union[float, Fraction]:
    """(1/2) prod over bonds of q (agree) or 1 - q (disagree)"""
    _check_block(block)
    prob = Fraction(1, 2) if isinstance(q, Fraction) else 0.5
    for a, b in zip(block[:-1], block[1:]):
        prob *= q if a == b else 1 - q
    return prob


def ising_block_probability(beta: float, block: Sequence[int]) -> float:
    """probability of a block of consecutive spins under the zero-field Ising chain with free left end"""
    _check_block(block)
    q, p = bond_agreement(beta), float(expit(-2 * beta))
    prob = 0.5
    for a, b in zip(block[:-1], block[1:]):
        prob *= q if a == b else p
    return prob


def ising_block_entropy(beta: float, k: int) -> float:
    """-E log mu(tau_0, ..., tau_{k-1}) = log 2 + (k - 1) H(q)"""
    if k < 1:
        raise EmptyBlock("a block needs at least one spin")
    return math.log(2) + (k - 1) * binary_entropy(bond_agreement(beta))
