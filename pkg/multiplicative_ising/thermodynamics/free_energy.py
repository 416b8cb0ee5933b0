import math
import logging
import itertools
import numpy as np
import pandas as pd
from fractions import Fraction
from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, Tuple, Union
from multiplicative_ising.constants import DEFAULT_TOL, TRUNCATION_CAP
from multiplicative_ising.errors import ToleranceTooTight, UnboundedChain
from multiplicative_ising.lattice.chains import b_count, chain_census, check_cap
from multiplicative_ising.lattice.semigroup import (
    SemigroupSpec,
    density_K_over_J,
    first_elements,
    gamma_exact,
    normalization_constant,
    validate_generators,
)
from multiplicative_ising.thermodynamics.transfer import (
    SpectralData,
    chain_log_expectation,
    field_from_bias,
    spectral,
)

logger = logging.getLogger(__name__)

EXECUTORS = ("iterative", "futures")

# past this, 1/l underflows anyway
_FLOAT_LIMIT = 2**1000


def _as_floats(elements: Sequence[int]) -> np.ndarray:
    return np.array([float(x) if x < _FLOAT_LIMIT else math.inf for x in elements])


@dataclass(frozen=True)
class FreeEnergyResult:
    """
    Parameters:
    -----------
        value:
            F_r(beta)
        truncation_K:
            number of series terms summed
        tail_bound:
            certified bound on the omitted terms (inf when no certificate exists)
        converged:
            tail_bound < tol
        constant:
            prefactor C of the series
    """

    value: float
    beta: float
    r: float
    truncation_K: int
    tail_bound: float
    converged: bool
    constant: Fraction
    normalization: str = "site"


class FreeEnergySeries:
    """
    F_r(beta) = C [(1 + g)/2 log(r(1-r)) + log|v.e_+|^2 + g log Lambda_+]
                + C sum_k (1/l_k - 1/l_{k+1}) log(1 + A rho^k)

    with l_k the k-th element of the ordering semigroup and g its gamma.

    Parameters:
    -----------
        r:
            Bernoulli bias in (0, 1)
        section:
            generators of the ordering semigroup
        constant:
            prefactor C
        normalization:
            label stored in results
    """

    def __init__(
        self,
        r: float,
        section: Sequence[int],
        constant: Fraction,
        normalization: str = "site",
    ):
        self.r = r
        self.h = field_from_bias(r)
        self.section = tuple(section)
        self.constant = Fraction(constant)
        self.gamma = gamma_exact(self.section)
        self.normalization = normalization
        self._c = float(self.constant)
        self._g = float(self.gamma)
        self._log_bias = math.log(r * (1 - r))
        self._ells = _as_floats(first_elements(self.section, 64))

    def __repr__(self):
        return (
            f"FreeEnergySeries(r={self.r}, section={self.section}, "
            f"constant={self.constant}, normalization='{self.normalization}')"
        )

    @property
    def slope_limit(self) -> float:
        """sup |F'| = C gamma"""
        return float(self.constant * self.gamma)

    def elements(self, count: int) -> np.ndarray:
        """l_1..l_count as floats, inf past the end of a finite semigroup"""
        if len(self._ells) < count and len(self._ells) >= 64:
            size = len(self._ells)
            while size < count:
                size *= 2
            self._ells = _as_floats(first_elements(self.section, size))
        out = np.full(count, np.inf)
        n = min(count, len(self._ells))
        out[:n] = self._ells[:n]
        return out

    def weights(self, K: int) -> np.ndarray:
        """w_k = 1/l_k - 1/l_{k+1}, k = 1..K"""
        inverse = 1.0 / self.elements(K + 1)
        return inverse[:-1] - inverse[1:]

    def closed_part(self, data: SpectralData) -> float:
        return self._c * (
            (1 + self._g) / 2 * self._log_bias
            + math.log(data.overlap)
            + self._g * data.log_lambda_plus
        )

    def _abs_ratio_powers(self, data: SpectralData, ks: np.ndarray) -> np.ndarray:
        if data.one_minus_ratio >= 1.0:
            return np.where(ks == 0, 1.0, 0.0)
        return np.exp(ks * math.log1p(-data.one_minus_ratio))

    def _value_tail(self, data: SpectralData, ks: np.ndarray) -> np.ndarray:
        """certified bound on C sum_{k > K} w_k |log(1 + A rho^k)| for every K in ks"""
        x = data.amplitude * self._abs_ratio_powers(data, ks + 1)
        return self._c * x / ((1 - x) * self.elements(int(ks.max()) + 1)[ks])

    def _derivative_tail(self, data: SpectralData, ks: np.ndarray) -> np.ndarray:
        der = data.derivatives()
        A = data.amplitude
        x = A * self._abs_ratio_powers(data, ks + 1)
        numerator = abs(der.d_amplitude) * self._abs_ratio_powers(data, ks + 1) + (
            ks + 1
        ) * A * self._abs_ratio_powers(data, ks) * abs(der.d_ratio)
        return self._c * numerator / ((1 - x) * self.elements(int(ks.max()) + 1)[ks])

    def _truncation(
        self, data: SpectralData, tol: float, tail: Callable
    ) -> Tuple[int, float]:
        """smallest K whose tail bound is below tol, capped at TRUNCATION_CAP"""
        if data.amplitude == 0.0 or data.lambda_minus == 0.0:
            return 0, 0.0
        start, chunk = 0, 256
        while start <= TRUNCATION_CAP:
            ks = np.arange(start, min(start + chunk, TRUNCATION_CAP + 1))
            bounds = tail(data, ks)
            below = np.flatnonzero(bounds < tol)
            if below.size:
                return int(ks[below[0]]), float(bounds[below[0]])
            start += chunk
            chunk *= 2
        return TRUNCATION_CAP, float(tail(data, np.array([TRUNCATION_CAP]))[0])

    def terms(self, beta: float, K: int) -> np.ndarray:
        """C w_k log(1 + A rho^k), k = 1..K"""
        data = spectral(beta, self.h)
        return self._c * self.weights(K) * data.log_bracket(np.arange(1, K + 1))

    def value(
        self,
        beta: float,
        tol: float = DEFAULT_TOL,
        truncation: int = None,
        strict: bool = False,
    ) -> FreeEnergyResult:
        """
        F_r(beta) with a certified tail bound

        Parameters:
        -----------
            tol:
                target bound on the omitted tail
            truncation:
                sum exactly this many terms instead of choosing K from tol
            strict:
                raise ToleranceTooTight when the bound is not met
        """
        if beta == 0:
            return self._result(0.0, beta, 0, 0.0, True)
        data = spectral(beta, self.h)
        if truncation is None:
            K, tail = self._truncation(data, tol, self._value_tail)
        else:
            K = int(truncation)
            tail = float(self._value_tail(data, np.array([K]))[0]) if data.amplitude else 0.0
        converged = tail < tol
        if not converged and truncation is None:
            message = f"tail bound {tail:.3e} >= tol {tol:.1e} at K={K}, beta={beta}"
            if strict:
                raise ToleranceTooTight(message)
            logger.warning(message)
        logger.debug(f"beta={beta}: K={K}, tail={tail:.3e}")
        series = math.fsum(self.terms(beta, K)) if K else 0.0
        return self._result(self.closed_part(data) + series, beta, K, tail, converged)

    def _result(self, value, beta, K, tail, converged) -> FreeEnergyResult:
        return FreeEnergyResult(
            value=value,
            beta=beta,
            r=self.r,
            truncation_K=K,
            tail_bound=tail,
            converged=converged,
            constant=self.constant,
            normalization=self.normalization,
        )

    def derivative(
        self, beta: float, tol: float = DEFAULT_TOL, truncation: int = None
    ) -> float:
        """F'_r(beta), differentiating the series term by term"""
        data = spectral(beta, self.h)
        der = data.derivatives()
        closed = self._c * (
            der.d_log_overlap + self._g * der.d_lambda_plus / data.lambda_plus
        )
        if truncation is None:
            K, _ = self._truncation(data, tol, self._derivative_tail)
        else:
            K = int(truncation)
        if K == 0:
            return closed
        ks = np.arange(1, K + 1)
        rho = data.ratio
        numerator = der.d_amplitude * np.power(rho, ks) + ks * data.amplitude * np.power(
            rho, ks - 1
        ) * der.d_ratio
        terms = self.weights(K) * numerator / np.exp(data.log_bracket(ks))
        return closed + self._c * math.fsum(terms)


def series_1d(generators: Union[Sequence[int], SemigroupSpec], r: float) -> FreeEnergySeries:
    """series of the one-dimensional multiple sum, C = 1/gamma(G)"""
    spec = generators if isinstance(generators, SemigroupSpec) else validate_generators(generators, 1)
    section = spec.section(1)
    return FreeEnergySeries(r, section, 1 / gamma_exact(section), normalization="site")


def series_directional(
    spec: SemigroupSpec, r: float, j: int = None, normalization: str = "site"
) -> FreeEnergySeries:
    """series along coordinate j of a d-dimensional spec"""
    j = spec.direction if j is None else j
    if spec.free_generators(j):
        raise UnboundedChain(
            f"generators with entry 1 in coordinate {j} give infinite chains: {spec.generators}"
        )
    constant = normalization_constant(spec, j, normalization)
    return FreeEnergySeries(r, spec.section(j), constant, normalization=normalization)


def build_series(
    r: float,
    source: Union[Sequence[int], SemigroupSpec],
    direction: int = None,
    normalization: str = "site",
) -> FreeEnergySeries:
    """1d series for a list of integers or a d=1 spec, directional series otherwise"""
    if isinstance(source, SemigroupSpec) and source.d > 1:
        return series_directional(source, r, direction, normalization)
    return series_1d(source, r)


def free_energy_1d(
    r: float,
    beta: float,
    generators: Union[Sequence[int], SemigroupSpec],
    tol: float = DEFAULT_TOL,
    truncation: int = None,
    strict: bool = False,
) -> FreeEnergyResult:
    return series_1d(generators, r).value(beta, tol, truncation, strict)


def free_energy_directional(
    r: float,
    beta: float,
    spec: SemigroupSpec,
    direction: int = None,
    tol: float = DEFAULT_TOL,
    normalization: str = "site",
    truncation: int = None,
    strict: bool = False,
) -> FreeEnergyResult:
    series = series_directional(spec, r, direction, normalization)
    return series.value(beta, tol, truncation, strict)


def free_energy_general(
    r: float,
    beta: float,
    spec: SemigroupSpec,
    direction: int = None,
    K_cap: int = 64,
) -> FreeEnergyResult:
    """
    rank-capped free energy per box point,
    D sum_{k_1..k_d <= K_cap} prod_c (1/l^(c)_{k_c} - 1/l^(c)_{k_c+1}) log E_{b_k + 1}

    the partial sum carries no tail certificate (tail_bound is inf)
    """
    j = spec.direction if direction is None else direction
    axes = []
    for c in range(1, spec.d + 1):
        ells = first_elements(spec.section(c), K_cap + 1)
        inverse = [Fraction(1, x) for x in ells] + [Fraction(0)] * (K_cap + 1 - len(ells))
        weights = [inverse[m] - inverse[m + 1] for m in range(K_cap)]
        axes.append([(m, w) for m, w in enumerate(weights, start=1) if w])
    mass = {}
    for cell in itertools.product(*axes):
        ks = tuple(m for m, _ in cell)
        b = b_count(spec, j, ks)
        mass[b] = mass.get(b, Fraction(0)) + math.prod((w for _, w in cell), start=Fraction(1))
    density = density_K_over_J(spec)
    value = math.fsum(
        float(density * w) * chain_log_expectation(r, beta, b + 1)
        for b, w in sorted(mass.items())
    )
    return FreeEnergyResult(
        value=value,
        beta=beta,
        r=r,
        truncation_K=K_cap,
        tail_bound=math.inf,
        converged=False,
        constant=density,
        normalization="volume",
    )


def finite_mgf(
    r: float,
    beta: float,
    spec: SemigroupSpec,
    box: Sequence[int],
    direction: int = None,
    cap: str = "coordinate",
    normalize: str = "volume",
) -> float:
    """
    exact (1/|box|) log E_r[exp(beta S)] from the chain-length census

    Parameters:
    -----------
        normalize:
            'volume' divides by N_1...N_d, 'site' by the number of retained sites
    """
    check_cap(cap)
    if normalize not in ("volume", "site"):
        raise ValueError(
            f"Incorrect normalize '{normalize}'. Available options are: ('volume', 'site')"
        )
    census = chain_census(box, spec, direction, cap)
    total = math.fsum(
        count * chain_log_expectation(r, beta, length + 1)
        for length, count in census.items()
    )
    if normalize == "site":
        return total / sum(length * count for length, count in census.items())
    return total / math.prod(box)


def free_energy_derivative(
    r: float,
    beta: float,
    source: Union[Sequence[int], SemigroupSpec],
    direction: int = None,
    tol: float = DEFAULT_TOL,
    normalization: str = "site",
) -> float:
    return build_series(r, source, direction, normalization).derivative(beta, tol)


def _curve_point(args) -> FreeEnergyResult:
    series, beta, tol, truncation = args
    return series.value(beta, tol, truncation)


def free_energy_curve(
    series: FreeEnergySeries,
    betas: Sequence[float],
    tol: float = DEFAULT_TOL,
    truncation: int = None,
    executor: str = "iterative",
    workers: int = 4,
) -> pd.DataFrame:
    """
    F_r on a beta grid

    Returns:
    --------
        pandas DataFrame with columns beta, F, tail_bound, truncation_K
    """
    if executor not in EXECUTORS:
        raise ValueError(f"Incorrect executor '{executor}'. Available options are: {EXECUTORS}")
    tasks = [(series, float(beta), tol, truncation) for beta in betas]
    if executor == "futures":
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_curve_point, tasks))
    else:
        results = [_curve_point(task) for task in tasks]
    return pd.DataFrame(
        {
            "beta": [res.beta for res in results],
            "F": [res.value for res in results],
            "tail_bound": [res.tail_bound for res in results],
            "truncation_K": [res.truncation_K for res in results],
        }
    )
