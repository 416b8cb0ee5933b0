import math
import logging
from fractions import Fraction
from typing import Sequence
from multiplicative_ising.constants import DEFAULT_TOL, TRUNCATION_CAP
from multiplicative_ising.errors import ToleranceTooTight
from multiplicative_ising.lattice.semigroup import (
    SemigroupSpec,
    first_elements,
    gamma_exact,
    normalization_constant,
    validate_generators,
)
from multiplicative_ising.thermodynamics.transfer import (
    binary_entropy,
    bond_agreement,
    ising_block_entropy,
)

logger = logging.getLogger(__name__)


def ks_series(
    beta: float,
    section: Sequence[int],
    constant: Fraction,
    tol: float = DEFAULT_TOL,
    strict: bool = False,
) -> float:
    """
    C sum_k (1/l_k - 1/l_{k+1}) (-E log mu(tau_0..tau_{k-1}))

    stops once the remainder C sum_{k>K} w_k (log 2 + (k-1) H), known exactly from
    gamma of the section, drops below tol
    """
    c = float(constant)
    g = float(gamma_exact(section))
    H = binary_entropy(bond_agreement(beta))
    size = 64
    while True:
        ells = first_elements(section, size + 1)
        inverse = [float(Fraction(1, x)) for x in ells] + [0.0] * (size + 1 - len(ells))
        terms, partial = [], 0.0
        for k in range(1, size + 1):
            w = inverse[k - 1] - inverse[k]
            terms.append(w * ising_block_entropy(beta, k))
            partial += inverse[k - 1]
            # sum_{k'>k} w_k' = 1/l_{k+1}, sum_{k'>k} k' w_k' = g - sum_{k'<=k} 1/l_k' + k/l_{k+1}
            tail_mass = inverse[k]
            tail_moment = max(g - partial + k * inverse[k], 0.0)
            remainder = c * (math.log(2) * tail_mass + H * (tail_moment - tail_mass))
            if remainder < tol:
                logger.debug(f"ks series at beta={beta}: K={k}, remainder={remainder:.2e}")
                return c * math.fsum(terms)
        if size >= TRUNCATION_CAP:
            message = f"ks series remainder {remainder:.2e} >= tol {tol:.1e} at K={size}"
            if strict:
                raise ToleranceTooTight(message)
            logger.warning(message)
            return c * math.fsum(terms)
        size = min(size * 4, TRUNCATION_CAP)


def ks_entropy_2multiple(beta: float, p: Sequence[int], tol: float = DEFAULT_TOL) -> float:
    """
    entropy of the sigma_i sigma_{i.p} model, sum_l (P-1)^2/P^(l+1) (log 2 + (l-1) H(q))
    """
    spec = validate_generators([p], len(p))
    P = spec.products[0]
    return ks_series(beta, (P,), Fraction(P - 1, P), tol)


def ks_entropy_directional(
    beta: float,
    spec: SemigroupSpec,
    j: int = None,
    tol: float = DEFAULT_TOL,
    normalization: str = "site",
) -> float:
    constant = normalization_constant(spec, j, normalization)
    return ks_series(beta, spec.section(j), constant, tol)


def ks_entropy_closed_form(
    beta: float, spec: SemigroupSpec, j: int = None, normalization: str = "site"
) -> float:
    """C log 2 + C (gamma(S^(j)) - 1) H(q)"""
    c = float(normalization_constant(spec, j, normalization))
    g = float(gamma_exact(spec.section(j)))
    return c * math.log(2) + c * (g - 1) * binary_entropy(bond_agreement(beta))
