import math
import logging
import numpy as np
import pandas as pd
from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor
from typing import List, Sequence, Union
from multiplicative_ising.constants import BETA_MAX, BISECTION_ITERATIONS
from multiplicative_ising.errors import BracketFailure
from multiplicative_ising.lattice.semigroup import SemigroupSpec
from multiplicative_ising.thermodynamics.free_energy import (
    EXECUTORS,
    FreeEnergySeries,
    build_series,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RatePoint:
    """
    Parameters:
    -----------
        x:
            mean of the multiple sum
        I:
            rate I_r(x), +inf outside the range of F'
        eta:
            maximizer with F'(eta) = x (nan where I is infinite)
        capped:
            True if eta was clipped to +-BETA_MAX
    """

    x: float
    I: float
    eta: float
    capped: bool = False


def solve_rate(
    series: FreeEnergySeries,
    x: float,
    tol: float = 1e-10,
    beta_max: float = BETA_MAX,
    strict: bool = False,
) -> RatePoint:
    """
    I(x) = eta x - F(eta) with F'(eta) = x, found by bisection on the
    increasing function F'
    """
    limit = series.slope_limit
    if abs(x) >= limit:
        return RatePoint(x=x, I=math.inf, eta=math.nan)
    if x == series.derivative(0.0, tol):
        return RatePoint(x=x, I=0.0, eta=0.0)
    lo, hi = -beta_max, beta_max
    slope_lo, slope_hi = series.derivative(lo, tol), series.derivative(hi, tol)
    if not (math.isfinite(slope_lo) and math.isfinite(slope_hi)):
        raise BracketFailure(x, (lo, hi), (slope_lo, slope_hi))
    if x <= slope_lo or x >= slope_hi:
        if strict:
            raise BracketFailure(x, (lo, hi), (slope_lo, slope_hi))
        eta = lo if x <= slope_lo else hi
        logger.warning(f"x={x} lies beyond F' on [{lo}, {hi}]; eta capped at {eta}")
        value = series.value(eta, tol).value
        return RatePoint(x=x, I=max(eta * x - value, 0.0), eta=eta, capped=True)
    for _ in range(BISECTION_ITERATIONS):
        mid = 0.5 * (lo + hi)
        slope = series.derivative(mid, tol)
        if abs(slope - x) < tol and hi - lo < 1e-12:
            break
        if slope < x:
            lo = mid
        else:
            hi = mid
    eta = 0.5 * (lo + hi)
    value = series.value(eta, tol).value
    logger.debug(f"x={x}: eta={eta}, bracket width {hi - lo:.2e}")
    return RatePoint(x=x, I=max(eta * x - value, 0.0), eta=eta)


def rate_function(
    r: float,
    source: Union[Sequence[int], SemigroupSpec],
    x: float,
    direction: int = None,
    tol: float = 1e-10,
    normalization: str = "site",
    strict: bool = False,
) -> RatePoint:
    """
    rate function I_r(x) = sup_beta (beta x - F_r(beta))

    Parameters:
    -----------
        source:
            list of 1d generators or a SemigroupSpec
        direction:
            ordering coordinate for d > 1
        strict:
            raise BracketFailure instead of capping eta

    Returns:
    --------
        RatePoint
    """
    series = build_series(r, source, direction, normalization)
    return solve_rate(series, x, tol, strict=strict)


def _rate_point(args) -> RatePoint:
    series, x, tol = args
    return solve_rate(series, x, tol)


def rate_curve(
    r: float,
    source: Union[Sequence[int], SemigroupSpec],
    x_grid: Sequence[float],
    direction: int = None,
    tol: float = 1e-10,
    normalization: str = "site",
    executor: str = "iterative",
    workers: int = 4,
) -> List[RatePoint]:
    if executor not in EXECUTORS:
        raise ValueError(f"Incorrect executor '{executor}'. Available options are: {EXECUTORS}")
    series = build_series(r, source, direction, normalization)
    tasks = [(series, float(x), tol) for x in x_grid]
    if executor == "futures":
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_rate_point, tasks))
    return [_rate_point(task) for task in tasks]


def rate_frame(points: Sequence[RatePoint]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "x": [p.x for p in points],
            "I": [p.I for p in points],
            "eta": [p.eta for p in points],
            "capped": [p.capped for p in points],
        }
    )


def legendre_dual(points: Sequence[RatePoint], beta: float) -> float:
    """sup_x (beta x - I(x)) over the finite points of a rate curve"""
    finite = [p for p in points if math.isfinite(p.I)]
    if not finite:
        raise ValueError("no finite rate values to take the supremum over")
    return float(np.max([beta * p.x - p.I for p in finite]))
