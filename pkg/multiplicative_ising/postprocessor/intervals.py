import numpy as np
from scipy import stats


def _one_sigma() -> float:
    return stats.norm.cdf(1) - stats.norm.cdf(-1)


def clopper_pearson_interval(num, denom, coverage=None):
    """
    Clopper-Pearson central interval for a binomial proportion num/denom

    Parameters:
    -----------
        num:
            number of successes (scalar or array)
        denom:
            number of trials
        coverage:
            central coverage, one standard deviation (~0.68) by default

    Returns:
    --------
        array of shape (2, ...) with the lower and upper limits
    """
    coverage = _one_sigma() if coverage is None else coverage
    num, denom = np.asarray(num, dtype=float), np.asarray(denom, dtype=float)
    if np.any(num > denom):
        raise ValueError(
            "Found numerator larger than denominator while calculating a binomial interval"
        )
    lower = stats.beta.ppf((1 - coverage) / 2, num, denom - num + 1)
    upper = stats.beta.ppf((1 + coverage) / 2, num + 1, denom - num)
    # beta.ppf is nan on the boundaries
    lower = np.where(num == 0, 0.0, lower)
    upper = np.where(num == denom, 1.0, upper)
    return np.stack((lower, upper))


def binomial_band(p, n, nsigma: float = 3.0):
    """p -+ nsigma sqrt(p(1-p)/n)"""
    p = np.asarray(p, dtype=float)
    half = nsigma * np.sqrt(p * (1 - p) / n)
    return np.stack((p - half, p + half))
