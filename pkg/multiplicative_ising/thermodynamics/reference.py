"""
Closed forms for a single generator p = (p_1, ..., p_d), P = p_1 ... p_d,
evaluated with a numerical eigendecomposition. They anchor the series code in
the tests and in ``verify``.
"""
import math
import numpy as np


def _eigen(beta: float, h: float):
    M = np.array(
        [[np.exp(beta + h), np.exp(-beta)], [np.exp(-beta), np.exp(beta - h)]]
    )
    values, vectors = np.linalg.eigh(M)
    v = np.array([np.exp(h / 2), np.exp(-h / 2)])
    overlap = float(v @ vectors[:, 1]) ** 2
    return values[1], values[0], overlap


def product_closed_form(r: float, beta: float, P: int, K: int = 100) -> float:
    """
    F = (2P-1)/(2P) log(r(1-r)) + (P-1)/P log|v.e_+|^2 + log Lambda_+
        + sum_{l<=K} (P-1)^2/P^(l+1) log(1 + (2cosh h/|v.e_+|^2 - 1)(Lambda_-/Lambda_+)^l)
    """
    h = 0.5 * math.log(r / (1 - r))
    lambda_plus, lambda_minus, overlap = _eigen(beta, h)
    amplitude = 2 * math.cosh(h) / overlap - 1
    ratio = lambda_minus / lambda_plus
    series = math.fsum(
        (P - 1) ** 2 / P ** (ell + 1) * math.log1p(amplitude * ratio**ell)
        for ell in range(1, K + 1)
    )
    return (
        (2 * P - 1) / (2 * P) * math.log(r * (1 - r))
        + (P - 1) / P * math.log(overlap)
        + math.log(lambda_plus)
        + series
    )


def doubling_closed_form(r: float, beta: float, K: int = 100) -> float:
    """the doubling chain sigma_i sigma_2i"""
    return product_closed_form(r, beta, 2, K)
