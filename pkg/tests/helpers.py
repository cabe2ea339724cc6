"""Cached constructions and independent oracles shared by the tests."""

from functools import lru_cache
from fractions import Fraction
import math

import numpy as np

from pseudoboson.fock import build_bi_basis, metric
from pseudoboson.ladder import alternate_family, build_ladder_pair, standard_family

S_SET = (0.0, 0.5, -0.5, 0.9, -0.9)
S_MODERATE = (0.0, 0.5, -0.5)


@lru_cache(maxsize=None)
def pair_for(s, dim=64, family="standard"):
    coeffs = standard_family(s) if family == "standard" else alternate_family(s)
    return build_ladder_pair(coeffs, dim)


@lru_cache(maxsize=None)
def basis_for(s, n_max, family="standard", dim=64):
    pair = pair_for(s, dim, family)
    while n_max > pair.dim // 2 - 2:
        pair = pair_for(s, 2 * pair.dim, family)
    return build_bi_basis(pair, n_max)


@lru_cache(maxsize=None)
def metric_for(s, n_max, family="standard"):
    return metric(basis_for(s, n_max, family))


def hermite_integer_coeffs(n):
    """Physicists' Hermite coefficients from the explicit sum, in exact integers."""
    c = [0] * (n + 1)
    for m in range(n // 2 + 1):
        c[n - 2 * m] = (-1) ** m * math.factorial(n) * 2 ** (n - 2 * m) // (
            math.factorial(m) * math.factorial(n - 2 * m)
        )
    return c


def rational_poly(family, n, s):
    """Exact recurrence in rational arithmetic (``s`` given as a Fraction)."""
    s = Fraction(s)
    if family == "P":
        a, c = 2 / (1 - s), 2 * (s - s * s - 1) / (1 - s)
    else:
        d = 1 + s * s - s
        a, c = 2 / d, 2 * (s - 1) / d
    prev, cur = [Fraction(0)], [Fraction(1)]
    for k in range(1, n + 1):
        nxt = [Fraction(0)] * (k + 1)
        for i, v in enumerate(cur):
            nxt[i + 1] += a * v
        if k >= 2:
            for i, v in enumerate(prev):
                nxt[i] += (k - 1) * c * v
        prev, cur = cur, nxt
    return cur


def hermite_function_oracle(k, x):
    """``h_k`` from the explicit Hermite sum (independent of the package recurrence)."""
    coeffs = hermite_integer_coeffs(k)
    poly = np.polynomial.polynomial.polyval(x, [float(c) for c in coeffs])
    return poly * np.exp(-x * x / 2) / math.sqrt(2.0**k * math.factorial(k) * math.sqrt(math.pi))


def gaussian_integral(a, b=0.0):
    """``∫ exp(-a x^2 + b x) dx`` for ``Re a > 0`` (complex ``b`` allowed)."""
    return np.sqrt(np.pi / a) * np.exp(b * b / (4 * a))
