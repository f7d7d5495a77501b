"""Exact arithmetic on sums of N-th roots of unity.

An element sum_k c_k * zeta^k of Z[zeta_N] is stored as an integer vector
``c`` of length N. Equality to zero is decided by reducing the polynomial
sum_k c_k x^k modulo the N-th cyclotomic polynomial, which is the minimal
polynomial of zeta_N over Q.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def _poly_divexact(num, den):
    # integer long division, den monic, remainder must vanish
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1]
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


def reduce(coeffs, n: int) -> np.ndarray:
    """Remainder of sum_k coeffs[k] x^k modulo Phi_n (length = deg Phi_n)."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rem = [int(c) for c in coeffs]
    for i in range(len(rem) - 1, deg - 1, -1):
        q = rem[i]
        if q:
            base = i - deg
            for j, p in enumerate(phi):
                rem[base + j] -= q * p
    rem = rem[:deg] + [0] * max(0, deg - len(rem))
    return np.array(rem, dtype=object)


def is_zero(coeffs, n: int) -> bool:
    return not any(reduce(coeffs, n))


def equals_integer(coeffs, n: int, value: int) -> bool:
    """True iff the cyclotomic integer equals the rational integer ``value``."""
    red = reduce(coeffs, n)
    if red[0] != value:
        return False
    return not any(red[1:])


def exponent_counts(exponents, n: int) -> np.ndarray:
    """Coefficient vector of sum_{e in exponents} zeta_n^e."""
    return np.bincount(np.asarray(exponents, dtype=np.int64) % n, minlength=n).astype(np.int64)


def abs_squared(coeffs) -> np.ndarray:
    """Coefficient vector of |z|^2 = z * conj(z), as an element of Z[zeta_n].

    conj(zeta^k) = zeta^{-k}, so the product is the cyclic autocorrelation.
    """
    c = np.asarray(coeffs, dtype=np.int64)
    return np.array([int(np.dot(c, np.roll(c, d))) for d in range(len(c))], dtype=np.int64)
