"""Shared combinatorial and exact-arithmetic primitives.

Permutations carry their parity sign, factorial ratios are formed in exact
integer arithmetic, and the integer coefficients of the two-body correlation
polynomials are tabulated once per (coupling, order) pair.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from itertools import permutations as _iter_permutations

# Hard cap on the particle number for permutation sums: 8! = 40320 terms per
# evaluation point is the desk-scale budget.
MAX_PARTICLES = 8


def pair_indices(n: int) -> tuple[tuple[int, int], ...]:
    """All ordered pairs (i, j), 0 <= i < j < n, in lexicographic order."""
    if n < 1:
        raise ValueError(f"need at least one particle, got n={n}")
    return tuple(combinations(range(n), 2))


def permutation_sign(sigma: tuple[int, ...]) -> int:
    """Parity (+1/-1) of a permutation given as the tuple of images of 0..n-1."""
    seen = [False] * len(sigma)
    sign = 1
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def signed_permutations(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All n! permutations of 0..n-1 with parity signs, lexicographic order."""
    if not 1 <= n <= MAX_PARTICLES:
        raise ValueError(
            f"permutation sums are capped at n <= {MAX_PARTICLES}, got n={n}"
        )
    return tuple(
        (sigma, permutation_sign(sigma)) for sigma in _iter_permutations(range(n))
    )


def factorial_ratio(a: int, b: int) -> Fraction:
    """Exact a!/b! for nonnegative integers a, b."""
    if a < 0 or b < 0:
        raise ValueError(f"factorial_ratio needs nonnegative arguments, got {a}, {b}")
    return Fraction(math.factorial(a), math.factorial(b))


@lru_cache(maxsize=None)
def pair_poly_coefficients(ell: int, k: int) -> tuple[int, ...]:
    """Integer coefficients of the order-k two-body polynomial at coupling ell.

    Entry a-k is the coefficient of X**(-a) for a = k..ell, i.e.
    (ell+a)! / ((ell-a)! (a-k)!).  The ratio is always an integer; factorials
    are combined exactly before conversion.
    """
    if ell < 0:
        raise ValueError(f"coupling must be a nonnegative integer, got ell={ell}")
    if not 0 <= k <= ell:
        raise ValueError(f"order k must lie in 0..ell={ell}, got k={k}")
    coeffs = []
    for a in range(k, ell + 1):
        c = factorial_ratio(ell + a, ell - a) / math.factorial(a - k)
        if c.denominator != 1:
            raise AssertionError(f"non-integer pair coefficient at ell={ell}, k={k}")
        coeffs.append(int(c))
    return tuple(coeffs)
