import math
from fractions import Fraction
from itertools import permutations as iter_permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from calogero.combinatorics import (
    MAX_PARTICLES,
    factorial_ratio,
    pair_indices,
    pair_poly_coefficients,
    permutation_sign,
    signed_permutations,
)


def brute_force_sign(sigma):
    """Parity by counting inversions, independent of the cycle route."""
    inversions = sum(
        1
        for i in range(len(sigma))
        for j in range(i + 1, len(sigma))
        if sigma[i] > sigma[j]
    )
    return -1 if inversions % 2 else 1


def test_pair_indices_count_and_order():
    assert pair_indices(2) == ((0, 1),)
    assert pair_indices(4) == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    for n in range(1, 9):
        assert len(pair_indices(n)) == n * (n - 1) // 2


def test_single_particle_permutation():
    assert signed_permutations(1) == (((0,), 1),)


def test_two_particle_permutations():
    assert signed_permutations(2) == (((0, 1), 1), ((1, 0), -1))


def test_three_particle_permutations_brute_force():
    perms = signed_permutations(3)
    assert len(perms) == 6
    assert [p for p, _ in perms] == sorted(iter_permutations(range(3)))
    for sigma, sign in perms:
        assert sign == brute_force_sign(sigma)
    signs = [s for _, s in perms]
    assert signs.count(1) == 3 and signs.count(-1) == 3


@pytest.mark.parametrize("n", range(2, MAX_PARTICLES + 1))
def test_sign_balance(n):
    signs = [s for _, s in signed_permutations(n)]
    assert signs.count(1) == signs.count(-1) == math.factorial(n) // 2


@given(st.integers(2, 6), st.data())
@settings(max_examples=60, deadline=None)
def test_sign_multiplicative(n, data):
    perms = [p for p, _ in signed_permutations(n)]
    sigma = data.draw(st.sampled_from(perms))
    tau = data.draw(st.sampled_from(perms))
    composed = tuple(sigma[tau[i]] for i in range(n))
    assert permutation_sign(composed) == permutation_sign(sigma) * permutation_sign(tau)


@pytest.mark.parametrize("bad", [0, -1, MAX_PARTICLES + 1])
def test_permutation_guard(bad):
    with pytest.raises(ValueError):
        signed_permutations(bad)


def test_factorial_ratio_examples():
    assert factorial_ratio(3, 1) == 6
    assert factorial_ratio(0, 0) == 1
    assert factorial_ratio(10, 7) == 8 * 9 * 10
    assert factorial_ratio(2, 5) == Fraction(1, 60)


def test_factorial_ratio_rejects_negatives():
    with pytest.raises(ValueError):
        factorial_ratio(-1, 2)
    with pytest.raises(ValueError):
        factorial_ratio(2, -1)


@given(
    st.fractions(min_value=Fraction(-100), max_value=Fraction(100)).filter(bool),
    st.fractions(min_value=Fraction(-100), max_value=Fraction(100)).filter(bool),
)
@settings(max_examples=80, deadline=None)
def test_rational_arithmetic_is_exact(a, b):
    assert (a / b) * (b / a) == 1


def test_pair_poly_coefficients_known_values():
    # coupling 1: 1 + 2/X and 2/X
    assert pair_poly_coefficients(1, 0) == (1, 2)
    assert pair_poly_coefficients(1, 1) == (2,)
    # coupling 2: 1 + 6/X + 12/X^2, 6/X + 24/X^2, 24/X^2
    assert pair_poly_coefficients(2, 0) == (1, 6, 12)
    assert pair_poly_coefficients(2, 1) == (6, 24)
    assert pair_poly_coefficients(2, 2) == (24,)


@pytest.mark.parametrize("ell", range(0, 11))
def test_pair_poly_coefficients_integer(ell):
    for k in range(ell + 1):
        coeffs = pair_poly_coefficients(ell, k)
        assert len(coeffs) == ell - k + 1
        assert all(isinstance(c, int) and c > 0 for c in coeffs)
        # leading decay term has weight (ell+k)!/(ell-k)!
        assert coeffs[0] == math.factorial(ell + k) // math.factorial(ell - k)


def test_pair_poly_coefficients_guards():
    with pytest.raises(ValueError):
        pair_poly_coefficients(2, 3)
    with pytest.raises(ValueError):
        pair_poly_coefficients(2, -1)
    with pytest.raises(ValueError):
        pair_poly_coefficients(-1, 0)
