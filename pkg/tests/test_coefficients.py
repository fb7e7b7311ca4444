import json
import math
from fractions import Fraction
from itertools import product

import pytest

from calogero.coefficients import (
    LAURENT_MONOMIAL,
    PRODUCT_OF_F,
    CoefficientTable,
    c2_closed,
    c2_table,
    c3_closed,
    c3_table,
    clique_count,
    default_table,
    ell1_conjecture_table,
    f_sequence,
    laurent_table,
    product_to_laurent,
    trivial_table,
)
from calogero.combinatorics import pair_indices


def test_c2_closed_values():
    assert c2_closed(0, 1) == 1 and c2_closed(1, 1) == 2
    assert c2_closed(1, 2) == 6  # 3!/(1! 1!)
    for ell in range(6):
        assert c2_closed(0, ell) == 1
    with pytest.raises(ValueError):
        c2_closed(3, 2)


def test_c3_table_values():
    assert c3_table(0).terms == {(0, 0, 0): Fraction(1)}
    assert c3_table(1).terms == {(0, 0, 0): Fraction(1), (1, 1, 1): Fraction(1, 2)}
    assert c3_table(2).terms[(2, 2, 2)] == Fraction(1, 48)


def test_c3_closed_values():
    assert c3_closed(1, 1, 1, 1) == 12  # also 2! * 3!
    assert c3_closed(0, 0, 0, 5) == 1
    assert c3_closed(1, 0, 0, 1) == 2
    with pytest.raises(ValueError):
        c3_closed(2, 0, 0, 1)


def test_clique_counts():
    triangle = {(0, 1), (0, 2), (1, 2)}
    assert clique_count(3, triangle, 2) == 3
    assert clique_count(3, triangle, 3) == 1
    assert clique_count(4, set(), 2) == 0
    k4 = set(pair_indices(4))
    assert clique_count(4, k4, 2) == 6
    assert clique_count(4, k4, 3) == 4
    assert clique_count(4, k4, 4) == 1
    with pytest.raises(ValueError):
        clique_count(3, triangle, 1)


def test_f_sequence_reported_values():
    assert f_sequence(2) == 2
    assert f_sequence(3) == Fraction(3, 2)
    assert f_sequence(4) == Fraction(8, 9)
    assert f_sequence(5) == Fraction(135, 128)


@pytest.mark.parametrize("n", range(2, 9))
def test_f_sequence_defining_identity(n):
    # independent oracle: the product over binomial powers telescopes to
    # the factorial product, for every truncation level
    lhs = Fraction(1)
    for m in range(2, n + 1):
        lhs *= f_sequence(m) ** math.comb(n, m)
    rhs = Fraction(math.prod(math.factorial(m) for m in range(2, n + 1)))
    assert lhs == rhs


def test_conjecture_table_matches_closed_forms():
    t3 = ell1_conjecture_table(3)
    assert t3.terms[(1, 1, 1)] == 12 == c3_closed(1, 1, 1, 1)
    t2 = ell1_conjecture_table(2)
    assert t2.terms[(1,)] == 2 == c2_closed(1, 1)
    t4 = ell1_conjecture_table(4)
    assert t4.terms[(1,) * 6] == 288 == 2 * 6 * 24


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_conjecture_table_positive_integers(n):
    table = ell1_conjecture_table(n)
    assert len(table.terms) == 2 ** len(pair_indices(n))
    for value in table.terms.values():
        assert value.denominator == 1 and value >= 1


@pytest.mark.parametrize("n", [4, 5])
def test_conjecture_table_relabeling_invariance(n):
    table = ell1_conjecture_table(n)
    pairs = pair_indices(n)
    slot = {p: i for i, p in enumerate(pairs)}
    relabel = tuple(range(1, n)) + (0,)
    for m, value in table.terms.items():
        permuted = [0] * len(pairs)
        for (i, j), e in zip(pairs, m):
            a, b = relabel[i], relabel[j]
            permuted[slot[(min(a, b), max(a, b))]] = e
        assert table.terms[tuple(permuted)] == value


def test_cluster_factorization_of_tables():
    # no cross edges between node groups: the amplitude factorizes into the
    # per-group amplitudes
    t4 = ell1_conjecture_table(4)
    pairs4 = pair_indices(4)
    m = tuple(1 if p in {(0, 1), (2, 3)} else 0 for p in pairs4)
    assert t4.terms[m] == c2_closed(1, 1) * c2_closed(1, 1)
    t5 = ell1_conjecture_table(5)
    pairs5 = pair_indices(5)
    triangle_and_edge = {(0, 1), (0, 2), (1, 2), (3, 4)}
    m = tuple(1 if p in triangle_and_edge else 0 for p in pairs5)
    assert t5.terms[m] == c3_closed(1, 1, 1, 1) * c2_closed(1, 1)


def test_product_to_laurent_two_body():
    expanded = product_to_laurent(c2_table(1))
    assert expanded.terms == {(0,): Fraction(1), (1,): Fraction(2)}


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_product_to_laurent_reproduces_three_body_closed_form(ell):
    expanded = product_to_laurent(c3_table(ell))
    for m in product(range(ell + 1), repeat=3):
        assert expanded.terms.get(m, Fraction(0)) == c3_closed(*m, ell)


def test_product_to_laurent_trivial():
    expanded = product_to_laurent(trivial_table(3))
    assert expanded.terms == {(0, 0, 0): Fraction(1)}


def test_three_body_laurent_matches_conjecture_at_unit_coupling():
    assert laurent_table(3, 1).terms == ell1_conjecture_table(3).terms


@pytest.mark.parametrize("n,ell", [(2, 4), (3, 2), (3, 5)])
def test_laurent_tables_positive_integers(n, ell):
    for value in laurent_table(n, ell).terms.values():
        assert value.denominator == 1 and value >= 1


def test_serialization_roundtrip(tmp_path):
    table = c3_table(2)
    text = table.dumps()
    data = json.loads(text)
    assert data["representation"] == PRODUCT_OF_F
    assert data["status"] == "theorem"
    assert all("/" in entry["value"] for entry in data["terms"])
    again = CoefficientTable.loads(text)
    assert again == table
    assert again.dumps() == text  # deterministic bytes


def test_default_table_dispatch():
    assert default_table(1, 7).terms == {(): Fraction(1)}
    assert default_table(3, 0).terms == {(0, 0, 0): Fraction(1)}
    assert default_table(2, 5).representation == PRODUCT_OF_F
    assert default_table(4, 1).representation == LAURENT_MONOMIAL
    with pytest.raises(ValueError):
        default_table(4, 2)


def test_table_validation():
    with pytest.raises(ValueError):
        CoefficientTable(n=3, ell=1, representation="bogus")
    with pytest.raises(ValueError):
        CoefficientTable(
            n=3, ell=1, representation=PRODUCT_OF_F, terms={(1, 1): Fraction(1)}
        )
    with pytest.raises(ValueError):
        CoefficientTable(
            n=3, ell=1, representation=PRODUCT_OF_F, terms={(2, 0, 0): Fraction(1)}
        )
