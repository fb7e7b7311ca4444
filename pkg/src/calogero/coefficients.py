"""Expansion-coefficient tables for the many-body correlation factor.

Closed forms are available for two and three particles at any integer
coupling, and for any particle number at unit coupling through the
clique-counting generator.  Tables come in two representations: amplitudes
of products of two-body polynomials, and amplitudes of Laurent monomials in
the inverse pair variables.  Conversion between the two is exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .combinatorics import MAX_PARTICLES, pair_indices, pair_poly_coefficients

PRODUCT_OF_F = "ProductOfF"
LAURENT_MONOMIAL = "LaurentMonomial"

#: table provenance labels used in serialized output
STATUS_THEOREM = "theorem"
STATUS_CONJECTURE = "conjecture"
STATUS_ORACLE = "oracle"


class ConjectureViolation(ArithmeticError):
    """A conjectural coefficient came out non-integer or non-positive."""


def multi_indices(n: int, ell: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors in {0..ell}^(n(n-1)/2), lexicographic, zero first."""
    n_pairs = len(pair_indices(n)) if n >= 2 else 0
    return tuple(product(range(ell + 1), repeat=n_pairs))


@dataclass
class CoefficientTable:
    """Map from pair-exponent multi-indices to exact rational amplitudes.

    Multi-index entries follow the canonical pair order (0,1),(0,2),...,(n-2,n-1).
    Zero amplitudes are omitted.
    """

    n: int
    ell: int
    representation: str
    terms: dict[tuple[int, ...], Fraction] = field(default_factory=dict)
    status: str = STATUS_THEOREM

    def __post_init__(self) -> None:
        if self.representation not in (PRODUCT_OF_F, LAURENT_MONOMIAL):
            raise ValueError(f"unknown representation {self.representation!r}")
        n_pairs = len(pair_indices(self.n)) if self.n >= 2 else 0
        for m, value in self.terms.items():
            if len(m) != n_pairs:
                raise ValueError(f"multi-index {m} has wrong length for n={self.n}")
            if any(not 0 <= e <= self.ell for e in m):
                raise ValueError(f"multi-index {m} outside 0..ell={self.ell}")
            if not isinstance(value, Fraction):
                self.terms[m] = Fraction(value)

    @property
    def zero_index(self) -> tuple[int, ...]:
        n_pairs = len(pair_indices(self.n)) if self.n >= 2 else 0
        return (0,) * n_pairs

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items())

    def to_json_dict(self) -> dict:
        return {
            "N": self.n,
            "ell": self.ell,
            "representation": self.representation,
            "status": self.status,
            "terms": [
                {"m": list(m), "value": f"{v.numerator}/{v.denominator}"}
                for m, v in self.sorted_terms()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1)

    @classmethod
    def from_json_dict(cls, data: dict) -> "CoefficientTable":
        terms = {
            tuple(entry["m"]): Fraction(entry["value"]) for entry in data["terms"]
        }
        return cls(
            n=data["N"],
            ell=data["ell"],
            representation=data["representation"],
            terms=terms,
            status=data.get("status", STATUS_ORACLE),
        )

    @classmethod
    def loads(cls, text: str) -> "CoefficientTable":
        return cls.from_json_dict(json.loads(text))


def trivial_table(n: int, representation: str = PRODUCT_OF_F) -> CoefficientTable:
    """The coupling-free table: a single unit amplitude at the zero index."""
    n_pairs = len(pair_indices(n)) if n >= 2 else 0
    return CoefficientTable(
        n=n,
        ell=0,
        representation=representation,
        terms={(0,) * n_pairs: Fraction(1)},
        status=STATUS_THEOREM,
    )


def c2_closed(a: int, ell: int) -> Fraction:
    """Laurent amplitude for the two-body factor: (ell+a)!/((ell-a)! a!)."""
    if not 0 <= a <= ell:
        raise ValueError(f"exponent a must lie in 0..ell={ell}, got a={a}")
    return Fraction(math.factorial(ell + a), math.factorial(ell - a) * math.factorial(a))


def c3_closed(a: int, b: int, c: int, ell: int) -> Fraction:
    """Three-body Laurent amplitude in closed form."""
    for v in (a, b, c):
        if not 0 <= v <= ell:
            raise ValueError(f"exponents must lie in 0..ell={ell}, got {(a, b, c)}")
    ksum = Fraction(0)
    for k in range(min(a, b, c) + 1):
        num = (
            math.factorial(ell - k)
            * math.factorial(a)
            * math.factorial(b)
            * math.factorial(c)
        )
        den = (
            math.factorial(ell + k)
            * math.factorial(k)
            * math.factorial(a - k)
            * math.factorial(b - k)
            * math.factorial(c - k)
        )
        ksum += Fraction(num, den)
    return c2_closed(a, ell) * c2_closed(b, ell) * c2_closed(c, ell) * ksum


def c2_table(ell: int) -> CoefficientTable:
    """Two-body product table: the order-0 polynomial with unit amplitude."""
    if ell < 0:
        raise ValueError(f"coupling must be nonnegative, got ell={ell}")
    return CoefficientTable(
        n=2,
        ell=ell,
        representation=PRODUCT_OF_F,
        terms={(0,): Fraction(1)},
        status=STATUS_THEOREM,
    )


def c3_table(ell: int) -> CoefficientTable:
    """Three-body product table: diagonal amplitudes (ell-k)!/((ell+k)! k!)."""
    if ell < 0:
        raise ValueError(f"coupling must be nonnegative, got ell={ell}")
    terms = {
        (k, k, k): Fraction(
            math.factorial(ell - k), math.factorial(ell + k) * math.factorial(k)
        )
        for k in range(ell + 1)
    }
    return CoefficientTable(
        n=3, ell=ell, representation=PRODUCT_OF_F, terms=terms, status=STATUS_THEOREM
    )


def laurent_table(n: int, ell: int) -> CoefficientTable:
    """Closed-form Laurent tables for n <= 3 at any integer coupling."""
    if ell == 0:
        return trivial_table(n, LAURENT_MONOMIAL)
    if n == 1:
        return trivial_table(1, LAURENT_MONOMIAL)
    if n == 2:
        terms = {(a,): c2_closed(a, ell) for a in range(ell + 1)}
    elif n == 3:
        terms = {
            m: c3_closed(*m, ell) for m in product(range(ell + 1), repeat=3)
        }
    else:
        raise ValueError(f"no closed-form Laurent table for n={n}; use the oracle")
    return CoefficientTable(
        n=n, ell=ell, representation=LAURENT_MONOMIAL, terms=terms, status=STATUS_THEOREM
    )


def clique_count(n_nodes: int, edges: frozenset | set, size: int) -> int:
    """Number of fully connected size-subsets of the nodes 0..n_nodes-1."""
    if size < 2:
        raise ValueError(f"clique size must be >= 2, got {size}")
    edge_set = {(min(i, j), max(i, j)) for i, j in edges}
    count = 0
    for nodes in combinations(range(n_nodes), size):
        if all(pair in edge_set for pair in combinations(nodes, 2)):
            count += 1
    return count


@lru_cache(maxsize=None)
def f_sequence(n: int) -> Fraction:
    """Rational clique weights f_2, f_3, ... fixed by prod f_m^C(n,m) = prod m!."""
    if n < 2:
        raise ValueError(f"clique weights start at n=2, got n={n}")
    target = Fraction(math.prod(math.factorial(m) for m in range(2, n + 1)))
    lower = Fraction(1)
    for m in range(2, n):
        lower *= f_sequence(m) ** math.comb(n, m)
    return target / lower


def ell1_conjecture_table(n: int) -> CoefficientTable:
    """Unit-coupling Laurent table from clique counts of the pair graph.

    Every amplitude is the product of clique weights f_m raised to the number
    of size-m cliques of the graph whose edges are the unit-exponent pairs.
    Values must come out positive integers; anything else is surfaced as a
    ConjectureViolation rather than silently kept.
    """
    if not 2 <= n <= MAX_PARTICLES:
        raise ValueError(f"conjecture table supports 2 <= n <= {MAX_PARTICLES}")
    pairs = pair_indices(n)
    weights = {m: f_sequence(m) for m in range(2, n + 1)}
    terms: dict[tuple[int, ...], Fraction] = {}
    for m in product((0, 1), repeat=len(pairs)):
        edges = {pair for pair, e in zip(pairs, m) if e}
        value = Fraction(1)
        for size in range(2, n + 1):
            q = clique_count(n, edges, size)
            if q:
                value *= weights[size] ** q
        if value.denominator != 1 or value <= 0:
            raise ConjectureViolation(
                f"amplitude {value} at m={m} is not a positive integer"
            )
        terms[m] = value
    return CoefficientTable(
        n=n, ell=1, representation=LAURENT_MONOMIAL, terms=terms, status=STATUS_CONJECTURE
    )


def product_to_laurent(table: CoefficientTable) -> CoefficientTable:
    """Expand a product-representation table into Laurent monomials, exactly."""
    if table.representation != PRODUCT_OF_F:
        raise ValueError("expected a product-representation table")
    ell = table.ell
    out: dict[tuple[int, ...], Fraction] = {}
    for kvec, coeff in table.terms.items():
        ranges = [range(k, ell + 1) for k in kvec]
        for avec in product(*ranges):
            contrib = coeff
            for k, a in zip(kvec, avec):
                contrib *= pair_poly_coefficients(ell, k)[a - k]
            out[avec] = out.get(avec, Fraction(0)) + contrib
    out = {m: v for m, v in out.items() if v != 0}
    return CoefficientTable(
        n=table.n,
        ell=ell,
        representation=LAURENT_MONOMIAL,
        terms=out,
        status=table.status,
    )


def default_table(n: int, ell: int) -> CoefficientTable:
    """Best available table for (n, ell): closed forms, then the conjecture."""
    if n < 1:
        raise ValueError(f"need at least one particle, got n={n}")
    if ell < 0:
        raise ValueError(f"coupling must be nonnegative, got ell={ell}")
    if n == 1 or ell == 0:
        table = trivial_table(n)
        return CoefficientTable(
            n=n, ell=ell, representation=PRODUCT_OF_F, terms=dict(table.terms),
            status=STATUS_THEOREM,
        )
    if n == 2:
        return c2_table(ell)
    if n == 3:
        return c3_table(ell)
    if ell == 1 and n <= MAX_PARTICLES:
        return ell1_conjecture_table(n)
    raise ValueError(
        f"no closed-form coefficient table for n={n}, ell={ell}; "
        "solve one with calogero.oracle.solve_coefficients"
    )
