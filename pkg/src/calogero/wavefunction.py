"""Scattering eigenfunctions of the trap-free inverse-square model.

The central object is the signed permutation sum over correlation-dressed
plane waves.  All functions broadcast over leading axes: positions and
momenta are arrays whose last axis indexes the particles, and scalars come
back as plain complex numbers.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .coefficients import (
    LAURENT_MONOMIAL,
    PRODUCT_OF_F,
    CoefficientTable,
    default_table,
)
from .combinatorics import pair_indices, pair_poly_coefficients, signed_permutations

# Below this pair-variable magnitude the Laurent terms individually diverge
# while the full sum stays finite, so cancellation eats double precision.
MIN_SEPARATION = 1e-8


class AccuracyWarning(UserWarning):
    """Evaluation close to a coincidence hyperplane; digits are being lost."""


class SingularityError(ArithmeticError):
    """Exact coincidence of particles or momenta: a pair variable vanished."""


@dataclass(frozen=True)
class ModelParams:
    """Particle number, integer coupling and trap frequency."""

    n: int
    ell: int
    omega: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one particle, got n={self.n}")
        if not isinstance(self.ell, int) or self.ell < 0:
            raise ValueError(f"coupling must be a nonnegative integer, got {self.ell}")
        if self.omega < 0:
            raise ValueError(f"trap frequency must be >= 0, got {self.omega}")

    @property
    def interaction_strength(self) -> float:
        return float(self.ell * (self.ell + 1))


def _points(x, n: int) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1:] != (n,):
        raise ValueError(f"expected last axis of length {n}, got shape {arr.shape}")
    return arr


def _maybe_scalar(value):
    return complex(value) if np.ndim(value) == 0 else value


def pair_variable(x, p, i: int, j: int):
    """The pair variable -i (p_i - p_j)(x_i - x_j); imaginary for real input."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    value = -1j * (p[..., i] - p[..., j]) * (x[..., i] - x[..., j])
    return _maybe_scalar(value)


def _pair_variables(x: np.ndarray, p: np.ndarray, n: int) -> np.ndarray:
    """All pair variables stacked on a trailing axis in canonical pair order."""
    pairs = pair_indices(n)
    dx = np.stack([x[..., i] - x[..., j] for i, j in pairs], axis=-1)
    dp = np.stack([p[..., i] - p[..., j] for i, j in pairs], axis=-1)
    return -1j * dp * dx


def f_poly(k: int, X, ell: int):
    """Order-k two-body Laurent polynomial evaluated at X (X != 0)."""
    coeffs = pair_poly_coefficients(ell, k)
    X = np.asarray(X, dtype=complex)
    if np.any(X == 0):
        raise SingularityError("two-body polynomial evaluated at X = 0")
    w = 1.0 / X
    acc = np.full_like(w, float(coeffs[-1]))
    for c in reversed(coeffs[:-1]):
        acc = acc * w + c
    return _maybe_scalar(acc * w**k)


def f_descendant_check(k: int, X, ell: int):
    """Order-k polynomial via term-wise s-differentiation of the base one.

    Cross-check route: differentiate F_0(X/s) k times at s=1, term by term,
    with exact integer weights.  Must agree with f_poly identically.
    """
    if not 0 <= k <= ell:
        raise ValueError(f"order k must lie in 0..ell={ell}, got k={k}")
    base = pair_poly_coefficients(ell, 0)
    X = np.asarray(X, dtype=complex)
    if np.any(X == 0):
        raise SingularityError("two-body polynomial evaluated at X = 0")
    w = 1.0 / X
    acc = np.zeros_like(w)
    for a in range(k, ell + 1):
        acc = acc + base[a] * math.perm(a, k) * w**a
    return _maybe_scalar(acc)


def _f_values(W: np.ndarray, ell: int) -> list[np.ndarray]:
    """Evaluate every order k = 0..ell at the inverse pair variables W."""
    values = []
    for k in range(ell + 1):
        coeffs = pair_poly_coefficients(ell, k)
        acc = np.full_like(W, float(coeffs[-1]))
        for c in reversed(coeffs[:-1]):
            acc = acc * W + c
        values.append(acc * W**k)
    return values


def script_f(x, p, table: CoefficientTable):
    """Correlation factor from a coefficient table, either representation."""
    n = table.n
    if n == 1:
        shape = np.broadcast_shapes(np.shape(x)[:-1], np.shape(p)[:-1])
        return _maybe_scalar(np.ones(shape, dtype=complex))
    x = _points(x, n)
    p = _points(p, n)
    X = _pair_variables(x, p, n)
    if np.any(X == 0):
        raise SingularityError("coincident particles or momenta in pair variables")
    W = 1.0 / X
    ell = table.ell
    out = np.zeros(W.shape[:-1], dtype=complex)
    if table.representation == PRODUCT_OF_F:
        fvals = _f_values(W, ell)
        for kvec, coeff in table.terms.items():
            term = np.full(W.shape[:-1], float(coeff), dtype=complex)
            for slot, k in enumerate(kvec):
                term = term * fvals[k][..., slot]
            out += term
    elif table.representation == LAURENT_MONOMIAL:
        powers = [np.ones_like(W)]
        for _ in range(ell):
            powers.append(powers[-1] * W)
        for m, coeff in table.terms.items():
            term = np.full(W.shape[:-1], float(coeff), dtype=complex)
            for slot, e in enumerate(m):
                if e:
                    term = term * powers[e][..., slot]
            out += term
    else:  # pragma: no cover - guarded by CoefficientTable
        raise ValueError(f"unknown representation {table.representation!r}")
    return _maybe_scalar(out)


def _check_separation(x: np.ndarray, p: np.ndarray, n: int) -> None:
    if n < 2:
        return
    pairs = pair_indices(n)
    min_dx = min(float(np.min(np.abs(x[..., i] - x[..., j]))) for i, j in pairs)
    min_dp = min(float(np.min(np.abs(p[..., i] - p[..., j]))) for i, j in pairs)
    if min_dx * min_dp < MIN_SEPARATION:
        warnings.warn(
            f"pair separation product {min_dx * min_dp:.3e} below "
            f"{MIN_SEPARATION:.0e}; cancellation will cost accuracy",
            AccuracyWarning,
            stacklevel=3,
        )


def psi(x, p, params: ModelParams, table: CoefficientTable | None = None):
    """Scattering eigenfunction: signed permutation sum of dressed plane waves.

    Normalized so that the correlation factor tends to one when all particles
    separate, leaving the bare (anti)symmetrized plane-wave sum.
    """
    n = params.n
    x = _points(x, n)
    p = _points(p, n)
    if table is None:
        table = default_table(n, params.ell)
    _check_separation(x, p, n)
    parity_power = params.ell + 1
    total = np.zeros(np.broadcast_shapes(x.shape[:-1], p.shape[:-1]), dtype=complex)
    for sigma, sign in signed_permutations(n):
        xs = x[..., list(sigma)]
        phase = np.exp(1j * np.sum(p * xs, axis=-1))
        factor = script_f(xs, p, table) if n >= 2 else 1.0
        total = total + (sign**parity_power) * factor * phase
    total = total / math.factorial(n)
    return _maybe_scalar(total)


def spherical_zjl(ell: int, z):
    """z * j_ell(z) for integer ell: closed trigonometric form, series near 0.

    The trigonometric form is exact but cancels badly for |z| well below ell,
    so a truncated power series takes over there; the two branches agree to
    machine precision at the switch radius.
    """
    if ell < 0:
        raise ValueError(f"order must be nonnegative, got ell={ell}")
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty_like(z)

    switch = 0.5 + 0.6 * ell
    small = np.abs(z) < switch
    if np.any(small):
        zs = z[small]
        dfact = math.factorial(2 * ell + 1) // (2**ell * math.factorial(ell))
        term = zs ** (ell + 1) / dfact
        acc = term.copy()
        z2 = zs * zs
        for m in range(1, 40):
            term = term * (-z2 / 2.0) / (m * (2 * ell + 2 * m + 1))
            acc += term
            if np.all(np.abs(term) <= 1e-18 * (np.abs(acc) + 1e-300)):
                break
        out[small] = acc
    if np.any(~small):
        zb = z[~small]
        shifted = zb - ell * math.pi / 2.0
        sin_s, cos_s = np.sin(shifted), np.cos(shifted)
        a = [
            math.factorial(ell + k) // (2**k * math.factorial(k) * math.factorial(ell - k))
            for k in range(ell + 1)
        ]
        even = np.zeros_like(zb)
        for j in range(ell // 2, -1, -1):
            even = even / (zb * zb) + (-1) ** j * a[2 * j]
        odd = np.zeros_like(zb)
        if ell >= 1:
            for j in range((ell - 1) // 2, -1, -1):
                odd = odd / (zb * zb) + (-1) ** j * a[2 * j + 1]
            odd = odd / zb
        out[~small] = sin_s * even + cos_s * odd
    return float(out[0]) if scalar else out


def psi2_bessel(x, p, ell: int):
    """Two-body eigenfunction in spherical-Bessel closed form.

    Sign convention: the relative factor is (+i)**(ell+1) z j_ell(z) with
    z = (p1-p2)(x1-x2)/2, which is what the plane-wave normalization of the
    permutation-sum route fixes.  Returns 0 at coincidence (z = 0).
    """
    x = _points(x, 2)
    p = _points(p, 2)
    total_p = p[..., 0] + p[..., 1]
    center = (x[..., 0] + x[..., 1]) / 2.0
    z = (p[..., 0] - p[..., 1]) * (x[..., 0] - x[..., 1]) / 2.0
    value = np.exp(1j * total_p * center) * (1j) ** (ell + 1) * spherical_zjl(ell, z)
    return _maybe_scalar(value)


def vandermonde(x):
    """Product of all ordered coordinate differences."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    out = np.ones(x.shape[:-1])
    for i, j in pair_indices(n):
        out = out * (x[..., i] - x[..., j])
    return float(out) if np.ndim(out) == 0 else out
