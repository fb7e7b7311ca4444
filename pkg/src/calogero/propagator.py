"""Closed-form time-evolution kernels.

The single-oscillator kernel, its antisymmetrized product, the interacting
kernel through the scattering eigenfunction at an effective momentum, the
fully explicit double sum over permutations and Laurent monomials, and the
short-time free reference kernel.

All evaluators broadcast over leading axes; the particle index is the last
axis.  Validity is restricted to the first caustic window |sin(omega t)|
away from zero, with the trap-free limit handled by exact substitution of
the time scales rather than numerically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .coefficients import LAURENT_MONOMIAL, CoefficientTable, default_table, laurent_table
from .combinatorics import pair_indices, signed_permutations
from .wavefunction import ModelParams, _maybe_scalar, _points, psi

#: prefactor blowup dominates double precision below this |sin(omega t)|
CAUSTIC_EPS = 1e-9


class CausticError(ValueError):
    """Evaluation at (or too close to) a focusing time of the trap."""


@dataclass(frozen=True)
class KernelPoint:
    """Endpoint configurations and a propagation time."""

    x: tuple[float, ...]
    y: tuple[float, ...]
    t: float

    def validate(self, omega: float) -> None:
        if len(self.x) != len(self.y):
            raise ValueError("endpoint configurations must have equal length")
        _timescales(self.t, omega)


def _timescales(t: float, omega: float) -> tuple[float, float]:
    """(sin(wt)/w, w/tan(wt)) with the w->0 limits substituted exactly.

    The caustic guard acts on the reduced scale sin(wt)/w, which vanishes
    exactly where the prefactor blows up (t -> 0 included) and stays finite
    in the w -> 0 limit.
    """
    s = math.sin(omega * t) / omega if omega > 0 else t
    if abs(s) < CAUSTIC_EPS:
        raise CausticError(
            f"t={t} is a caustic (or zero) time for omega={omega}: |sin(wt)/w| < {CAUSTIC_EPS}"
        )
    return s, math.cos(omega * t) / s


def _root_prefactor(s: float, n: int) -> complex:
    """(2 pi i s)^(n/2) as the n-th power of the principal square root."""
    return cmath.sqrt(2j * math.pi * s) ** n


def mehler(x, y, t: float, omega: float):
    """Single harmonic-oscillator kernel; the free kernel in the w->0 limit."""
    s, c = _timescales(t, omega)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    phase = 0.5 * c * (x * x + y * y) - x * y / s
    value = np.exp(1j * phase) / _root_prefactor(s, 1)
    return _maybe_scalar(value)


def kernel(x, y, t: float, params: ModelParams, table: CoefficientTable | None = None):
    """Interacting kernel: prefactor times the eigenfunction at -w y / sin(wt)."""
    s, c = _timescales(t, params.omega)
    n = params.n
    x = _points(x, n)
    y = _points(y, n)
    sumsq = np.sum(x * x, axis=-1) + np.sum(y * y, axis=-1)
    pref = np.exp(1j * 0.5 * c * sumsq) / _root_prefactor(s, n)
    p_eff = -y / s
    return _maybe_scalar(pref * psi(x, p_eff, params, table))


def kernel_l0(x, y, t: float, n: int, omega: float):
    """Coupling-free kernel: antisymmetrized product of oscillator kernels."""
    x = _points(x, n)
    y = _points(y, n)
    total = 0
    for sigma, sign in signed_permutations(n):
        prod = mehler(x[..., sigma[0]], y[..., 0], t, omega)
        for i in range(1, n):
            prod = prod * mehler(x[..., sigma[i]], y[..., i], t, omega)
        total = total + sign * prod
    return _maybe_scalar(total / math.factorial(n))


def kernel_explicit(x, y, t: float, params: ModelParams, table: CoefficientTable | None = None):
    """Fully explicit kernel: permutation sum times the Laurent double sum.

    Each permutation contributes its product of oscillator kernels dressed by
    the monomials (-i sin(wt)/w / ((x_si - x_sj)(y_i - y_j)))^m with the exact
    integer amplitudes from the table.
    """
    n, ell = params.n, params.ell
    if table is None:
        table = laurent_table(n, ell) if n <= 3 else default_table(n, ell)
    if table.representation != LAURENT_MONOMIAL:
        raise ValueError("kernel_explicit needs a Laurent-monomial table")
    s, _ = _timescales(t, params.omega)
    x = _points(x, n)
    y = _points(y, n)
    pairs = pair_indices(n)
    g = -1j * s
    dy = [y[..., i] - y[..., j] for i, j in pairs]
    total = 0
    for sigma, sign in signed_permutations(n):
        prod = mehler(x[..., sigma[0]], y[..., 0], t, params.omega)
        for i in range(1, n):
            prod = prod * mehler(x[..., sigma[i]], y[..., i], t, params.omega)
        if pairs:
            base = [
                g / ((x[..., sigma[i]] - x[..., sigma[j]]) * dy[slot])
                for slot, (i, j) in enumerate(pairs)
            ]
            powers = [[np.ones_like(b) for b in base]]
            for _ in range(ell):
                powers.append([pw * b for pw, b in zip(powers[-1], base)])
            corr = 0
            for m, coeff in table.terms.items():
                term = float(coeff)
                for slot, e in enumerate(m):
                    if e:
                        term = term * powers[e][slot]
                corr = corr + term
        else:
            corr = 1.0
        total = total + (sign ** (ell + 1)) * prod * corr
    return _maybe_scalar(total / math.factorial(n))


def free_kernel(x, y, t: float, params: ModelParams):
    """Short-time reference: signed sum of free single-particle kernels."""
    if t == 0:
        raise ValueError("free kernel undefined at t=0")
    n, ell = params.n, params.ell
    x = _points(x, n)
    y = _points(y, n)
    pref = _root_prefactor(t, n)
    total = 0
    for sigma, sign in signed_permutations(n):
        diff = x[..., list(sigma)] - y
        total = total + (sign ** (ell + 1)) * np.exp(
            1j * np.sum(diff * diff, axis=-1) / (2.0 * t)
        )
    return _maybe_scalar(total / (math.factorial(n) * pref))


def kernel_at(point: KernelPoint, params: ModelParams, table: CoefficientTable | None = None):
    """Kernel evaluation from a KernelPoint record."""
    point.validate(params.omega)
    return kernel(point.x, point.y, point.t, params, table)


def kernel_relative(u, v, t: float, ell: int, omega: float):
    """Relative-coordinate factor of the two-body kernel.

    In rotated coordinates (sum and difference over sqrt(2)) the two-body
    kernel splits exactly into an oscillator kernel for the center of mass
    times this factor; `kernel_two_body_split` reassembles the product.
    """
    s, c = _timescales(t, omega)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    from .wavefunction import spherical_zjl

    z = -u * v / s
    value = (
        np.exp(1j * 0.5 * c * (u * u + v * v))
        / _root_prefactor(s, 1)
        * (1j) ** (ell + 1)
        * spherical_zjl(ell, z)
    )
    return _maybe_scalar(value)


def kernel_two_body_split(x, y, t: float, params: ModelParams):
    """Two-body kernel as center-of-mass oscillator times relative factor."""
    if params.n != 2:
        raise ValueError("the split form is two-body only")
    x = _points(x, 2)
    y = _points(y, 2)
    root2 = math.sqrt(2.0)
    xc = (x[..., 0] + x[..., 1]) / root2
    yc = (y[..., 0] + y[..., 1]) / root2
    xr = (x[..., 0] - x[..., 1]) / root2
    yr = (y[..., 0] - y[..., 1]) / root2
    value = mehler(xc, yc, t, params.omega) * kernel_relative(
        xr, yr, t, params.ell, params.omega
    )
    return _maybe_scalar(value)
