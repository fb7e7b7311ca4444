"""Time evolution of wave packets by quadrature against the kernel.

The integral over the initial configuration space is discretized on a
tensor-product grid (midpoint or composite Gauss-Legendre).  Grid axes are
jittered off the coincidence hyperplanes by fractions of a cell so that no
node ever hits a singular pair variable.  A separable contraction fast path
covers the two-particle case, where full-field norms are affordable.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coefficients import CoefficientTable, laurent_table, trivial_table
from .combinatorics import signed_permutations
from .propagator import _timescales, kernel, kernel_l0, mehler
from .wavefunction import ModelParams, _maybe_scalar, _points

#: total tensor-grid budget (nodes), desk scale
MAX_GRID_POINTS = 10**7

GAUSS_PANEL = 5
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_PANEL)


class ConvergenceWarning(UserWarning):
    """Richardson comparison suggests the grid is too coarse."""


@dataclass(frozen=True)
class WavePacket:
    """Product of one-particle Gaussians, optionally exchange-(anti)symmetrized.

    Orbital i is a normalized Gaussian centered at centers[i] with spatial
    width widths[i] and phase momentum momenta[i].  With antisymmetrized=True
    the packet is the signed permutation sum of the product (fermionic
    sector); symmetrized=True takes the unsigned sum (bosonic sector).
    A custom packet supplies `sampler`, a callable on (..., n) points.
    """

    centers: tuple[float, ...]
    widths: tuple[float, ...]
    momenta: tuple[float, ...]
    antisymmetrized: bool = False
    symmetrized: bool = False
    kind: str = "gaussian-product"
    sampler: Callable | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("gaussian-product", "custom-samples"):
            raise ValueError(f"unknown packet kind {self.kind!r}")
        if self.kind == "custom-samples":
            if self.sampler is None:
                raise ValueError("custom packets need a sampler callable")
            return
        if not len(self.centers) == len(self.widths) == len(self.momenta):
            raise ValueError("centers, widths and momenta must have equal length")
        if any(w <= 0 for w in self.widths):
            raise ValueError("orbital widths must be positive")
        if self.antisymmetrized and self.symmetrized:
            raise ValueError("a packet cannot be both symmetrized and antisymmetrized")

    @property
    def n(self) -> int:
        return len(self.centers)


def _orbital(center: float, width: float, momentum: float, u: np.ndarray) -> np.ndarray:
    norm = (math.pi * width * width) ** -0.25
    return norm * np.exp(-((u - center) ** 2) / (2.0 * width * width) + 1j * momentum * u)


def packet_value(packet: WavePacket, x):
    """Initial wave function at the points x (last axis = particle index)."""
    if packet.kind == "custom-samples":
        return packet.sampler(np.asarray(x, dtype=float))
    n = packet.n
    x = _points(x, n)

    def product_for(order: tuple[int, ...]) -> np.ndarray:
        value = _orbital(
            packet.centers[0], packet.widths[0], packet.momenta[0], x[..., order[0]]
        )
        for i in range(1, n):
            value = value * _orbital(
                packet.centers[i], packet.widths[i], packet.momenta[i], x[..., order[i]]
            )
        return value

    if not (packet.antisymmetrized or packet.symmetrized):
        return _maybe_scalar(product_for(tuple(range(n))))
    total = 0
    for sigma, sign in signed_permutations(n):
        weight = sign if packet.antisymmetrized else 1
        total = total + weight * product_for(sigma)
    return _maybe_scalar(total)


@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor-product quadrature specification, one axis per particle."""

    bounds: tuple[tuple[float, float], ...]
    points: tuple[int, ...]
    rule: str = "gauss-legendre"

    def __post_init__(self) -> None:
        if self.rule not in ("midpoint", "gauss-legendre"):
            raise ValueError(f"unknown quadrature rule {self.rule!r}")
        if len(self.bounds) != len(self.points):
            raise ValueError("bounds and points must have one entry per axis")
        for (lo, hi), count in zip(self.bounds, self.points):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError(f"invalid axis bounds ({lo}, {hi})")
            if count < 2:
                raise ValueError("need at least two points per axis")
        if math.prod(self.points) > MAX_GRID_POINTS:
            raise ValueError(
                f"grid has {math.prod(self.points)} nodes, budget is {MAX_GRID_POINTS}"
            )

    @property
    def n(self) -> int:
        return len(self.bounds)

    def halved(self) -> "QuadratureGrid":
        return QuadratureGrid(
            bounds=self.bounds,
            points=tuple(max(2, c // 2) for c in self.points),
            rule=self.rule,
        )


def axis_nodes(grid: QuadratureGrid) -> list[tuple[np.ndarray, np.ndarray]]:
    """Per-axis nodes and weights, jittered off coincidence hyperplanes.

    Axis k is shifted by k/(2n) of a cell so that no two axes share node
    values; the kernel then never sees exactly coincident coordinates.
    """
    axes = []
    n = grid.n
    for k, ((lo, hi), count) in enumerate(zip(grid.bounds, grid.points)):
        if grid.rule == "midpoint":
            h = (hi - lo) / count
            nodes = lo + h * (np.arange(count) + 0.5)
            weights = np.full(count, h)
        else:
            panels = max(1, count // GAUSS_PANEL)
            edges = np.linspace(lo, hi, panels + 1)
            half = 0.5 * (edges[1:] - edges[:-1])
            mid = 0.5 * (edges[1:] + edges[:-1])
            nodes = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
            weights = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
            h = (hi - lo) / max(1, panels * GAUSS_PANEL)
        if n > 1 and k > 0:
            nodes = nodes + h * 0.5 * k / n
        axes.append((nodes, weights))
    return axes


def _iter_mesh_chunks(axes, chunk_nodes: int):
    """Yield (points, weights) chunks of the full tensor-product mesh."""
    counts = [len(nodes) for nodes, _ in axes]
    total = math.prod(counts)
    node_arrays = [nodes for nodes, _ in axes]
    weight_arrays = [w for _, w in axes]
    for start in range(0, total, chunk_nodes):
        stop = min(start + chunk_nodes, total)
        flat = np.arange(start, stop)
        idx = np.unravel_index(flat, counts)
        pts = np.stack([node_arrays[ax][idx[ax]] for ax in range(len(axes))], axis=-1)
        wts = weight_arrays[0][idx[0]].copy()
        for ax in range(1, len(axes)):
            wts *= weight_arrays[ax][idx[ax]]
        yield pts, wts


def evolve(
    packet: WavePacket,
    t: float,
    params: ModelParams,
    grid: QuadratureGrid,
    outputs,
    table: CoefficientTable | None = None,
    l0_route: bool = False,
):
    """Propagate the packet to time t and evaluate at the output points.

    Straight tensor quadrature of kernel times initial packet; the kernel is
    evaluated in vectorized blocks over the grid chunking.  Guarded to three
    particles (the grid budget enforces the rest).
    """
    n = params.n
    if n > 3:
        raise ValueError("quadrature evolution is limited to n <= 3")
    if grid.n != n:
        raise ValueError("grid dimension does not match the particle number")
    outputs = np.atleast_2d(np.asarray(outputs, dtype=float))
    if outputs.shape[-1] != n:
        raise ValueError(f"output points must have {n} coordinates")
    axes = axis_nodes(grid)
    n_out = outputs.shape[0]
    chunk = max(1, (1 << 20) // max(n_out, 1))
    acc = np.zeros(n_out, dtype=complex)
    for pts, wts in _iter_mesh_chunks(axes, chunk):
        values = packet_value(packet, pts) * wts
        if l0_route:
            block = kernel_l0(outputs[:, None, :], pts[None, :, :], t, n, params.omega)
        else:
            block = kernel(outputs[:, None, :], pts[None, :, :], t, params, table)
        acc += block @ values
    return acc


def evolve_with_estimate(
    packet: WavePacket,
    t: float,
    params: ModelParams,
    grid: QuadratureGrid,
    outputs,
    table: CoefficientTable | None = None,
    l0_route: bool = False,
    rtol: float = 1e-3,
):
    """Evolve and attach a Richardson error estimate from a halved grid."""
    fine = evolve(packet, t, params, grid, outputs, table, l0_route)
    coarse = evolve(packet, t, params, grid.halved(), outputs, table, l0_route)
    estimate = float(np.max(np.abs(fine - coarse)))
    scale = float(np.max(np.abs(fine))) or 1.0
    if estimate > rtol * scale:
        warnings.warn(
            f"quadrature may be unconverged: Richardson estimate {estimate:.3e} "
            f"vs field scale {scale:.3e}",
            ConvergenceWarning,
            stacklevel=2,
        )
    return fine, estimate


def _mehler_matrix(xv: np.ndarray, yv: np.ndarray, t: float, omega: float) -> np.ndarray:
    return mehler(xv[:, None], yv[None, :], t, omega)


def evolve_field2(
    packet: WavePacket,
    t: float,
    params: ModelParams,
    ygrid: QuadratureGrid,
    xaxes: tuple[np.ndarray, np.ndarray],
    table: CoefficientTable | None = None,
    l0_route: bool = False,
) -> np.ndarray:
    """Two-particle evolution on a full output grid via separable contractions.

    The explicit kernel splits, per permutation and per Laurent power, into
    oscillator-kernel matrices times functions of x-differences and
    y-differences, so the double integral collapses to matrix products.
    Mathematically identical to `evolve`; exercised against it in the tests.
    """
    if params.n != 2:
        raise ValueError("the field fast path is two-particle only")
    ell = 0 if l0_route else params.ell
    if table is None:
        table = trivial_table(2) if l0_route else laurent_table(2, params.ell)
    s, _ = _timescales(t, params.omega)
    (y1, w1), (y2, w2) = axis_nodes(ygrid)
    x1, x2 = xaxes
    mesh_y1, mesh_y2 = np.meshgrid(y1, y2, indexing="ij")
    psi0 = packet_value(packet, np.stack([mesh_y1, mesh_y2], axis=-1))
    phi0 = (w1[:, None] * w2[None, :]) * psi0
    m_x1y1 = _mehler_matrix(x1, y1, t, params.omega)
    m_x2y2 = _mehler_matrix(x2, y2, t, params.omega)
    m_x1y2 = _mehler_matrix(x1, y2, t, params.omega)
    m_x2y1 = _mehler_matrix(x2, y1, t, params.omega)
    dy = mesh_y1 - mesh_y2
    dx = x1[:, None] - x2[None, :]
    if np.any(dx == 0) or np.any(dy == 0):
        raise ValueError("output or grid axes hit the coincidence diagonal")
    g = -1j * s
    swap_sign = (-1) ** (ell + 1)
    out = np.zeros((len(x1), len(x2)), dtype=complex)
    for m, coeff in sorted(table.terms.items()):
        e = m[0]
        phi_m = phi0 * (g / dy) ** e if e else phi0
        direct = m_x1y1 @ phi_m @ m_x2y2.T
        swapped = m_x1y2 @ phi_m.T @ m_x2y1.T
        block = direct + swap_sign * ((-1) ** e) * swapped
        out += float(coeff) * (dx**-e if e else 1.0) * block
    return out / 2.0


def grid_norm(field: np.ndarray, xaxes_weights: tuple[np.ndarray, np.ndarray]) -> float:
    """Norm-squared integral of a two-particle field on its output grid."""
    wx1, wx2 = xaxes_weights
    density = np.abs(field) ** 2
    return float(wx1 @ density @ wx2)


def norm_drift2(
    packet: WavePacket,
    t: float,
    params: ModelParams,
    ygrid: QuadratureGrid,
    xgrid: QuadratureGrid,
    table: CoefficientTable | None = None,
    l0_route: bool = False,
) -> dict:
    """Initial and evolved norms on matched two-particle grids."""
    (x1, wx1), (x2, wx2) = axis_nodes(xgrid)
    field_t = evolve_field2(packet, t, params, ygrid, (x1, x2), table, l0_route)
    mesh_x1, mesh_x2 = np.meshgrid(x1, x2, indexing="ij")
    field_0 = packet_value(packet, np.stack([mesh_x1, mesh_x2], axis=-1))
    norm_t = grid_norm(field_t, (wx1, wx2))
    norm_0 = grid_norm(field_0, (wx1, wx2))
    return {
        "norm_initial": norm_0,
        "norm_final": norm_t,
        "drift": abs(norm_t - norm_0) / norm_0,
    }
