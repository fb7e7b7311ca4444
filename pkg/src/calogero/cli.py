"""Command-line interface.

Subcommands: `psi` and `kernel` evaluate single points, `grid` emits
figure-style heatmap fields (CSV plus binary graymaps), `verify` runs a named
check suite and writes a machine-readable report, `solve` recovers a
coefficient table with the exact oracle, and `evolve` propagates a Gaussian
packet and writes sampled values with a norm-drift summary.

Numeric flags accept plain decimals or fractions of pi written like pi/16.
Output is deterministic for a fixed configuration, including the seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .coefficients import (
    LAURENT_MONOMIAL,
    PRODUCT_OF_F,
    CoefficientTable,
    default_table,
    ell1_conjecture_table,
    laurent_table,
)
from .evolution import (
    QuadratureGrid,
    WavePacket,
    axis_nodes,
    evolve_with_estimate,
    norm_drift2,
)
from .oracle import solve_coefficients
from .propagator import kernel, kernel_explicit
from .verification import SUITES, kernel_uv_field
from .wavefunction import ModelParams, psi

DEFAULT_SEED = 1729


class ConfigError(ValueError):
    """Invalid or inconsistent command configuration."""


def parse_number(text: str) -> float:
    """A decimal literal or a fraction of pi such as pi/16 or -pi/3."""
    s = text.strip().lower()
    sign = 1.0
    if s.startswith(("-", "+")):
        sign = -1.0 if s[0] == "-" else 1.0
        s = s[1:]
    if s.startswith("pi"):
        rest = s[2:]
        if rest == "":
            return sign * math.pi
        if rest.startswith("/"):
            try:
                return sign * math.pi / int(rest[1:])
            except (ValueError, ZeroDivisionError):
                raise ConfigError(f"cannot parse fraction of pi: {text!r}") from None
        raise ConfigError(f"cannot parse fraction of pi: {text!r}")
    try:
        return sign * float(s)
    except ValueError:
        raise ConfigError(f"cannot parse number: {text!r}") from None


def parse_vector(text: str) -> tuple[float, ...]:
    try:
        return tuple(parse_number(part) for part in text.split(","))
    except ConfigError:
        raise
    except Exception:
        raise ConfigError(f"cannot parse vector: {text!r}") from None


def load_table(source: str, n: int, ell: int) -> CoefficientTable:
    """Table from a named source or a JSON file path."""
    if source == "closed-form":
        return default_table(n, ell)
    if source == "conjecture":
        if ell != 1:
            raise ConfigError("the conjecture table source needs --ell 1")
        return ell1_conjecture_table(n)
    if source == "oracle":
        return solve_coefficients(ModelParams(n, ell), seed=DEFAULT_SEED)
    path = Path(source)
    if not path.is_file():
        raise ConfigError(f"table source {source!r} is not a file or known name")
    table = CoefficientTable.loads(path.read_text())
    if table.n != n or table.ell != ell:
        raise ConfigError(
            f"table file is for N={table.n}, ell={table.ell}, "
            f"but the run asked for N={n}, ell={ell}"
        )
    return table


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def write_pgm(path: Path, field: np.ndarray) -> tuple[float, float]:
    """8-bit binary graymap with linear normalization; returns (min, max)."""
    lo = float(field.min())
    hi = float(field.max())
    if hi > lo:
        scaled = np.round((field - lo) / (hi - lo) * 255.0)
    else:
        scaled = np.zeros_like(field)
    data = scaled.astype(np.uint8)
    header = f"P5\n{field.shape[1]} {field.shape[0]}\n255\n".encode("ascii")
    path.write_bytes(header + data.tobytes())
    return lo, hi


def cmd_psi(args) -> int:
    params = ModelParams(args.N, args.ell, args.omega)
    x = parse_vector(args.x)
    p = parse_vector(args.p)
    if len(x) != args.N or len(p) != args.N:
        raise ConfigError(f"--x and --p must have N={args.N} entries")
    table = load_table(args.table, args.N, args.ell) if args.table else None
    value = psi(x, p, params, table)
    _write_text(args.out, f"{_fmt(value.real)},{_fmt(value.imag)}\n")
    return 0


def cmd_kernel(args) -> int:
    params = ModelParams(args.N, args.ell, args.omega)
    x = parse_vector(args.x)
    y = parse_vector(args.y)
    if len(x) != args.N or len(y) != args.N:
        raise ConfigError(f"--x and --y must have N={args.N} entries")
    table = load_table(args.table, args.N, args.ell) if args.table else None
    value = kernel(x, y, args.t, params, table)
    _write_text(args.out, f"{_fmt(value.real)},{_fmt(value.imag)}\n")
    return 0


def cmd_grid(args) -> int:
    if args.N != 3:
        raise ConfigError("the grid subcommand draws the three-particle kernel (--N 3)")
    y = parse_vector(args.y)
    if len(y) != 3:
        raise ConfigError("--y must have 3 entries")
    bounds = parse_vector(args.bounds)
    if len(bounds) != 2 or bounds[0] >= bounds[1]:
        raise ConfigError("--bounds must be lo,hi with lo < hi")
    table = load_table(args.table, 3, args.ell) if args.table else None
    u_axis, v_axis, field = kernel_uv_field(
        y=y,
        t=args.t,
        omega=args.omega,
        ell=args.ell,
        bounds=bounds,
        resolution=args.res,
        table=table,
    )
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    lines = ["u,v,re,im,abs"]
    for r, v in enumerate(v_axis):
        for c, u in enumerate(u_axis):
            z = field[r, c]
            lines.append(
                f"{_fmt(u)},{_fmt(v)},{_fmt(z.real)},{_fmt(z.imag)},{_fmt(abs(z))}"
            )
    Path(f"{prefix}.csv").write_text("\n".join(lines) + "\n")
    sidecar = []
    for channel, data in (
        ("re", field.real),
        ("im", field.imag),
        ("abs", np.abs(field)),
    ):
        lo, hi = write_pgm(Path(f"{prefix}_{channel}.pgm"), data)
        sidecar.append(f"channel {channel}: min={_fmt(lo)} max={_fmt(hi)}")
    Path(f"{prefix}_norm.txt").write_text("\n".join(sidecar) + "\n")
    return 0


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise ConfigError(
            f"unknown suite {args.suite!r}; available: {', '.join(sorted(SUITES))}"
        )
    check = SUITES[args.suite]
    kwargs = {}
    if args.seed is not None and "seed" in check.__code__.co_varnames:
        kwargs["seed"] = args.seed
    if args.N is not None:
        if args.suite == "conjecture-check":
            kwargs["ns"] = (args.N,)
        elif args.suite in ("bessel-match",):
            pass
        elif args.suite in ("oracle-roundtrip",):
            kwargs["n"] = args.N
        elif "n" in check.__code__.co_varnames:
            kwargs["n"] = args.N
    if args.ell is not None:
        if args.suite == "oracle-roundtrip":
            kwargs["ells"] = (args.ell,)
        elif args.suite == "bessel-match":
            kwargs["ells"] = (args.ell,)
        elif "ell" in check.__code__.co_varnames:
            kwargs["ell"] = args.ell
    if args.tol is not None and "tol" in check.__code__.co_varnames:
        kwargs["tol"] = args.tol
    result = check(**kwargs)
    report = json.dumps(result.as_dict(), indent=1, default=str)
    _write_text(args.out, report + "\n")
    return 0 if result.passed else 1


def cmd_solve(args) -> int:
    params = ModelParams(args.N, args.ell)
    representation = (
        LAURENT_MONOMIAL if args.representation == "laurent" else PRODUCT_OF_F
    )
    table = solve_coefficients(
        params,
        representation=representation,
        seed=args.seed if args.seed is not None else DEFAULT_SEED,
        sample_count=args.samples,
    )
    _write_text(args.out, table.dumps() + "\n")
    return 0


def cmd_evolve(args) -> int:
    if args.N != 2:
        raise ConfigError("the evolve subcommand currently serves two particles")
    centers = parse_vector(args.centers)
    widths = parse_vector(args.widths)
    momenta = parse_vector(args.momenta)
    if not len(centers) == len(widths) == len(momenta) == args.N:
        raise ConfigError("--centers/--widths/--momenta must have N entries")
    if args.exchange not in ("none", "symmetrize", "antisymmetrize"):
        raise ConfigError("--exchange must be none, symmetrize or antisymmetrize")
    packet = WavePacket(
        centers=centers,
        widths=widths,
        momenta=momenta,
        symmetrized=args.exchange == "symmetrize",
        antisymmetrized=args.exchange == "antisymmetrize",
    )
    params = ModelParams(args.N, args.ell, args.omega)
    if args.bounds:
        lo, hi = parse_vector(args.bounds)
    else:
        reach = 6.0 * max(widths)
        lo = min(centers) - reach
        hi = max(centers) + reach
    ygrid = QuadratureGrid(
        bounds=((lo, hi),) * args.N, points=(args.res,) * args.N, rule="gauss-legendre"
    )
    xgrid = QuadratureGrid(
        bounds=((lo, hi),) * args.N,
        points=(args.res_out,) * args.N,
        rule="gauss-legendre",
    )
    drift = norm_drift2(
        packet, args.t, params, ygrid, xgrid, l0_route=args.l0_route
    )
    (x1, _), (x2, _) = axis_nodes(xgrid)
    from .evolution import evolve_field2

    field = evolve_field2(
        packet, args.t, params, ygrid, (x1, x2), l0_route=args.l0_route
    )
    lines = ["x1,x2,re,im,abs"]
    for i, a in enumerate(x1):
        for j, b in enumerate(x2):
            z = field[i, j]
            lines.append(
                f"{_fmt(a)},{_fmt(b)},{_fmt(z.real)},{_fmt(z.imag)},{_fmt(abs(z))}"
            )
    lines.append(
        "# norm_initial={0} norm_final={1} drift={2}".format(
            _fmt(drift["norm_initial"]),
            _fmt(drift["norm_final"]),
            _fmt(drift["drift"]),
        )
    )
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="calogero",
        description="Evaluate the inverse-square model kernel, eigenfunctions, "
        "coefficient tables, verification suites and packet evolution.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, omega_default=0.0):
        p.add_argument("--N", type=int, required=True, help="particle number")
        p.add_argument("--ell", type=int, default=0, help="integer coupling")
        p.add_argument(
            "--omega", type=parse_number, default=omega_default, help="trap frequency"
        )
        p.add_argument("--table", help="closed-form | conjecture | oracle | file path")
        p.add_argument("--out", help="output path (default stdout)")

    p_psi = sub.add_parser("psi", help="single-point eigenfunction value")
    common(p_psi)
    p_psi.add_argument("--x", required=True, help="comma-separated positions")
    p_psi.add_argument("--p", required=True, help="comma-separated momenta")
    p_psi.set_defaults(func=cmd_psi)

    p_kernel = sub.add_parser("kernel", help="single-point propagator value")
    common(p_kernel, omega_default=1.0)
    p_kernel.add_argument("--x", required=True)
    p_kernel.add_argument("--y", required=True)
    p_kernel.add_argument("--t", type=parse_number, required=True)
    p_kernel.set_defaults(func=cmd_kernel)

    p_grid = sub.add_parser("grid", help="heatmap field over relative coordinates")
    p_grid.add_argument("--N", type=int, default=3)
    p_grid.add_argument("--ell", type=int, default=2)
    p_grid.add_argument("--omega", type=parse_number, default=1.0)
    p_grid.add_argument("--t", type=parse_number, default="pi/16")
    p_grid.add_argument("--y", default="-1,0,1")
    p_grid.add_argument("--bounds", default="-4,4")
    p_grid.add_argument("--res", type=int, default=256)
    p_grid.add_argument("--table")
    p_grid.add_argument("--out", required=True, help="output path prefix")
    p_grid.set_defaults(func=cmd_grid)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("--suite", required=True)
    p_verify.add_argument("--N", type=int)
    p_verify.add_argument("--ell", type=int)
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--tol", type=parse_number)
    p_verify.add_argument("--out")
    p_verify.set_defaults(func=cmd_verify)

    p_solve = sub.add_parser("solve", help="recover a coefficient table exactly")
    p_solve.add_argument("--N", type=int, required=True)
    p_solve.add_argument("--ell", type=int, required=True)
    p_solve.add_argument(
        "--representation", choices=("product", "laurent"), default="product"
    )
    p_solve.add_argument("--samples", type=int)
    p_solve.add_argument("--seed", type=int)
    p_solve.add_argument("--out")
    p_solve.set_defaults(func=cmd_solve)

    p_evolve = sub.add_parser("evolve", help="propagate a Gaussian packet")
    p_evolve.add_argument("--N", type=int, default=2)
    p_evolve.add_argument("--ell", type=int, default=1)
    p_evolve.add_argument("--omega", type=parse_number, default=1.0)
    p_evolve.add_argument("--t", type=parse_number, required=True)
    p_evolve.add_argument("--centers", default="-1,1")
    p_evolve.add_argument("--widths", default="0.6,0.6")
    p_evolve.add_argument("--momenta", default="0,0")
    p_evolve.add_argument("--exchange", default="symmetrize")
    p_evolve.add_argument("--bounds")
    p_evolve.add_argument("--res", type=int, default=600)
    p_evolve.add_argument("--res-out", dest="res_out", type=int, default=40)
    p_evolve.add_argument("--l0-route", dest="l0_route", action="store_true")
    p_evolve.add_argument("--out")
    p_evolve.set_defaults(func=cmd_evolve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if isinstance(getattr(args, "t", None), str):
        args.t = parse_number(args.t)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
