"""Command-line front end: spectrum tables, energy-surface sweeps, loop
reports, wavefunction samples, and finite-spacing convergence tables.

Exit codes: 0 success, 2 input/parameter error, 3 numerical or tracking
failure.  Data files are deterministic: fixed field order, 12 significant
digits, no timestamps.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import holonomy, regularize, spectrum
from .errors import (
    ConstraintViolation,
    DegenerateDelta,
    FloorTooHigh,
    InvalidGamma0,
    NoConvergence,
    OutOfDomain,
    PathThroughSingularity,
    SingularPoint,
    SpectraMismatch,
    StepUnderflow,
    TruncationLeak,
    UnrepresentableParams,
)
from .params import SliceCoords, make_params, polar_loop, singular_point

_INPUT_ERRORS = (
    ConstraintViolation,
    DegenerateDelta,
    FloorTooHigh,
    InvalidGamma0,
    OutOfDomain,
    PathThroughSingularity,
    SingularPoint,
    UnrepresentableParams,
    ValueError,
)
_NUMERIC_ERRORS = (NoConvergence, SpectraMismatch, StepUnderflow, TruncationLeak)

#: Sign relating the spectral-flow shift to the winding number: a
#: counterclockwise loop around the singular point shifts indices by +2.
ORIENTATION_SIGN = 1


def _fmt(v) -> str:
    v = float(v)
    if v == 0.0:
        v = 0.0  # normalize -0
    return f"{v:.12g}"


def _jround(v):
    """Float rounded to the 12-significant-digit file convention."""
    return float(_fmt(v))


def _add_domain_flags(p):
    p.add_argument("--L", type=float, default=1.0, help="box length (default 1)")
    p.add_argument("--r", type=float, default=0.618034,
                   help="interaction position fraction (default 0.618034)")


def _add_common_flags(p):
    p.add_argument("--root-tol", type=float, default=spectrum.ROOT_TOL,
                   help="relative root tolerance (default 1e-10)")
    p.add_argument("-o", "--output", default="-",
                   help="output file (default: standard output)")


def _add_param_flags(p):
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--gamma0", type=float, default=None,
                   help="slice parameter; default -1 when gamma/delta absent")


def _parse_param_style(args):
    """Return ('full', BCParams) or ('slice', SliceCoords)."""
    full = args.gamma is not None or args.delta is not None
    if full:
        if args.gamma is None or args.delta is None or args.gamma0 is not None:
            raise ValueError(
                "give either the full quadruple --alpha --beta --gamma --delta "
                "or the slice style --gamma0 --alpha --beta"
            )
        return "full", make_params(args.alpha, args.beta, args.gamma, args.delta)
    gamma0 = -1.0 if args.gamma0 is None else args.gamma0
    if gamma0 == 0.0:
        raise InvalidGamma0("gamma0 must be nonzero")
    return "slice", SliceCoords(gamma0, args.alpha, args.beta)


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_spectrum(args) -> int:
    style, par = _parse_param_style(args)
    dom = spectrum.Domain(args.L, args.r)
    if style == "full":
        levels = spectrum.eigenvalues(par, dom, args.levels, floor=args.floor,
                                      root_tol=args.root_tol)
        wfs = [spectrum.wavefunction(l, par, dom) for l in levels]
    else:
        levels = spectrum.eigenvalues_slice(par, dom, args.levels, floor=args.floor,
                                            root_tol=args.root_tol)
        wfs = [spectrum.wavefunction_slice(l, par, dom) for l in levels]
    lines = ["n,energy,k_or_kappa,nodes"]
    for lv, wf in zip(levels, wfs):
        k = math.sqrt(2.0 * abs(lv.energy))
        lines.append(
            f"{lv.index},{_fmt(lv.energy)},{_fmt(k)},{spectrum.node_count(wf)}"
        )
    _write(args.output, "\n".join(lines) + "\n")
    return 0


def cmd_surface(args) -> int:
    if args.alpha_steps < 1 or args.beta_steps < 1:
        raise ValueError("grid steps must be at least 1")
    if not all(map(math.isfinite, (args.alpha_min, args.alpha_max,
                                   args.beta_min, args.beta_max))):
        raise ValueError("grid bounds must be finite")
    if args.gamma0 == 0.0:
        raise InvalidGamma0("gamma0 must be nonzero")
    dom = spectrum.Domain(args.L, args.r)

    def axis(lo, hi, n):
        return [lo] if n == 1 else list(np.linspace(lo, hi, n))

    lines = ["alpha,beta,level,energy"]
    for alpha in axis(args.alpha_min, args.alpha_max, args.alpha_steps):
        for beta in axis(args.beta_min, args.beta_max, args.beta_steps):
            if beta == 0.0:
                lines.append(f"{_fmt(alpha)},{_fmt(beta)},singular,")
                continue
            slc = SliceCoords(args.gamma0, alpha, beta)
            levels = spectrum.eigenvalues_slice(
                slc, dom, args.levels, floor=args.floor, root_tol=args.root_tol
            )
            for lv in levels:
                lines.append(
                    f"{_fmt(alpha)},{_fmt(beta)},{lv.index},{_fmt(lv.energy)}"
                )
    _write(args.output, "\n".join(lines) + "\n")
    return 0


def cmd_loop(args) -> int:
    if args.rho <= 0.0:
        raise ValueError("rho must be positive")
    if args.gamma0 == 0.0:
        raise InvalidGamma0("gamma0 must be nonzero")
    center = None
    if args.center_offset is not None:
        try:
            dx, dy = (float(v) for v in args.center_offset.split(","))
        except ValueError:
            raise ValueError("--center-offset expects two comma-separated numbers")
        sx, sy = singular_point(args.gamma0)
        center = (sx + dx, sy + dy)
    dom = spectrum.Domain(args.L, args.r)
    path = polar_loop(args.gamma0, args.rho, n_steps=args.steps, turns=args.turns,
                      theta0=args.theta0, center=center)
    opts = holonomy.TraceOptions(root_tol=args.root_tol, energy_floor=args.floor)
    result = holonomy.loop_permutation(path, dom, args.levels, opts)
    report = {
        "winding": result.winding,
        "shift": result.shift,
        "spectra_match_error": _jround(result.spectra_match_error),
        "levels": [
            {
                "start_index": tl.start_index,
                "status": tl.status,
                "final_index": tl.indices[-1],
                "energies": [[_jround(t), _jround(e)] for t, e in tl.samples],
            }
            for tl in result.tracked
        ],
    }
    if args.overlaps:
        U = holonomy.evolution_matrix(path, dom, args.levels, opts=opts)
        report["evolution"] = [[_jround(v) for v in row] for row in U]
    _write(args.output, json.dumps(report, indent=2) + "\n")
    if result.shift != 2 * result.winding * ORIENTATION_SIGN:
        print(
            f"shift {result.shift} does not match 2 x winding {result.winding}",
            file=sys.stderr,
        )
        return 3
    return 0


def cmd_wave(args) -> int:
    if args.level < 0:
        raise ValueError("level index must be nonnegative")
    if args.samples < 2:
        raise ValueError("need at least 2 samples per side")
    style, par = _parse_param_style(args)
    dom = spectrum.Domain(args.L, args.r)
    if style == "full":
        lv = spectrum.eigenvalues(par, dom, args.level + 1, floor=args.floor,
                                  root_tol=args.root_tol)[args.level]
        wf = spectrum.wavefunction(lv, par, dom)
    else:
        lv = spectrum.eigenvalues_slice(par, dom, args.level + 1, floor=args.floor,
                                        root_tol=args.root_tol)[args.level]
        wf = spectrum.wavefunction_slice(lv, par, dom)
    left = np.linspace(-dom.left_len, 0.0, args.samples, endpoint=False)
    right = np.linspace(0.0, dom.right_len, args.samples + 1)[1:]
    lines = ["x,psi"]
    for x, v in zip(left, spectrum.evaluate(wf, left)):
        lines.append(f"{_fmt(x)},{_fmt(v)}")
    lines.append(f"0,{_fmt(spectrum.evaluate(wf, 0.0))}")
    lines.append(f"0,{_fmt(spectrum.evaluate(wf, 0.0, from_right=True))}")
    for x, v in zip(right, spectrum.evaluate(wf, right)):
        lines.append(f"{_fmt(x)},{_fmt(v)}")
    _write(args.output, "\n".join(lines) + "\n")
    return 0


def cmd_converge(args) -> int:
    par = make_params(args.alpha, args.beta, args.gamma, args.delta)
    try:
        a_list = [float(v) for v in args.a_list.split(",")]
    except ValueError:
        raise ValueError("--a-list expects comma-separated spacings")
    dom = spectrum.Domain(args.L, args.r)
    rows = regularize.convergence_study(par, dom, a_list, args.levels)
    lines = ["a,level,energy,abs_error"]
    for a, n, energy, err in rows:
        lines.append(f"{_fmt(a)},{n},{_fmt(energy)},{_fmt(err)}")
    _write(args.output, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pointbox",
        description="Spectra of a particle in a box with a generalized "
        "point interaction, and holonomy diagnostics around the "
        "singular parameter point.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalue table for one parameter point")
    _add_param_flags(p)
    p.add_argument("--levels", type=int, default=8)
    p.add_argument("--floor", type=float, default=None)
    _add_domain_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("surface", help="energy surface over an (alpha, beta) grid")
    p.add_argument("--gamma0", type=float, default=-1.0)
    p.add_argument("--alpha-min", type=float, default=-2.0)
    p.add_argument("--alpha-max", type=float, default=0.0)
    p.add_argument("--alpha-steps", type=int, default=100)
    p.add_argument("--beta-min", type=float, default=-1.0)
    p.add_argument("--beta-max", type=float, default=1.0)
    p.add_argument("--beta-steps", type=int, default=100)
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--floor", type=float, default=None)
    _add_domain_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("loop", help="trace a closed loop around the singular point")
    p.add_argument("--gamma0", type=float, default=-1.0)
    p.add_argument("--rho", type=float, default=0.5)
    p.add_argument("--turns", type=int, default=1)
    p.add_argument("--theta0", type=float, default=0.0)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--levels", type=int, default=6)
    p.add_argument("--overlaps", action="store_true",
                   help="include the discrete evolution matrix")
    p.add_argument("--center-offset", default=None,
                   help="dx,dy displacement of the loop center from the "
                   "singular point")
    p.add_argument("--floor", type=float, default=None)
    _add_domain_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_loop)

    p = sub.add_parser("wave", help="sampled eigenfunction for one level")
    _add_param_flags(p)
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--floor", type=float, default=None)
    _add_domain_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_wave)

    p = sub.add_parser("converge", help="finite-spacing triple-delta convergence")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--a-list", default="1e-2,1e-3,1e-4")
    p.add_argument("--levels", type=int, default=5)
    _add_domain_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_converge)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _NUMERIC_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
