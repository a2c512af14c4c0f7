"""Command-line front end.

Usage::

    nlstar validate --preset poschl-teller --k 2 --kp 2 --family gk
    nlstar resolution --preset square-well
    nlstar table --preset poschl-teller --k 2 --kp 2 --symbol G --z 0
    nlstar star-eval --a 1 --b 4 --A "R" --B "RL" --family gk
    nlstar convergence --preset poschl-teller --k 2 --kp 2 --dims 16,32,64

Exit codes: 0 success, 1 when a validation report holds FAIL entries, 2 on
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import gk, pk, star
from .presets import PRESETS, Preset, resolve_preset
from .spectrum import FockSpace, OperatorExpr, SpectrumParams, compile_expr, diagonal_operators
from .states import Family

SCHEMA = 1
DEFAULT_DIM = 64
DEFAULT_TOL = 1e-8
VALIDATE_COLUMNS = ["identity_name", "re(point)", "im(point)", "paper_residual", "corrected_residual", "status"]


class ConfigError(ValueError):
    pass


def _fmt(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".16e")


def _floats(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from exc


def _complex(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise ConfigError(f"not a complex number: {text!r}") from exc


def params_from_args(args):
    if args.preset is not None:
        if args.a is not None or args.b is not None:
            raise ConfigError("give either --preset or --a/--b, not both")
        return resolve_preset(Preset(args.preset, k=args.k, kp=args.kp, eps=args.eps))
    if args.a is None or args.b is None:
        raise ConfigError("specify --preset or both --a and --b")
    return SpectrumParams(args.a, args.b)


def families_from_args(args):
    if args.family == "both":
        return [Family.GK, Family.PK]
    return [Family(args.family)]


def grid_from_args(args, family):
    if args.z:
        return [_complex(z) for z in args.z]
    if args.moduli is None:
        return star.default_grid(family)
    return star.polar_grid(_floats(args.moduli), args.angles)


def dim_for(args, params, family, grid):
    """Explicit ``--dim`` wins; otherwise 64, raised for PK until the tail mass is below 1e-12."""
    if args.dim is not None:
        if args.dim < 8:
            raise ConfigError("--dim must be >= 8")
        return args.dim
    big = max((abs(p) for p in grid), default=0.0)
    if family is Family.PK and not params.harmonic:
        return max(DEFAULT_DIM, pk.suggest_pk_dim(params, big))
    return max(DEFAULT_DIM, gk.suggest_gk_dim(params, big))


def _check_tol(args):
    if not args.tol > 0:
        raise ConfigError("--tol must be positive")


def _emit(args, columns, rows, meta):
    if args.format == "json":
        doc = {"schema": SCHEMA, **meta, "columns": columns, "rows": [dict(zip(columns, r)) for r in rows]}
        text = json.dumps(doc, indent=2, sort_keys=False, default=_json_default) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
        text = buf.getvalue()
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _meta(args, params, extra=None):
    meta = {"command": args.command, "params": {"a": params.a, "b": params.b}}
    if args.preset:
        meta["preset"] = args.preset
    meta.update(extra or {})
    return meta


def cmd_validate(args, params):
    _check_tol(args)
    rows, failed, dims = [], False, {}
    for fam in families_from_args(args):
        grid = grid_from_args(args, fam)
        d = dim_for(args, params, fam, grid)
        dims[fam.value] = d
        rep = star.run_identity_suite(fam, params, FockSpace(d), grid, tol=args.tol, seed=args.seed)
        failed |= rep.has_failures
        for e in rep.entries:
            rows.append([e.identity, e.point.real, e.point.imag, e.paper_residual, e.corrected_residual, e.status])
    _emit(args, VALIDATE_COLUMNS, rows, _meta(args, params, {"dim": dims, "tol": args.tol}))
    return 1 if failed else 0


def cmd_resolution(args, params):
    columns = ["family", "n", "residual", "printed_measure_residual"]
    rows, dims = [], {}
    for fam in families_from_args(args):
        d = args.dim if args.dim is not None else DEFAULT_DIM
        dims[fam.value] = d
        space = FockSpace(d)
        if fam is Family.GK:
            res = gk.gk_resolution_check(params, space, n_max=args.n_max)
            printed = (
                gk.gk_printed_measure_residuals(params, min(args.n_max, d - 1))
                if not params.harmonic
                else np.full(res.shape[0], np.nan)
            )
        else:
            res = pk.pk_resolution_check(params, space, n_max=args.n_max)
            printed = np.full(res.shape[0], np.nan)
        for n in range(res.shape[0]):
            rows.append([fam.value, n, res[n, n], printed[n]])
    _emit(args, columns, rows, _meta(args, params, {"dim": dims}))
    return 0


def cmd_table(args, params):
    fam = Family.GK if args.symbol == "G" else Family.PK
    grid = grid_from_args(args, fam)
    d = dim_for(args, params, fam, grid)
    space = FockSpace(d)
    columns = ["re(point)", "im(point)", "value", "closed_form", "printed_form"]
    rows = []
    if args.symbol == "G":
        _, _, G = diagonal_operators(params, space)
        sym = star.Symbol(G, Family.GK, params)
        for z in grid:
            rows.append([z.real, z.imag, sym(z).real, star.g_symbol_closed_form(params, z),
                         star.g_symbol_printed(params, z)])
    else:
        if args.l < 0:
            raise ConfigError("--l must be >= 0")
        for z in grid:
            rows.append([z.real, z.imag, pk.d_symbol(params, space, args.l, z),
                         star._d_symbol_exact(params, args.l, z),
                         pk.d_symbol_printed_series(params, space, args.l, z)])
    _emit(args, columns, rows, _meta(args, params, {"dim": d, "symbol": args.symbol, "l": args.l}))
    return 0


def cmd_star_eval(args, params):
    try:
        ea, eb = OperatorExpr.parse(args.A), OperatorExpr.parse(args.B)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    columns = ["family", "re(point)", "im(point)", "re(star)", "im(star)", "re(moyal)", "im(moyal)"]
    rows, dims = [], {}
    for fam in families_from_args(args):
        grid = grid_from_args(args, fam)
        d = dim_for(args, params, fam, grid)
        dims[fam.value] = d
        space = FockSpace(d)
        A, B = compile_expr(ea, params, space), compile_expr(eb, params, space)
        for z in grid:
            s = star.star(A, B, fam, params, z)
            m = star.moyal(A, B, fam, params, z)
            rows.append([fam.value, z.real, z.imag, s.real, s.imag, m.real, m.imag])
    _emit(args, columns, rows, _meta(args, params, {"dim": dims, "A": args.A, "B": args.B}))
    return 0


def cmd_convergence(args, params):
    dims = [int(d) for d in _floats(args.dims)]
    if any(d < 8 for d in dims):
        raise ConfigError("all --dims must be >= 8")
    columns = ["family", "identity_name", "dim", "corrected_residual", "paper_residual"]
    rows = []
    for fam in families_from_args(args):
        grid = grid_from_args(args, fam)
        for d in dims:
            rep = star.run_identity_suite(fam, params, FockSpace(d), grid, tol=args.tol)
            for name in rep.identities():
                rows.append([fam.value, name, d, rep.worst(name), rep.worst(name, "paper")])
    _emit(args, columns, rows, _meta(args, params, {"dims": dims}))
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("spectrum")
    g.add_argument("--preset", choices=PRESETS)
    g.add_argument("--k", type=float, help="Poschl-Teller k")
    g.add_argument("--kp", type=float, help="Poschl-Teller k'")
    g.add_argument("--eps", type=float, help="anharmonic coupling")
    g.add_argument("--a", type=float, help="quadratic coefficient (instead of --preset)")
    g.add_argument("--b", type=float, help="linear coefficient (instead of --preset)")
    common.add_argument("--dim", type=int, default=None, help="Fock dimension (default 64, raised for PK)")
    common.add_argument("--family", choices=["gk", "pk", "both"], default="both")
    common.add_argument("--moduli", help="comma-separated grid moduli")
    common.add_argument("--angles", type=int, default=star.GRID_ANGLES)
    common.add_argument("--z", action="append", help="explicit grid point (repeatable), e.g. 0.5+0.2j")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--output", "-o", help="output path (default stdout)")

    parser = argparse.ArgumentParser(prog="nlstar", description="Coherent-state star products for e_n = a n^2 + b n.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("validate", parents=[common], help="run the identity suite")
    p.add_argument("--seed", type=int, default=0, help="seed for the random test polynomials")
    p = sub.add_parser("resolution", parents=[common], help="resolution-of-identity residuals")
    p.add_argument("--n-max", type=int, default=12)
    p = sub.add_parser("table", parents=[common], help="tabulate the G or D_l symbol")
    p.add_argument("--symbol", choices=["G", "D"], required=True)
    p.add_argument("--l", type=int, default=0)
    p = sub.add_parser("star-eval", parents=[common], help="star product of two operator expressions")
    p.add_argument("--A", required=True, help="operator expression, e.g. 'RL - LR'")
    p.add_argument("--B", required=True)
    p = sub.add_parser("convergence", parents=[common], help="residual versus Fock dimension")
    p.add_argument("--dims", default="16,32,64")
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "resolution": cmd_resolution,
    "table": cmd_table,
    "star-eval": cmd_star_eval,
    "convergence": cmd_convergence,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        params = params_from_args(args)
        return COMMANDS[args.command](args, params)
    except (ConfigError, ValueError) as exc:
        print(f"nlstar: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        sys.stdout = open(os.devnull, "w")
        return 0


if __name__ == "__main__":
    sys.exit(main())
