"""Command-line entry point.

Exit codes: 0 pass, 1 verification failure, 2 input error. Human-readable
text goes to stdout; ``--json PATH`` writes a machine-readable report with
sorted keys so identical inputs give byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import presets
from .algebra_core import (
    AlgebraError, CartanTable, TableParseError, format_element, table_from_json, validate_table,
)
from .gaussian import format_scalar
from .charsys import PdeSpec, projected_char_system, symbolic_char_expand
from .monogenic import MonogenicFn, Point3, eval_monogenic
from .reduction import (
    THEOREM1_TOL, full_system_residuals, lemma3_independence, triple_from_json, triple_to_json,
    verify_theorem1,
)
from .verify import FdConfig, check_monogenic, pde_residual, sample_points, verify_theorem2

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_GRID = 20


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input loading
# ---------------------------------------------------------------------------


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _load_table(args, require_valid: bool = True) -> CartanTable:
    if args.preset and args.algebra:
        raise InputError("give either --preset or --algebra, not both")
    if args.preset:
        try:
            return presets.table(args.preset)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    if not args.algebra:
        raise InputError("an algebra is required: --preset NAME or --algebra FILE")
    try:
        table = table_from_json(_read_json(args.algebra), name=Path(args.algebra).stem)
    except TableParseError as exc:
        raise InputError(f"{args.algebra}: {exc}") from None
    if require_valid:
        bad = validate_table(table)
        if bad:
            raise InputError(f"{args.algebra}: invalid table: {bad[0]}")
    return table


def _load_pde(args) -> PdeSpec:
    name = args.pde or "laplace"
    if name in presets.PDES:
        return presets.PDES[name]
    try:
        return PdeSpec.from_json(_read_json(name))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{name}: bad PDE description: {exc}") from None


def _load_triple(args, table: CartanTable):
    if args.triple:
        try:
            return triple_from_json(_read_json(args.triple), table)
        except AlgebraError as exc:
            raise InputError(f"{args.triple}: {exc}") from None
    if args.preset:
        return presets.triple(args.preset)
    raise InputError("--triple FILE is required for a custom algebra")


def _load_fn(args, triple) -> MonogenicFn:
    if args.bundle:
        data = _read_json(args.bundle)
    elif args.preset:
        data = presets.example_bundle(args.preset)
    else:
        raise InputError("--bundle FILE is required for a custom algebra")
    try:
        return MonogenicFn.from_json(data, triple)
    except (AlgebraError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad function bundle: {exc}") from None


def _parse_point(text: str) -> Point3:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        vals = []
    if len(vals) != 3:
        raise InputError(f"--point expects x,y,z, got {text!r}")
    return Point3(*vals)


def _points(args, triple, default_grid: int | None) -> tuple[list[Point3], int | None]:
    if args.point and args.grid is not None:
        raise InputError("give either --point or --grid, not both")
    if args.point:
        return [_parse_point(p) for p in args.point], None
    grid = args.grid if args.grid is not None else default_grid
    if grid is None:
        raise InputError("--point x,y,z or --grid N is required")
    if grid < 1:
        raise InputError("--grid must be positive")
    return sample_points(grid, args.seed, triple), args.seed


def _emit(args, report: dict) -> None:
    if getattr(args, "json", None):
        Path(args.json).write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")


def _fd_config(args) -> FdConfig:
    tol = args.tol if args.tol is not None else float(f"{10 * args.h ** 2:.12g}")
    try:
        return FdConfig(h=args.h, tol=tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    table = _load_table(args, require_valid=False)
    bad = validate_table(table)
    title = table.name or "table"
    if bad:
        print(f"{title}: {len(bad)} violation(s)")
        for v in bad:
            print(f"  {v}")
    else:
        print(f"{title}: valid (n={table.n}, m={table.m})")
    _emit(args, {"op": "validate", "pass": not bad, "violations": [str(v) for v in bad]})
    return EXIT_FAIL if bad else EXIT_OK


def cmd_charsys(args) -> int:
    table = _load_table(args)
    pde = _load_pde(args)
    try:
        if args.project is not None:
            system = projected_char_system(table, pde, args.project)
        else:
            system = symbolic_char_expand(table, pde)
    except AlgebraError as exc:
        raise InputError(str(exc)) from None
    lines = system.lines()
    for line in lines:
        print(line)
    _emit(args, {"op": "charsys", "project": args.project, "equations": lines})
    return EXIT_OK


def cmd_check_triple(args) -> int:
    table = _load_table(args)
    pde = _load_pde(args)
    triple = _load_triple(args, table)
    exact = triple.exact
    residuals = full_system_residuals(table, pde, triple)
    system_ok = all(not v for v in residuals) if exact else all(abs(complex(v)) <= THEOREM1_TOL for v in residuals)
    print("system residuals: " + ", ".join(format_scalar(v) for v in residuals))
    units = []
    for res in verify_theorem1(table, pde, triple):
        lem = lemma3_independence(triple, res.u)
        units.append({"u": res.u, "residual_norm": res.residual_norm, "pass": res.passed,
                      "branch": lem.branch, "independent": lem.independent, "witness": lem.witness})
        verdict = "independent" if lem.independent else "dependent"
        print(f"u={res.u}: reduced residual {res.residual_norm:.3g} ({'pass' if res.passed else 'FAIL'}), "
              f"reduced triple {verdict} (branch {lem.branch})")
    ok = system_ok and all(u["pass"] for u in units)
    print("pass" if ok else "FAIL")
    _emit(args, {"op": "check-triple", "pass": ok, "exact": exact, "system_pass": system_ok, "units": units})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_eval(args) -> int:
    table = _load_table(args)
    triple = _load_triple(args, table)
    fn = _load_fn(args, triple)
    points, seed = _points(args, triple, None)
    rows = []
    for p in points:
        value = eval_monogenic(fn, p)
        text = format_element(value, table, tol=1e-12)
        rows.append({"point": list(p), "value": [[c.real, c.imag] for c in value.coeffs], "text": text})
        print(text if len(points) == 1 else f"{p.x:.6g},{p.y:.6g},{p.z:.6g}: {text}")
    _emit(args, {"op": "eval", "seed": seed, "points": rows})
    return EXIT_OK


def cmd_verify(args) -> int:
    table = _load_table(args)
    triple = _load_triple(args, table)
    fn = _load_fn(args, triple)
    points, seed = _points(args, triple, DEFAULT_GRID)
    cfg = _fd_config(args)
    reports = [check_monogenic(fn, points, cfg, seed=seed)]
    if args.pde:
        reports.append(pde_residual(fn, _load_pde(args), points, cfg, seed=seed))
    for r in reports:
        print(f"{r.op}: max residual {r.max_residual:.3e} (tol {r.tol:.1e}, h {r.h:g}, "
              f"{r.points} points) {'pass' if r.passed else 'FAIL'}")
    ok = all(r.passed for r in reports)
    _emit(args, {"op": "verify", "pass": ok, "checks": [r.to_json() for r in reports]})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_decompose(args) -> int:
    table = _load_table(args)
    triple = _load_triple(args, table)
    fn = _load_fn(args, triple)
    points, seed = _points(args, triple, DEFAULT_GRID)
    tol = args.tol if args.tol is not None else 1e-12
    report = verify_theorem2(fn, points, tol=tol, seed=seed)
    pieces = []
    for piece in report.details["reduced"]:
        rtable = piece.algebra.table
        rt = piece.fn.triple
        e2 = format_element(rt.e2, rtable)
        e3 = format_element(rt.e3, rtable)
        bundle = piece.fn.to_json()
        print(f"u={piece.u}: e2~ = {e2}, e3~ = {e3}")
        print(f"     bundle {json.dumps(bundle, sort_keys=True)}")
        pieces.append({"u": piece.u, "triple": triple_to_json(rt), "bundle": bundle})
    print(f"decomposition: max residual {report.max_residual:.3e} (tol {report.tol:.1e}, "
          f"{report.points} points) {'pass' if report.passed else 'FAIL'}")
    out = report.to_json()
    out.update({"op": "decompose", "reduced": pieces})
    _emit(args, out)
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    algebra = argparse.ArgumentParser(add_help=False)
    algebra.add_argument("--preset", choices=sorted(presets.TABLES), help="built-in algebra")
    algebra.add_argument("--algebra", metavar="FILE", help="algebra JSON")
    algebra.add_argument("--json", metavar="PATH", help="write a JSON report here")

    pde = argparse.ArgumentParser(add_help=False)
    pde.add_argument("--pde", metavar="NAME|FILE", help="'laplace' or a PDE JSON file")

    fn = argparse.ArgumentParser(add_help=False)
    fn.add_argument("--triple", metavar="FILE", help="triple JSON (default: the preset's fixture)")
    fn.add_argument("--bundle", metavar="FILE", help="function bundle JSON")
    fn.add_argument("--point", action="append", metavar="x,y,z", help="evaluation point (repeatable)")
    fn.add_argument("--grid", type=int, metavar="N", help="N seeded quasi-random points")
    fn.add_argument("--seed", type=int, default=0)

    fd = argparse.ArgumentParser(add_help=False)
    fd.add_argument("--h", type=float, default=1e-3, help="finite-difference step")
    fd.add_argument("--tol", type=float, help="acceptance threshold")

    parser = argparse.ArgumentParser(prog="monogen", description="Monogenic functions in Cartan-form algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[algebra], help="check a multiplication table")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("charsys", parents=[algebra, pde], help="print the characteristic system")
    p.add_argument("--project", type=int, metavar="u", help="system generated by the I_u component")
    p.set_defaults(func=cmd_charsys)

    p = sub.add_parser("check-triple", parents=[algebra, pde], help="check a triple and its reductions")
    p.add_argument("--triple", metavar="FILE")
    p.set_defaults(func=cmd_check_triple)

    p = sub.add_parser("eval", parents=[algebra, fn], help="evaluate a monogenic function")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", parents=[algebra, pde, fn, fd], help="finite-difference checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", parents=[algebra, fn], help="split over idempotents and compare")
    p.add_argument("--tol", type=float, help="identity tolerance (default 1e-12)")
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
