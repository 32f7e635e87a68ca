"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 for usage, parse and input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import AlgebraTable, check_leibniz, check_lie
from .catalog import CATALOG, by_name, diamond_labels, heisenberg_labels
from .exactmath import scalar_from_json
from .extensions import (
    Cocycle,
    ExtensionProblem,
    build_extension,
    cohomology,
    restriction_violations,
    theorem2_table,
)
from .reps import (
    MatrixRep,
    ModuleAction,
    action_table_sl,
    action_table_sp,
    check_faithful,
    check_rep_homomorphism,
    check_right_module,
    check_traceless,
    phi_sl,
    phi_sp,
)

MODULES = {"sl-natural": action_table_sl, "sp-natural": action_table_sp}


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _need_m(args) -> int:
    if args.m is None:
        raise UsageError("--m is required")
    if args.m < 1:
        raise UsageError("--m must be at least 1")
    return args.m


def _resolve_algebra(spec, m: int | None) -> AlgebraTable:
    """A catalog name (needs ``m``), a path to Algebra JSON, or an already-parsed object."""
    if isinstance(spec, dict):
        return AlgebraTable.from_json(spec)
    if spec in CATALOG:
        if m is None or m < 1:
            raise UsageError(f"catalog algebra {spec!r} needs --m >= 1")
        return by_name(spec, m)
    return AlgebraTable.from_json(_load_json(spec))


def _resolve_module(spec, algebra: AlgebraTable, m: int | None) -> ModuleAction:
    if isinstance(spec, dict):
        return ModuleAction.from_json(spec, algebra)
    if spec in MODULES:
        if m is None or m < 1:
            raise UsageError(f"catalog module {spec!r} needs --m >= 1")
        act = MODULES[spec](m)
        if act.algebra != algebra:
            raise UsageError(f"module {spec!r} is not over the given quotient algebra")
        return act
    return ModuleAction.from_json(_load_json(spec), algebra)


def _infer_algebra(labels: list[str]) -> AlgebraTable:
    """Match a label list against the catalog."""
    n = len(labels)
    if n >= 4 and n % 2 == 0:
        m = (n - 2) // 2
        if tuple(labels) == diamond_labels(m, complex_basis=True):
            return by_name("diamond-complex", m)
        if tuple(labels) == diamond_labels(m):
            return by_name("diamond-real", m)
    if n >= 3 and n % 2 == 1:
        m = (n - 1) // 2
        if tuple(labels) == heisenberg_labels(m):
            return by_name("heisenberg", m)
    raise UsageError("cannot infer the algebra from its labels; pass --algebra")


def _report(checks: list, out: str | None = None) -> int:
    passed = all(c.passed for c in checks)
    _emit(dumps({"passed": passed, "checks": [c.to_json() for c in checks]}), out)
    return 0 if passed else 1


# -- commands -------------------------------------------------------------
def cmd_gen(args) -> int:
    m = _need_m(args)
    if args.name not in CATALOG:
        raise UsageError(f"unknown algebra {args.name!r}; choose from {sorted(CATALOG)}")
    _emit(dumps(by_name(args.name, m).to_json()), args.out)
    return 0


def _rep_checks(rep: MatrixRep) -> list:
    return [check_rep_homomorphism(rep), check_faithful(rep), check_traceless(rep)]


def cmd_verify(args) -> int:
    obj = _load_json(args.file)
    if not isinstance(obj, dict):
        raise UsageError("expected a JSON object")
    wanted = set(args.checks.split(",")) if args.checks else None
    unknown = (wanted or set()) - {"leibniz", "lie", "rep", "module"}
    if unknown:
        raise UsageError(f"unknown checks: {sorted(unknown)}")
    checks = []
    if "table" in obj:
        algebra = AlgebraTable.from_json(obj)
        wanted = wanted or {"leibniz"}
        if "leibniz" in wanted:
            checks.append(check_leibniz(algebra))
        if "lie" in wanted:
            checks.append(check_lie(algebra))
        if wanted & {"rep", "module"}:
            raise UsageError("rep/module checks need a representation or action file")
    elif "images" in obj:
        if wanted and wanted - {"rep"}:
            raise UsageError("only the rep check applies to a representation file")
        algebra = (
            _resolve_algebra(args.algebra, args.m) if args.algebra else _infer_algebra(obj.get("algebra", []))
        )
        checks.extend(_rep_checks(MatrixRep.from_json(obj, algebra)))
    elif "entries" in obj:
        if wanted and wanted - {"module"}:
            raise UsageError("only the module check applies to an action file")
        if not args.algebra:
            raise UsageError("an action file needs --algebra")
        algebra = _resolve_algebra(args.algebra, args.m)
        checks.append(check_right_module(ModuleAction.from_json(obj, algebra)))
    else:
        raise UsageError("unrecognized JSON document")
    return _report(checks, args.out)


def cmd_rep(args) -> int:
    if args.kind == "verify":
        if not args.file:
            raise UsageError("rep verify needs a file")
        args.checks = "rep"
        return cmd_verify(args)
    m = _need_m(args)
    rep = phi_sl(m) if args.kind == "sl" else phi_sp(m)
    if args.action:
        from .reps import module_from_rep

        _emit(dumps(module_from_rep(rep).to_json()), args.out)
    else:
        _emit(dumps(rep.to_json()), args.out)
    return 0


def _parse_pairs(items: list[str] | None, name: str) -> dict:
    out = {}
    for item in items or []:
        try:
            key, val = item.split("=")
            k, s = (int(x) for x in key.split(","))
            out[(k, s)] = Fraction(val)
        except ValueError:
            raise UsageError(f"--{name} expects k,s=value, got {item!r}") from None
    return out


def _complete(params: dict, m: int, sign: int) -> list[list[Fraction]]:
    grid = [[Fraction(0)] * m for _ in range(m)]
    for (k, s), v in params.items():
        if not (1 <= k <= m and 1 <= s <= m):
            raise UsageError(f"index ({k},{s}) out of range for m={m}")
        grid[k - 1][s - 1] = v
    for (k, s), v in params.items():
        if (s, k) not in params:
            grid[s - 1][k - 1] = sign * v
    return grid


def cmd_ext(args) -> int:
    if args.action == "solve":
        if not (args.quotient and args.module):
            raise UsageError("ext solve needs --quotient and --module")
        G = _resolve_algebra(args.quotient, args.m)
        act = _resolve_module(args.module, G, args.m)
        try:
            P = ExtensionProblem(G, act)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        _emit(dumps(cohomology(P).to_json()), args.out)
        return 0
    if args.action == "build":
        if not args.cocycle:
            raise UsageError("ext build needs --cocycle")
        doc = _load_json(args.cocycle)
        m = doc.get("m", args.m)
        G = _resolve_algebra(doc["quotient"], m)
        act = _resolve_module(doc["module"], G, m)
        try:
            P = ExtensionProblem(G, act)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        n = P.module_dim
        values = {}
        for i, j, vec in doc.get("omega", []):
            if len(vec) != n:
                raise UsageError(f"omega({i},{j}) must have {n} components")
            values[(int(i), int(j))] = [scalar_from_json(x) for x in vec]
        _emit(dumps(build_extension(P, Cocycle.from_values(P, values)).to_json()), args.out)
        return 0
    if args.action == "theorem2":
        m = _need_m(args)
        b = _complete(_parse_pairs(args.b, "b"), m, -1)
        c = _complete(_parse_pairs(args.c, "c"), m, 1)
        bad = restriction_violations(m, b, c)
        if bad:
            raise UsageError("parameter restriction violated: " + "; ".join(bad))
        table = theorem2_table(m, Fraction(args.a1), b, c)
        _emit(dumps(table.to_json()), args.out)
        return 0
    raise UsageError(f"unknown ext action {args.action!r}")


def cmd_export(args) -> int:
    obj = _load_json(args.file)
    if not isinstance(obj, dict):
        raise UsageError("expected a JSON object")
    if "table" in obj:
        canon = AlgebraTable.from_json(obj)
        if args.format == "latex":
            _emit(_latex_table(canon), args.out)
            return 0
        _emit(dumps(canon.to_json()), args.out)
    elif "images" in obj:
        algebra = _resolve_algebra(args.algebra, args.m) if args.algebra else _infer_algebra(obj.get("algebra", []))
        rep = MatrixRep.from_json(obj, algebra)
        if args.format == "latex":
            _emit(_latex_rep(rep), args.out)
            return 0
        _emit(dumps(rep.to_json()), args.out)
    elif "entries" in obj:
        if not args.algebra:
            raise UsageError("an action file needs --algebra")
        act = ModuleAction.from_json(obj, _resolve_algebra(args.algebra, args.m))
        _emit(dumps(act.to_json()), args.out)
    else:
        raise UsageError("unrecognized JSON document")
    return 0


def _latex_table(A: AlgebraTable) -> str:
    lines = []
    for (i, j), terms in sorted(A.table.items()):
        rhs = " + ".join(f"({c}) {A.labels[k]}" for k, c in terms)
        lines.append(f"[{A.labels[i]}, {A.labels[j]}] = {rhs} \\\\")
    return "\n".join(lines) + "\n"


def _latex_rep(rep: MatrixRep) -> str:
    out = []
    for lab, img in zip(rep.algebra.labels, rep.images):
        body = " \\\\ ".join(" & ".join(str(x) for x in row) for row in img.entries)
        out.append(f"\\varphi({lab}) = \\begin{{pmatrix}} {body} \\end{{pmatrix}}")
    return "\n".join(out) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, default=None, help="Diamond/Heisenberg index m >= 1")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "latex"), default="json")

    parser = argparse.ArgumentParser(
        prog="leibniz-diamond",
        description="Diamond Lie algebras, their representations and Leibniz extensions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="emit a catalog algebra as JSON")
    p.add_argument("name", help="diamond-real | diamond-complex | heisenberg")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="run checkers on a JSON file")
    p.add_argument("file")
    p.add_argument("--checks", default=None, help="comma list of leibniz,lie,rep,module")
    p.add_argument("--algebra", default=None, help="algebra file or catalog name")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rep", parents=[common], help="emit or verify a representation")
    p.add_argument("kind", choices=("sl", "sp", "verify"))
    p.add_argument("file", nargs="?")
    p.add_argument("--action", action="store_true", help="emit the induced module action instead")
    p.add_argument("--algebra", default=None)
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("ext", parents=[common], help="cohomology and extensions")
    p.add_argument("action", choices=("solve", "build", "theorem2"))
    p.add_argument("--quotient", default=None, help="algebra file or catalog name")
    p.add_argument("--module", default=None, help="action file or sl-natural | sp-natural")
    p.add_argument("--cocycle", default=None, help="cocycle JSON for ext build")
    p.add_argument("--a1", default="0")
    p.add_argument("--b", action="append", help="k,s=value (repeatable)")
    p.add_argument("--c", action="append", help="k,s=value (repeatable)")
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("export", parents=[common], help="re-emit a JSON file canonically")
    p.add_argument("file")
    p.add_argument("--algebra", default=None)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
