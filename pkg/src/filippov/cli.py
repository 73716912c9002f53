"""Command-line interface.

Exit codes: 0 success, 1 mathematical negative or counterexample, 2 usage or
malformed input, 3 unsupported (field too small, budget exceeded).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import __version__
from .catalog import CATALOG, catalog, corpus_members
from .conjugacy import apply, complement_intersection_zero, conjugate_complements, primitive_split, random_a_inner
from .core import (
    NLieAlgebra,
    center,
    derived_product,
    is_abelian_embedded,
    is_ideal,
    validate_jacobi,
)
from .engel import engel_witness, is_cartan, is_engel_subalgebra, minimal_engel_descent, self_normalizing_above
from .errors import FilippovError, PreconditionError, UnsupportedError, VerificationError
from .fileio import dumps, field_to_json, loads, save, subspace_json, vector_json
from .lattice import LatticeBudget, frattini, maximal_subalgebras
from .linalg import FieldSpec, Subspace
from .series import (
    derived_series,
    is_k_solubly_embedded,
    is_nilpotent,
    is_soluble,
    k_nilpotent_series,
    k_soluble_embedded_series,
    lower_central_series,
)
from .theorems import parse_items, theorem_suite

SCHEMA = "filippov.report/1"


class _Negative(Exception):
    """A well-formed answer that is mathematically negative (exit 1)."""

    def __init__(self, result):
        super().__init__("negative")
        self.result = result


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def parse_vector(alg: NLieAlgebra, text: str):
    """``e3`` or a comma-separated coordinate list such as ``0,0,1``."""
    t = text.strip()
    if t.startswith("e") and t[1:].isdigit():
        i = int(t[1:])
        if not 1 <= i <= alg.dim:
            raise PreconditionError(f"basis index {t} out of range")
        return alg.e(i - 1)
    if t in alg.basis_names:
        return alg.e(alg.basis_names.index(t))
    parts = [p for p in t.split(",")]
    if len(parts) != alg.dim:
        raise PreconditionError(f"vector {text!r} needs {alg.dim} coordinates")
    try:
        return tuple(alg.field(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"bad vector {text!r}: {exc}") from None


def parse_subspace(alg: NLieAlgebra, text: str) -> Subspace:
    """Vectors separated by ``;``; an empty string is the zero subspace."""
    vecs = [parse_vector(alg, v) for v in text.split(";") if v.strip()]
    return alg.span(vecs)


def parse_params(text: str) -> dict:
    out = {}
    for item in (text or "").split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise PreconditionError(f"parameter {item!r} must look like name=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = int(v)
        except ValueError:
            raise PreconditionError(f"parameter {k.strip()} must be an integer") from None
    return out


def _budget(args) -> LatticeBudget:
    return LatticeBudget(max_points=args.budget) if args.budget else LatticeBudget()


def _load(args) -> NLieAlgebra:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise PreconditionError(f"cannot read {args.file}: {exc.strerror}") from None
    alg = loads(text, validate=False)
    if not args.no_validate:
        rep = validate_jacobi(alg, fail_fast=True)
        if not rep.ok:
            raise _Negative(_jacobi_result(rep))
    return alg


def _jacobi_result(rep) -> dict:
    res = {"valid": rep.ok, "checked": rep.checked}
    if rep.violations:
        v = rep.violations[0]
        res["defect"] = {"x": [k + 1 for k in v.x], "y": [k + 1 for k in v.y],
                         "value": _vec(v.defect)}
    return res


class _Span(list):
    """A subspace basis; serializes as a plain list, renders as ``span(...)``."""


class _Vec(list):
    """A vector; serializes as a plain list, renders as ``(a, b, ...)``."""


def _span(S: Subspace) -> _Span:
    return _Span(_Vec(v) for v in subspace_json(S))


def _vec(v) -> _Vec:
    return _Vec(vector_json(v))


def _series_json(rep) -> dict:
    return {"kind": rep.kind, "k": rep.k, "terminated_at_zero": rep.terminated_at_zero,
            "dims": rep.dims, "terms": [_span(t) for t in rep.terms]}


# ---------------------------------------------------------------------------
# subcommands: each returns (result dict, exit code)
# ---------------------------------------------------------------------------

def cmd_validate(args):
    alg = loads(Path(args.file).read_text(encoding="utf-8"), validate=False)
    rep = validate_jacobi(alg, fail_fast=False)
    res = _jacobi_result(rep)
    res["violations"] = len(rep.violations)
    return res, 0 if rep.ok else 1


def cmd_info(args):
    alg = _load(args)
    res = {"field": field_to_json(alg.field), "n": alg.n, "dim": alg.dim,
           "basis": list(alg.basis_names), "nonzero_brackets": len(alg.sc),
           "center_dim": center(alg).dim, "derived_dim": derived_product(alg).dim,
           "soluble": is_soluble(alg), "nilpotent": is_nilpotent(alg),
           "two_soluble": alg.n >= 2 and is_k_solubly_embedded(alg, alg.full, 2)}
    return res, 0


def cmd_series(args):
    alg = _load(args)
    if args.kind == "derived":
        rep = derived_series(alg)
    elif args.kind == "lower":
        rep = lower_central_series(alg)
    else:
        K = parse_subspace(alg, args.ideal) if args.ideal is not None else alg.full
        fn = k_soluble_embedded_series if args.kind == "k-soluble" else k_nilpotent_series
        rep = fn(alg, K, args.k)
    return _series_json(rep), 0


def cmd_engel(args):
    alg = _load(args)
    try:
        idx = [int(s) for s in args.string.split(",")]
    except ValueError:
        raise PreconditionError("--string takes 1-based basis indices such as 1,2") from None
    if len(idx) != alg.n - 1 or any(not 1 <= i <= alg.dim for i in idx):
        raise PreconditionError(f"--string needs {alg.n - 1} indices in 1..{alg.dim}")
    w = engel_witness(alg, [alg.e(i - 1) for i in idx])
    res = {"string": idx, "engel_set": _span(w.engel_set), "dim": w.engel_set.dim,
           "certified": is_engel_subalgebra(alg, w),
           "self_normalizing": self_normalizing_above(alg, w.engel_set, w.engel_set)}
    return res, 0


def cmd_cartan(args):
    alg = _load(args)
    w = minimal_engel_descent(alg, seed=args.seed)
    res = {"cartan": _span(w.engel_set), "dim": w.engel_set.dim,
           "history": list(w.history), "is_cartan": is_cartan(alg, w.engel_set)}
    return res, 0


def cmd_frattini(args):
    alg = _load(args)
    budget = _budget(args)
    ms = maximal_subalgebras(alg, budget)
    phi = frattini(alg, budget, ms)
    res = {"maximal_subalgebras": [_span(M) for M in ms],
           "maximal_are_ideals": [is_ideal(alg, M) for M in ms],
           "frattini": _span(phi), "dim": phi.dim}
    return res, 0


def _ideal_arg(alg, args) -> Subspace:
    A = parse_subspace(alg, args.ideal)
    if not is_ideal(alg, A) or not is_abelian_embedded(alg, A):
        raise PreconditionError("--ideal must span an abelian embedded ideal")
    return A


def cmd_split(args):
    alg = _load(args)
    A = _ideal_arg(alg, args)
    ps = primitive_split(alg, A, seed=args.seed, budget=_budget(args))
    res = {"ideal": _span(A), "complement": _span(ps.complement),
           "witness": [_vec(v) for v in ps.witness.string] if ps.witness else None,
           "scanned": ps.scanned}
    return res, 0


def cmd_conjugate(args):
    alg = _load(args)
    A = _ideal_arg(alg, args)
    ps = primitive_split(alg, A, seed=args.seed, budget=_budget(args))
    if ps.witness is None:
        raise PreconditionError("the ideal is the whole algebra; nothing to conjugate")
    U = ps.complement
    if args.complement is not None:
        V = parse_subspace(alg, args.complement)
    else:
        V = apply(alg, random_a_inner(alg, A, random.Random(args.seed)), U)
    alpha = conjugate_complements(alg, A, U, V, ps.witness)
    inter = complement_intersection_zero(alg, A, U, ps.witness)
    res = {"U": _span(U), "V": _span(V),
           "alpha": [_vec(r) for r in alpha.matrix],
           "factors": len(alpha.factors or ()), "intersection_zero": inter.zero,
           "thetas": len(inter.thetas)}
    return res, 0 if inter.zero else 1


def cmd_theorems(args):
    try:
        items = parse_items(args.suite)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    args_nv = argparse.Namespace(**{**vars(args), "no_validate": True})
    alg = _load(args_nv)
    chains = [[parse_subspace(alg, part) for part in c.split("|")] for c in args.chain or []]
    rep = theorem_suite(alg, _budget(args), args.seed, chains, items)
    return rep.to_dict(), 0 if rep.ok else 1


def cmd_catalog(args):
    if args.name is None:
        return {"names": {k: list(v.params) for k, v in sorted(CATALOG.items())}}, 0
    alg = catalog(args.name, parse_params(args.params), FieldSpec.parse(args.field))
    text = dumps(alg)
    if args.output:
        save(alg, args.output)
        return {"written": args.output, "n": alg.n, "dim": alg.dim}, 0
    return {"algebra": json.loads(text), "_text": text}, 0


def cmd_corpus(args):
    F = FieldSpec.parse(args.field)
    arities = tuple(int(a) for a in args.arities.split(","))
    members = corpus_members(args.seed, F, args.max_dim, arities, args.count)
    listing = []
    outdir = Path(args.output) if args.output else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    for i, m in enumerate(members):
        entry = {"index": i, "name": m.name, "n": m.algebra.n, "dim": m.algebra.dim}
        if outdir:
            path = outdir / f"{i:04d}.json"
            save(m.algebra, path)
            entry["file"] = str(path)
        listing.append(entry)
    return {"field": field_to_json(F), "seed": args.seed, "members": listing}, 0


COMMANDS = {
    "validate": cmd_validate, "info": cmd_info, "series": cmd_series, "engel": cmd_engel,
    "cartan": cmd_cartan, "frattini": cmd_frattini, "split": cmd_split,
    "conjugate": cmd_conjugate, "theorems": cmd_theorems, "catalog": cmd_catalog,
    "corpus": cmd_corpus,
}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _text(value, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    items = value.items() if isinstance(value, dict) else ((None, v) for v in value)
    for k, v in items:
        head = f"{pad}{k}:" if k is not None else f"{pad}-"
        if isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], (dict, _Span))):
            lines.append(head)
            lines.extend(_text(v, indent + 1))
        else:
            lines.append(f"{head} {_inline(v)}")
    return lines


def _inline(v) -> str:
    if isinstance(v, _Span):
        return "span(" + ", ".join(_inline(r) for r in v) + ")" if v else "0"
    if isinstance(v, _Vec):
        return "(" + ", ".join(v) + ")"
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return str(v)


def _emit(command: str, result: dict, code: int, fmt: str, out) -> None:
    raw_text = result.pop("_text", None)
    if fmt == "json":
        report = {"schema": SCHEMA, "command": command, "exit_code": code, "result": result}
        out.write(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    elif raw_text is not None:
        out.write(raw_text)
    else:
        out.write("\n".join(_text(result)) + "\n")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
    common.add_argument("--budget", type=int, default=None,
                        help="cap on p^dim for lattice scans (default 2^20)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--no-validate", action="store_true", help="skip the Jacobi check on load")
    common.add_argument("--jobs", type=int, default=1,
                        help="accepted for compatibility; scans run in one process")

    p = argparse.ArgumentParser(prog="filippov", description="Exact computations with n-Lie algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, file=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if file:
            sp.add_argument("file", help="algebra file (JSON)")
        return sp

    add("validate", "check the Jacobi identity")
    add("info", "basic invariants")
    sp = add("series", "derived, lower central or embedded series")
    sp.add_argument("--kind", choices=("derived", "lower", "k-soluble", "k-nilpotent"), default="derived")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--ideal", help="ideal K for the embedded series (default L)")
    sp = add("engel", "Engel set of D(e_i, e_j, ...)")
    sp.add_argument("--string", required=True, help="1-based basis indices, e.g. 1,2")
    add("cartan", "Cartan subalgebra by minimal-Engel descent")
    add("frattini", "maximal subalgebras and their intersection")
    sp = add("split", "complement to a self-centralizing minimal abelian embedded ideal")
    sp.add_argument("--ideal", required=True, help="spanning vectors, e.g. 'e3' or '0,0,1;e2'")
    sp = add("conjugate", "conjugate two complements by an A-inner automorphism")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--complement", help="second complement V (default: a seeded conjugate)")
    sp = add("theorems", "run the theorem checks")
    sp.add_argument("--suite", default="all", help="'all' or a comma list of check names")
    sp.add_argument("--chain", action="append",
                    help="subnormal chain U|W|...|L, each term as spanning vectors")
    sp = add("catalog", "write a named algebra", file=False)
    sp.add_argument("--name", choices=sorted(CATALOG))
    sp.add_argument("--params", default="", help="e.g. n=3 or n=2,d=4")
    sp.add_argument("--field", default="Q")
    sp.add_argument("-o", "--output")
    sp = add("corpus", "generate the seeded corpus", file=False)
    sp.add_argument("--field", default="GF5")
    sp.add_argument("--max-dim", type=int, default=5)
    sp.add_argument("--arities", default="2,3")
    sp.add_argument("--count", type=int)
    sp.add_argument("-o", "--output", help="directory for one file per member")
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, code = COMMANDS[args.command](args)
    except _Negative as neg:
        result, code = neg.result, 1
    except PreconditionError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except UnsupportedError as exc:
        err.write(f"unsupported: {exc}\n")
        return 3
    except VerificationError as exc:
        err.write(f"verification failed: {exc}\n")
        return 1
    except FilippovError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 2
    _emit(args.command, result, code, args.format, out)
    return code


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
