"""The JSON algebra file format.

::

    {
      "field": {"kind": "GF", "p": 5},
      "n": 3,
      "dim": 4,
      "basis": ["e1", "e2", "e3", "e4"],
      "brackets": [
        {"args": [1, 2, 3], "value": {"4": "1"}}
      ]
    }

Indices are 1-based, ``args`` strictly increasing, scalars are strings
(``"a/b"`` over Q, residues over GF(p)); omitted brackets are zero.
:func:`dumps` is canonical, so canonical text round-trips byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import NLieAlgebra, require_valid
from .errors import PreconditionError
from .linalg import FieldSpec, Subspace


def field_to_json(F: FieldSpec) -> dict:
    return {"kind": "Q"} if F.kind == "Q" else {"kind": "GF", "p": F.p}


def field_from_json(obj) -> FieldSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise PreconditionError("field must be an object with a 'kind'")
    if obj["kind"] == "Q":
        return FieldSpec.rationals()
    if obj["kind"] == "GF":
        return FieldSpec.gf(int(obj.get("p", 0)))
    raise PreconditionError(f"unknown field kind {obj['kind']!r}")


def scalar_str(x) -> str:
    return str(x)


def vector_json(v) -> list[str]:
    return [scalar_str(x) for x in v]


def subspace_json(S: Subspace) -> list[list[str]]:
    return [vector_json(v) for v in S.basis]


def to_dict(alg: NLieAlgebra) -> dict:
    brackets = []
    for key in sorted(alg.sc):
        val = {str(i + 1): scalar_str(x) for i, x in enumerate(alg.sc[key]) if x}
        brackets.append({"args": [k + 1 for k in key], "value": val})
    return {"field": field_to_json(alg.field), "n": alg.n, "dim": alg.dim,
            "basis": list(alg.basis_names), "brackets": brackets}


def dumps(alg: NLieAlgebra) -> str:
    d = to_dict(alg)
    lines = ["{"]
    lines.append(f'  "field": {json.dumps(d["field"])},')
    lines.append(f'  "n": {d["n"]},')
    lines.append(f'  "dim": {d["dim"]},')
    lines.append(f'  "basis": {json.dumps(d["basis"], ensure_ascii=False)},')
    if d["brackets"]:
        lines.append('  "brackets": [')
        rows = [f"    {json.dumps(b, ensure_ascii=False)}" for b in d["brackets"]]
        lines.append(",\n".join(rows))
        lines.append("  ]")
    else:
        lines.append('  "brackets": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_dict(obj: dict, validate: bool = True) -> NLieAlgebra:
    try:
        F = field_from_json(obj["field"])
        n, dim = int(obj["n"]), int(obj["dim"])
        basis = obj.get("basis") or [f"e{i + 1}" for i in range(dim)]
        entries = obj.get("brackets", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed algebra file: {exc}") from None
    sc = {}
    for b in entries:
        args = b.get("args")
        if not isinstance(args, list) or len(args) != n:
            raise PreconditionError(f"bracket args {args!r} must list {n} indices")
        if any(not isinstance(a, int) or not 1 <= a <= dim for a in args) or args != sorted(set(args)):
            raise PreconditionError(f"bracket args {args!r} must be strictly increasing in 1..{dim}")
        key = tuple(a - 1 for a in args)
        if key in sc:
            raise PreconditionError(f"duplicate bracket {args}")
        vec = [F.zero] * dim
        for idx, s in b.get("value", {}).items():
            i = int(idx)
            if not 1 <= i <= dim:
                raise PreconditionError(f"value index {idx} out of range")
            try:
                vec[i - 1] = F(s)
            except (ValueError, ZeroDivisionError) as exc:
                raise PreconditionError(f"bad scalar {s!r}: {exc}") from None
        if any(vec):
            sc[key] = tuple(vec)
    alg = NLieAlgebra(F, n, dim, dict(sorted(sc.items())), tuple(basis))
    return require_valid(alg) if validate else alg


def loads(text: str, validate: bool = True) -> NLieAlgebra:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"not JSON: {exc}") from None
    return from_dict(obj, validate)


def load(path, validate: bool = True) -> NLieAlgebra:
    return loads(Path(path).read_text(encoding="utf-8"), validate)


def save(alg: NLieAlgebra, path) -> None:
    Path(path).write_text(dumps(alg), encoding="utf-8")
