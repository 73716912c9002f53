"""Named constructions and the seeded corpus of test algebras."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from .core import (
    NLieAlgebra,
    center,
    derived_product,
    direct_sum,
    quotient,
    reduce_fix_element,
    require_valid,
)
from .errors import PreconditionError
from .linalg import FieldSpec, Subspace, unit_vector
from .repmod import LModule, adjoint_module, split_extension, validate_representation
from .series import lower_central_series


def abelian(F: FieldSpec, n: int, d: int) -> NLieAlgebra:
    """``d``-dimensional algebra with every bracket zero."""
    return NLieAlgebra(F, n, d, {})


def heis(F: FieldSpec, n: int) -> NLieAlgebra:
    """Dimension ``n+1``; the only bracket is ``[e_1, ..., e_n] = e_{n+1}``."""
    return NLieAlgebra.from_brackets(F, n, n + 1, {tuple(range(n)): unit_vector(F, n + 1, n)})


def aff(F: FieldSpec, n: int) -> NLieAlgebra:
    """Dimension ``n``; the only bracket is ``[e_1, ..., e_n] = e_n``."""
    return NLieAlgebra.from_brackets(F, n, n, {tuple(range(n)): unit_vector(F, n, n - 1)})


def cross(F: FieldSpec, n: int) -> NLieAlgebra:
    """Dimension ``n+1`` with ``[e_1, .., ^e_i, .., e_{n+1}] = (-1)^(n+1-i) e_i``."""
    d = n + 1
    br = {}
    for i in range(d):  # 0-based i is the omitted index; 1-based exponent n+1-(i+1)
        key = tuple(j for j in range(d) if j != i)
        sign = 1 if (n - i) % 2 == 0 else -1
        br[key] = tuple(F(sign) if j == i else F.zero for j in range(d))
    return NLieAlgebra.from_brackets(F, n, d, br)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple[str, ...]
    constructor: Callable


CATALOG = {
    "abelian": CatalogEntry("abelian", ("n", "d"), lambda F, n, d: abelian(F, n, d)),
    "heis": CatalogEntry("heis", ("n",), lambda F, n: heis(F, n)),
    "aff": CatalogEntry("aff", ("n",), lambda F, n: aff(F, n)),
    "cross": CatalogEntry("cross", ("n",), lambda F, n: cross(F, n)),
}


def catalog(name: str, params: dict, field: FieldSpec | None = None) -> NLieAlgebra:
    """Build and validate a named algebra; ``params`` maps parameter names to ints."""
    F = field or FieldSpec.rationals()
    entry = CATALOG.get(name)
    if entry is None:
        raise PreconditionError(f"unknown catalog name {name!r}; known: {sorted(CATALOG)}")
    params = dict(params)
    if name == "abelian":
        params.setdefault("n", 2)
    missing = [p for p in entry.params if p not in params]
    extra = [p for p in params if p not in entry.params]
    if missing or extra:
        raise PreconditionError(f"{name} takes parameters {entry.params}")
    args = [int(params[p]) for p in entry.params]
    if args[0] < 2 or any(a < 0 for a in args):
        raise PreconditionError(f"invalid parameters {params} for {name}")
    return require_valid(entry.constructor(F, *args))


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusMember:
    name: str
    algebra: NLieAlgebra


def _random_rho(alg: NLieAlgebra, vdim: int, rng: random.Random, density: float = 0.35) -> LModule:
    F = alg.field
    table = {}
    for key in itertools.combinations(range(alg.dim), alg.n - 1):
        table[key] = tuple(tuple(F.random(rng) if rng.random() < density else F.zero for _ in range(vdim))
                           for _ in range(vdim))
    return LModule.from_table(alg, vdim, table)


def random_module(alg: NLieAlgebra, vdim: int, rng: random.Random, attempts: int = 500) -> LModule | None:
    """Rejection-sample a nonzero representation; None when every attempt fails."""
    for _ in range(attempts):
        m = _random_rho(alg, vdim, rng)
        if m.rho and validate_representation(m, fail_fast=True).ok:
            return m
    return None


def structural_ideals(alg: NLieAlgebra) -> list[Subspace]:
    """Ideals available without a lattice scan: centre, ``[nL]``, lower central terms."""
    found = [center(alg), derived_product(alg)]
    found.extend(lower_central_series(alg).terms)
    out = []
    for I in found:
        if not I.is_zero() and not I.is_full() and I not in out:
            out.append(I)
    return out


def corpus_members(seed: int = 0, field: FieldSpec | None = None, max_dim: int = 5,
                   arities=(2, 3), count: int | None = None, attempts: int = 500) -> list[CorpusMember]:
    """Deterministic stream of validated algebras.

    Order: abelian algebras, the named families, direct sums, split
    extensions (adjoint and seeded random modules), quotients by structural
    ideals, and reductions of arity.  Duplicates are dropped.
    """
    F = field or FieldSpec.gf(5)
    rng = random.Random(seed)
    out: list[CorpusMember] = []
    seen = set()

    def add(name, alg):
        if alg.dim > max_dim or alg in seen:
            return
        require_valid(alg)
        seen.add(alg)
        out.append(CorpusMember(name, alg))

    for n in arities:
        for d in range(1, max_dim + 1):
            add(f"abelian(n={n},d={d})", abelian(F, n, d))
    named = []
    for n in arities:
        for fam, ctor in (("heis", heis), ("aff", aff), ("cross", cross)):
            alg = ctor(F, n)
            if alg.dim <= max_dim:
                named.append((f"{fam}({n})", alg))
                add(f"{fam}({n})", alg)
    for (na, a), (nb, b) in itertools.combinations_with_replacement(named, 2):
        if a.n == b.n:
            add(f"{na}+{nb}", direct_sum(a, b))
    for na, a in named:
        add(f"{na}+abelian(1)", direct_sum(a, abelian(F, a.n, 1)))
    for na, a in named:
        if 2 * a.dim <= max_dim:
            add(f"{na}|x ad", split_extension(adjoint_module(a)).algebra)
    bases = [(f"abelian(n={n},d={n - 1})", abelian(F, n, n - 1)) for n in arities]
    bases += [(f"abelian(n={n},d={n})", abelian(F, n, n)) for n in arities]
    bases += [(na, a) for na, a in named if a.dim < max_dim]
    for nb, base in bases:
        for vdim in range(1, max_dim - base.dim + 1):
            m = random_module(base, vdim, rng, attempts)
            if m is not None:
                add(f"{nb}|x V{vdim}", split_extension(m).algebra)
    for name, alg in [(m.name, m.algebra) for m in out]:
        for i, I in enumerate(structural_ideals(alg)):
            add(f"{name}/I{i}", quotient(alg, I)[0])
    for name, alg in [(m.name, m.algebra) for m in out]:
        if alg.n > 2 and alg.n - 1 in arities and alg.dim >= alg.n:
            add(f"{name} fix e{alg.dim}", reduce_fix_element(alg, alg.e(alg.dim - 1)))
    return out[:count] if count is not None else out


def corpus(seed: int = 0, field: FieldSpec | None = None, max_dim: int = 5,
           arities=(2, 3), count: int | None = None, attempts: int = 500) -> list[NLieAlgebra]:
    return [m.algebra for m in corpus_members(seed, field, max_dim, arities, count, attempts)]
