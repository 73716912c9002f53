"""Exhaustive subspace-lattice scans over small prime fields.

Subspaces are generated once each, straight from their RREF templates (pivot
set times free entries), so no vector enumeration or deduplication is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

from .core import NLieAlgebra, is_ideal, is_subalgebra
from .errors import UnsupportedError
from .linalg import FieldSpec, Subspace


@dataclass(frozen=True)
class LatticeBudget:
    max_points: int = 2**20
    max_subspaces: int = 2**22


DEFAULT_BUDGET = LatticeBudget()


def gaussian_binomial(d: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of ``GF(q)^d``."""
    if k < 0 or k > d:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(d: int, q: int) -> int:
    return sum(gaussian_binomial(d, k, q) for k in range(d + 1))


def check_budget(F: FieldSpec, d: int, budget: LatticeBudget = DEFAULT_BUDGET) -> None:
    if not F.is_finite:
        raise UnsupportedError("lattice enumeration needs a finite field")
    if F.p ** d > budget.max_points:
        raise UnsupportedError(f"{F.p}^{d} points exceed the budget of {budget.max_points}")
    if subspace_count(d, F.p) > budget.max_subspaces:
        raise UnsupportedError(f"subspace count of GF({F.p})^{d} exceeds the budget")


def subspaces_of_dim(F: FieldSpec, d: int, k: int):
    """Yield every ``k``-dimensional subspace of ``F^d`` in canonical form."""
    p = F.p
    for pivots in itertools.combinations(range(d), k):
        pivset = set(pivots)
        free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, d) if j not in pivset]
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield Subspace(F, d, tuple(tuple(r) for r in rows))


def enumerate_subspaces(F: FieldSpec, d: int, budget: LatticeBudget = DEFAULT_BUDGET):
    check_budget(F, d, budget)
    out = []
    for k in range(d + 1):
        out.extend(sorted(subspaces_of_dim(F, d, k), key=lambda s: s.basis))
    return out


def subspaces_within(S: Subspace, budget: LatticeBudget = DEFAULT_BUDGET):
    """Every subspace of ``S`` (enumerated in S-coordinates and mapped back)."""
    inner = enumerate_subspaces(S.field, S.dim, budget)
    return [Subspace.span(S.field, S.ambient_dim, [S.from_coordinates(v) for v in T.basis]) for T in inner]


def enumerate_subalgebras(alg: NLieAlgebra, budget: LatticeBudget = DEFAULT_BUDGET) -> list[Subspace]:
    return [s for s in enumerate_subspaces(alg.field, alg.dim, budget) if is_subalgebra(alg, s)]


def enumerate_ideals(alg: NLieAlgebra, budget: LatticeBudget = DEFAULT_BUDGET) -> list[Subspace]:
    return [s for s in enumerate_subspaces(alg.field, alg.dim, budget) if is_ideal(alg, s)]


def maximal_elements(spaces, proper_in: Subspace | None = None) -> list[Subspace]:
    """Inclusion-maximal members (excluding ``proper_in`` itself when given)."""
    cands = [s for s in spaces if proper_in is None or s != proper_in]
    cands.sort(key=lambda s: -s.dim)
    found: list[Subspace] = []
    for s in cands:
        if not any(s <= m for m in found):
            found.append(s)
    return sorted(found, key=lambda s: (s.dim, s.basis))


def minimal_elements(spaces) -> list[Subspace]:
    """Inclusion-minimal members among the nonzero ones."""
    cands = sorted((s for s in spaces if not s.is_zero()), key=lambda s: s.dim)
    found: list[Subspace] = []
    for s in cands:
        if not any(m <= s for m in found):
            found.append(s)
    return sorted(found, key=lambda s: (s.dim, s.basis))


def maximal_subalgebras(alg: NLieAlgebra, budget: LatticeBudget = DEFAULT_BUDGET,
                        subalgebras: list[Subspace] | None = None) -> list[Subspace]:
    subs = enumerate_subalgebras(alg, budget) if subalgebras is None else subalgebras
    return maximal_elements(subs, proper_in=alg.full)


def frattini(alg: NLieAlgebra, budget: LatticeBudget = DEFAULT_BUDGET,
             maximals: list[Subspace] | None = None) -> Subspace:
    """Intersection of the maximal subalgebras (L itself when there are none)."""
    ms = maximal_subalgebras(alg, budget) if maximals is None else maximals
    return reduce(lambda a, b: a & b, ms, alg.full)


def minimal_ideals(alg: NLieAlgebra, budget: LatticeBudget = DEFAULT_BUDGET,
                   ideals: list[Subspace] | None = None) -> list[Subspace]:
    ids = enumerate_ideals(alg, budget) if ideals is None else ideals
    return minimal_elements(ids)
