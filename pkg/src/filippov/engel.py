"""Engel subalgebras, minimal-Engel descent and Cartan subalgebras."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .core import (
    DerivationMatrix,
    NLieAlgebra,
    _require_ideal,
    _require_subalgebra,
    combine_derivations,
    derivation_span,
    embed,
    inner_derivation,
    is_derivation,
    is_subalgebra,
    normalizer,
    restrict,
)
from .errors import DescentError, PreconditionError, UnsupportedError, VerificationError
from .linalg import Subspace, fitting_split, flatten, member_of_span, rref, unflatten
from .series import is_nilpotent


@dataclass(frozen=True)
class EngelWitness:
    """A derivation together with its Engel set ``E_L(d)``.

    ``history`` records the Engel-set dimensions visited by a descent.
    """

    derivation: DerivationMatrix
    engel_set: Subspace
    history: tuple[int, ...] = field(default=(), compare=False)

    @property
    def string(self):
        """The single string behind the derivation, when there is exactly one."""
        prov = self.derivation.provenance
        if prov and len(prov) == 1 and prov[0][0] == 1:
            return prov[0][1]
        return None


def _engel_set(alg: NLieAlgebra, d) -> Subspace:
    m = d.matrix if isinstance(d, DerivationMatrix) else d
    return fitting_split(alg.field, m)[0]


def engel_set(alg: NLieAlgebra, d, check: bool = True) -> Subspace:
    """``E_L(d) = {x : d^r x = 0 for some r}``; always a subalgebra."""
    m = d.matrix if isinstance(d, DerivationMatrix) else d
    if check and not is_derivation(alg, m):
        raise PreconditionError("not a derivation")
    E = _engel_set(alg, m)
    if not is_subalgebra(alg, E):
        raise VerificationError("Engel set of a derivation is not a subalgebra")
    return E


def engel_witness(alg: NLieAlgebra, string) -> EngelWitness:
    d = inner_derivation(alg, string)
    return EngelWitness(d, engel_set(alg, d, check=False))


def is_engel_subalgebra(alg: NLieAlgebra, w: EngelWitness) -> bool:
    """The witness's set is ``E_L(d)`` and ``d`` lies in ``D(E_L(d))``."""
    E = _engel_set(alg, w.derivation)
    if E != w.engel_set:
        return False
    gens = [g.matrix for g in derivation_span(alg, E)]
    return member_of_span(alg.field, gens, w.derivation.matrix) is not None


def self_normalizing_above(alg: NLieAlgebra, E: Subspace, U: Subspace) -> bool:
    """``N_L(U) = U`` for a subalgebra ``U`` containing the Engel subalgebra ``E``."""
    if not E <= U:
        raise PreconditionError("E is not contained in U")
    _require_subalgebra(alg, U)
    return normalizer(alg, U) == U


def is_cartan(alg: NLieAlgebra, S: Subspace) -> bool:
    """Nilpotent and self-normalizing."""
    _require_subalgebra(alg, S)
    return is_nilpotent(restrict(alg, S)) and normalizer(alg, S) == S


def _check_field(alg: NLieAlgebra):
    if alg.field.cardinality < alg.dim + 1:
        raise UnsupportedError(f"{alg.field} has fewer than dim+1 = {alg.dim + 1} elements")


def _violator(alg, E, gens, rng, tries):
    for g in gens:
        if not E <= _engel_set(alg, g):
            return g
    if len(gens) < 2:
        return None
    # nilpotency is not closed under sums: probe combinations before giving up
    F = alg.field
    for _ in range(tries):
        coeffs = [F.random(rng) for _ in gens]
        c = combine_derivations(alg, coeffs, gens)
        if not E <= _engel_set(alg, c):
            return c
    return None


def minimal_engel_descent(alg: NLieAlgebra, seed: int = 0, probes: int = 20) -> EngelWitness:
    """Descend from ``D(e_1..e_{n-1})`` to a minimal Engel subalgebra.

    Each round either certifies that every generator of ``D(E)`` keeps ``E``
    inside its Engel set, or moves ``d`` along the line to a violating
    generator ``d1`` using the first of the scalars ``0, 1, ..., dim`` that
    strictly shrinks ``E``.  The result is checked to be a Cartan subalgebra.
    """
    _check_field(alg)
    if alg.dim < alg.n - 1:
        return EngelWitness(DerivationMatrix(tuple((alg.field.zero,) * alg.dim for _ in range(alg.dim)), ()),
                            alg.full, (alg.dim,))
    F = alg.field
    rng = random.Random(seed)
    d0 = inner_derivation(alg, [alg.e(i) for i in range(alg.n - 1)])
    E = _engel_set(alg, d0)
    history = [E.dim]
    lambdas = [F.element(k) for k in range(alg.dim + 1)]
    while True:
        gens = derivation_span(alg, E)
        d1 = _violator(alg, E, gens, rng, probes if not is_nilpotent(restrict(alg, E)) else 0)
        if d1 is None:
            break
        scan = []
        for lam in lambdas:
            c = combine_derivations(alg, [F.norm(1 - lam), lam], [d0, d1])
            Ec = _engel_set(alg, c)
            scan.append((lam, Ec.dim))
            if Ec < E:
                d0, E = c, Ec
                history.append(E.dim)
                break
        else:
            raise DescentError(f"no scalar shrinks the Engel set of dimension {E.dim}", scan)
    w = EngelWitness(d0, E, tuple(history))
    if not is_cartan(alg, E):
        raise VerificationError("descent ended on a subalgebra that is not Cartan")
    return w


def cartan_subalgebra(alg: NLieAlgebra, seed: int = 0) -> Subspace:
    S = minimal_engel_descent(alg, seed).engel_set
    if not is_cartan(alg, S):
        raise VerificationError("Cartan check failed")
    return S


@dataclass(frozen=True)
class IntravarianceResult:
    holds: bool
    S: Subspace
    normalizer: Subspace


def intravariance_check(alg: NLieAlgebra, K: Subspace, seed: int = 0) -> IntravarianceResult:
    """Cartan ``S`` of the ideal ``K``; does ``K + N_L(S) = L``?"""
    _require_ideal(alg, K)
    sub = restrict(alg, K)
    if alg.field.cardinality < sub.dim + 1:
        raise UnsupportedError("field too small for the ideal")
    S_local = cartan_subalgebra(sub, seed)
    S = embed(K, S_local)
    N = normalizer(alg, S)
    return IntravarianceResult((K + N).is_full(), S, N)


def certified_engel_subalgebras(alg: NLieAlgebra, derivations) -> list[Subspace]:
    """Distinct ``E_L(d)`` over the given derivations that pass the Engel certificate."""
    found = {}
    for d in derivations:
        E = _engel_set(alg, d)
        if E in found:
            continue
        if is_engel_subalgebra(alg, EngelWitness(d, E)):
            found[E] = True
    return sorted(found, key=lambda s: (s.dim, s.basis))


def all_inner_derivations(alg: NLieAlgebra):
    """Every element of ``D(L)`` over a finite field (from a basis of the span)."""
    F = alg.field
    gens = derivation_span(alg, alg.full)
    rows, r = rref(F, [flatten(g.matrix) for g in gens], alg.dim * alg.dim) if gens else ((), 0)
    basis = [DerivationMatrix(unflatten(row, alg.dim, alg.dim)) for row in rows[:r]]
    out = []
    for coeffs in itertools.product(list(F.elements()), repeat=len(basis)):
        out.append(combine_derivations(alg, list(coeffs), basis) if basis else
                   DerivationMatrix(tuple((F.zero,) * alg.dim for _ in range(alg.dim))))
    return out
