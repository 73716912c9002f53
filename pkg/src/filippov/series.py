"""Derived, lower central and embedded series, and the predicates built on them."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import (
    NLieAlgebra,
    _require_ideal,
    inner_derivation,
    product_subspaces,
    repeat,
)
from .errors import PreconditionError
from .lattice import DEFAULT_BUDGET, LatticeBudget, enumerate_ideals
from .linalg import Subspace, is_nilpotent_matrix


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    terms: tuple[Subspace, ...]
    terminated_at_zero: bool
    k: int | None = None

    @property
    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]


def _run(alg: NLieAlgebra, start: Subspace, step, kind: str, k=None) -> SeriesReport:
    terms = [start]
    for _ in range(alg.dim + 1):
        if terms[-1].is_zero():
            break
        nxt = step(terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return SeriesReport(kind, tuple(terms), terms[-1].is_zero(), k)


def derived_series(alg: NLieAlgebra) -> SeriesReport:
    """``L^(0) = L``, ``L^(s+1) = [n L^(s)]``."""
    return _run(alg, alg.full, lambda T: product_subspaces(alg, repeat(alg.n, T)), "derived")


def is_soluble(alg: NLieAlgebra) -> bool:
    return derived_series(alg).terminated_at_zero


def lower_central_series(alg: NLieAlgebra) -> SeriesReport:
    """``L^1 = L``, ``L^(s+1) = [L^s, (n-1)L]``."""
    return _run(alg, alg.full,
                lambda T: product_subspaces(alg, [T] + repeat(alg.n - 1, alg.full)), "lower_central")


def is_nilpotent(alg: NLieAlgebra) -> bool:
    return lower_central_series(alg).terminated_at_zero


def _check_k(alg, K, k):
    if not 2 <= k <= alg.n:
        raise PreconditionError(f"k must lie in 2..{alg.n}")
    _require_ideal(alg, K)


def k_soluble_embedded_series(alg: NLieAlgebra, K: Subspace, k: int) -> SeriesReport:
    """``K^(s+1,k) = [k K^(s,k), (n-k) L]``."""
    _check_k(alg, K, k)
    return _run(alg, K,
                lambda T: product_subspaces(alg, repeat(k, T) + repeat(alg.n - k, alg.full)),
                "k_soluble_embedded", k)


def is_k_solubly_embedded(alg: NLieAlgebra, K: Subspace, k: int) -> bool:
    return k_soluble_embedded_series(alg, K, k).terminated_at_zero


def k_nilpotent_series(alg: NLieAlgebra, K: Subspace, k: int) -> SeriesReport:
    """``K^(s+1,k) = [K^(s,k), (k-1) K, (n-k) L]``."""
    _check_k(alg, K, k)
    return _run(alg, K,
                lambda T: product_subspaces(alg, [T] + repeat(k - 1, K) + repeat(alg.n - k, alg.full)),
                "k_nilpotent_embedded", k)


def is_k_nilpotently_embedded(alg: NLieAlgebra, K: Subspace, k: int) -> bool:
    return k_nilpotent_series(alg, K, k).terminated_at_zero


def k_radical(alg: NLieAlgebra, k: int, budget: LatticeBudget = DEFAULT_BUDGET,
              ideals: list[Subspace] | None = None) -> Subspace:
    """Sum of all k-solubly embedded ideals, found by scanning the ideal lattice."""
    if not 2 <= k <= alg.n:
        raise PreconditionError(f"k must lie in 2..{alg.n}")
    ids = enumerate_ideals(alg, budget) if ideals is None else ideals
    rad = alg.zero_space
    for I in ids:
        if not I <= rad and is_k_solubly_embedded(alg, I, k):
            rad = rad + I
    return rad


@dataclass(frozen=True)
class NilpotencyVerdict:
    generator: bool
    sampled: bool
    seed: int
    samples: int
    witness: tuple | None = None

    def __bool__(self):
        return self.generator and self.sampled


def random_element(alg: NLieAlgebra, rng: random.Random):
    return tuple(alg.field.random(rng) for _ in range(alg.dim))


def all_string_derivations_nilpotent(alg: NLieAlgebra, samples: int = 200, seed: int = 0) -> NilpotencyVerdict:
    """Nilpotency of ``D(x)`` on basis strings, and separately on seeded random strings.

    Nilpotency is not closed under sums, so the two verdicts are reported apart;
    the sampled one is evidence, not proof.
    """
    F = alg.field
    witness = None
    generator = True
    for tup, m in alg.basis_derivations.items():
        if not is_nilpotent_matrix(F, m):
            generator = False
            witness = tuple(alg.e(i) for i in tup)
            break
    rng = random.Random(seed)
    sampled = True
    for _ in range(samples):
        string = tuple(random_element(alg, rng) for _ in range(alg.n - 1))
        if not is_nilpotent_matrix(F, inner_derivation(alg, string).matrix):
            sampled = False
            witness = witness or string
            break
    return NilpotencyVerdict(generator, sampled, seed, samples, witness)


def basis_strings(alg: NLieAlgebra):
    return list(itertools.combinations(range(alg.dim), alg.n - 1))
