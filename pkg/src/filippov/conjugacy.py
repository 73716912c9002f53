"""A-inner automorphisms, splitting of primitive algebras and conjugacy of complements."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .core import (
    DerivationMatrix,
    NLieAlgebra,
    _require_ideal,
    centralizer,
    image_in_quotient,
    inner_derivation,
    is_abelian_embedded,
    is_ideal,
    is_subalgebra,
    preimage,
    product_subspaces,
    quotient,
    repeat,
)
from .engel import EngelWitness, engel_set
from .errors import PreconditionError, UnsupportedError, VerificationError
from .lattice import DEFAULT_BUDGET, LatticeBudget, enumerate_ideals, minimal_elements, subspaces_within
from .linalg import (
    Matrix,
    Subspace,
    coordinates_in,
    identity,
    is_nilpotent_matrix,
    is_zero_matrix,
    is_zero_vector,
    mat_add,
    mat_mul,
    mat_sub,
    mat_vec,
    rank,
    solve,
    vec_scale,
)
from .series import is_k_solubly_embedded, random_element


@dataclass(frozen=True)
class AlgebraAutomorphism:
    matrix: Matrix
    factors: tuple[tuple[tuple, tuple], ...] | None = None


def is_automorphism(alg: NLieAlgebra, m: Matrix) -> bool:
    """Invertible and compatible with the bracket on every increasing basis tuple."""
    F = alg.field
    if rank(F, m) != alg.dim:
        return False
    cols = [tuple(m[i][j] for i in range(alg.dim)) for j in range(alg.dim)]
    for x in itertools.combinations(range(alg.dim), alg.n):
        if alg.bracket(*[cols[i] for i in x]) != mat_vec(F, m, alg.basis_bracket(x)):
            return False
    return True


def apply(alg: NLieAlgebra, alpha: AlgebraAutomorphism, U: Subspace) -> Subspace:
    return U.image_under(alpha.matrix)


def _is_abelian_embedded_ideal(alg, A):
    return is_ideal(alg, A) and is_abelian_embedded(alg, A)


def a_inner_automorphism(alg: NLieAlgebra, A: Subspace, a, x: Sequence) -> AlgebraAutomorphism:
    """``1 + D(a, x_1, ..., x_{n-2})`` for ``a`` in an abelian embedded ideal ``A``."""
    if not _is_abelian_embedded_ideal(alg, A):
        raise PreconditionError("A is not an abelian embedded ideal")
    a = tuple(a)
    if a not in A:
        raise PreconditionError("a is not in A")
    if len(x) != alg.n - 2:
        raise PreconditionError(f"need {alg.n - 2} further elements")
    F = alg.field
    d = inner_derivation(alg, (a,) + tuple(tuple(v) for v in x)).matrix
    if not is_zero_matrix(mat_mul(F, d, d)):
        raise VerificationError("d^2 is not zero")
    dL = Subspace.span(F, alg.dim, [tuple(d[i][j] for i in range(alg.dim)) for j in range(alg.dim)])
    if not product_subspaces(alg, repeat(2, dL) + repeat(alg.n - 2, alg.full)).is_zero():
        raise VerificationError("[2(dL), (n-2)L] is not zero")
    m = mat_add(F, identity(F, alg.dim), d)
    if not is_automorphism(alg, m):
        raise VerificationError("1 + d is not an automorphism")
    return AlgebraAutomorphism(m, ((a, tuple(tuple(v) for v in x)),))


def compose(alg: NLieAlgebra, *autos: AlgebraAutomorphism) -> AlgebraAutomorphism:
    """Product ``autos[0] * autos[1] * ...`` (the last one acts first)."""
    F = alg.field
    m = identity(F, alg.dim)
    factors: list | None = []
    for au in autos:
        m = mat_mul(F, m, au.matrix)
        factors = None if factors is None or au.factors is None else factors + list(au.factors)
    return AlgebraAutomorphism(m, tuple(factors) if factors is not None else None)


def inverse_a_inner(alg: NLieAlgebra, alpha: AlgebraAutomorphism) -> AlgebraAutomorphism:
    """``1 - d`` for a single factor ``1 + d`` (``d^2 = 0``)."""
    F = alg.field
    I = identity(F, alg.dim)
    d = mat_sub(F, alpha.matrix, I)
    return AlgebraAutomorphism(mat_sub(F, I, d))


def is_minimal_ideal(alg: NLieAlgebra, A: Subspace, budget: LatticeBudget = DEFAULT_BUDGET) -> bool:
    if A.is_zero() or not is_ideal(alg, A):
        return False
    if not alg.field.is_finite:
        raise UnsupportedError("minimality check needs a finite field")
    return all(S.is_zero() or S == A or not is_ideal(alg, S) for S in subspaces_within(A, budget))


@dataclass(frozen=True)
class PrimitiveSplit:
    complement: Subspace
    witness: EngelWitness | None
    B: Subspace | None
    scanned: int


def primitive_split(alg: NLieAlgebra, A: Subspace, seed: int = 0, samples: int = 200,
                    budget: LatticeBudget = DEFAULT_BUDGET, assume_minimal: bool = False) -> PrimitiveSplit:
    """Complement to the self-centralizing minimal abelian embedded ideal ``A``.

    ``B/A`` is a minimal abelian embedded ideal of ``L/A``; some ``D(b, x)``
    with ``b`` in ``B`` is not nilpotent, and its Engel set complements ``A``.
    """
    if not is_k_solubly_embedded(alg, alg.full, 2):
        raise PreconditionError("L is not 2-soluble")
    if not _is_abelian_embedded_ideal(alg, A):
        raise PreconditionError("A is not an abelian embedded ideal")
    if not assume_minimal and not is_minimal_ideal(alg, A, budget):
        raise PreconditionError("A is not a minimal ideal")
    if centralizer(alg, A) != A:
        raise PreconditionError("A is not self-centralizing")
    if A.is_full():
        return PrimitiveSplit(alg.zero_space, None, None, 0)
    Q, _ = quotient(alg, A)
    candidates = [I for I in minimal_elements(enumerate_ideals(Q, budget)) if is_abelian_embedded(Q, I)]
    if not candidates:
        raise VerificationError("L/A has no minimal abelian embedded ideal")
    B = preimage(alg, A, candidates[0])

    def strings():
        for b in B.basis:
            for xs in itertools.combinations(range(alg.dim), alg.n - 2):
                yield (b,) + tuple(alg.e(i) for i in xs)
        rng = random.Random(seed)
        for _ in range(samples):
            b = B.from_coordinates([alg.field.random(rng) for _ in range(B.dim)])
            yield (b,) + tuple(random_element(alg, rng) for _ in range(alg.n - 2))

    F = alg.field
    scanned = 0
    for s in strings():
        scanned += 1
        d = inner_derivation(alg, s)
        if is_nilpotent_matrix(F, d.matrix):
            continue
        U = engel_set(alg, d, check=False)
        if not (U + A).is_full() or not (U & A).is_zero():
            raise VerificationError("Engel set of the witness does not complement A")
        return PrimitiveSplit(U, EngelWitness(d, U), B, scanned)
    raise VerificationError(f"no non-nilpotent D(b, x) among {scanned} strings")


def conjugate_complements(alg: NLieAlgebra, A: Subspace, U: Subspace, V: Subspace,
                          witness: EngelWitness) -> AlgebraAutomorphism:
    """An A-inner automorphism ``alpha`` with ``alpha(U) = V``.

    With ``x`` the witness string, ``y_i = x_i + a_i`` is the element of ``V``
    over ``x_i``; solving ``D(x) a'_i = a_i`` on ``A`` gives the factors
    ``1 + (-1)^(n-i) D(x_1..^x_i..x_{n-1}, a'_i)``.
    """
    F = alg.field
    n = alg.n
    x = witness.string
    if x is None:
        raise PreconditionError("witness must come from a single string")
    if witness.engel_set != U:
        raise PreconditionError("witness does not describe U")
    if not is_subalgebra(alg, V) or not (V + A).is_full() or not (V & A).is_zero():
        raise PreconditionError("V is not a complement to A")
    d = witness.derivation.matrix
    # d restricted to A, in A-coordinates
    dA = [A.coordinates(mat_vec(F, d, a)) for a in A.basis]
    dA_mat = tuple(tuple(dA[j][i] for j in range(A.dim)) for i in range(A.dim))
    if rank(F, dA_mat) != A.dim:
        raise PreconditionError("D(x) is not invertible on A")
    basis_VA = list(V.basis) + list(A.basis)
    factors = []
    for i in range(n - 1):
        c = coordinates_in(F, basis_VA, x[i])
        a_part = A.from_coordinates(c[V.dim:])
        a_i = vec_scale(F, F.norm(-1), a_part)  # y_i - x_i
        if is_zero_vector(a_i):
            continue
        sol = solve(F, dA_mat, A.coordinates(a_i), A.dim)
        a_prime = A.from_coordinates(sol)
        rest = x[:i] + x[i + 1:]
        # (-1)^(n-i) D(rest, a') with 1-based i equals (-1)^i D(a', rest)
        sign = F.norm((-1) ** (i + 1))
        factors.append(a_inner_automorphism(alg, A, vec_scale(F, sign, a_prime), rest))
    alpha = compose(alg, *factors) if factors else AlgebraAutomorphism(identity(F, alg.dim), ())
    if apply(alg, alpha, U) != V:
        raise VerificationError("constructed automorphism does not map U onto V")
    return alpha


@dataclass(frozen=True)
class IntersectionResult:
    zero: bool
    thetas: tuple[AlgebraAutomorphism, ...]
    intersection: Subspace


def complement_intersection_zero(alg: NLieAlgebra, A: Subspace, U: Subspace,
                                 witness: EngelWitness | None = None) -> IntersectionResult:
    """Shrink ``U`` to zero by intersecting with conjugates ``theta(U)``.

    For a nonzero ``u`` left in the running intersection, a pair ``(y, a)``
    with ``[y, u, a] != 0`` exists because ``C_L(A) = A``; then
    ``theta = 1 + D(y, a)`` moves ``u`` out of ``theta(U)``.
    """
    if centralizer(alg, A) != A:
        raise PreconditionError("A is not self-centralizing")
    F = alg.field
    inter = U
    thetas = []
    for _ in range(U.dim + 1):
        if inter.is_zero():
            break
        u = inter.basis[0]
        found = None
        for ys in itertools.combinations(range(alg.dim), alg.n - 2):
            yv = [alg.e(i) for i in ys]
            for a in A.basis:
                if not is_zero_vector(alg.bracket(*yv, u, a)):
                    found = (yv, a)
                    break
            if found:
                break
        if found is None:
            return IntersectionResult(False, tuple(thetas), inter)
        yv, a = found
        # D(y, a) = (-1)^(n-2) D(a, y)
        sign = F.norm((-1) ** (alg.n - 2))
        theta = a_inner_automorphism(alg, A, vec_scale(F, sign, a), yv)
        tU = apply(alg, theta, U)
        if u in tU:
            raise VerificationError("u survived in theta(U)")
        thetas.append(theta)
        inter = inter & tU
    return IntersectionResult(inter.is_zero(), tuple(thetas), inter)


def random_a_inner(alg: NLieAlgebra, A: Subspace, rng: random.Random, factors: int = 2) -> AlgebraAutomorphism:
    """A product of seeded random A-inner automorphisms."""
    F = alg.field
    autos = []
    for _ in range(factors):
        a = A.from_coordinates([F.random(rng) for _ in range(A.dim)])
        x = [random_element(alg, rng) for _ in range(alg.n - 2)]
        autos.append(a_inner_automorphism(alg, A, a, x))
    return compose(alg, *autos)


def induces_identity_mod(alg: NLieAlgebra, alpha: AlgebraAutomorphism, A: Subspace) -> bool:
    """``alpha`` fixes ``A`` and acts trivially on ``L/A``."""
    F = alg.field
    if apply(alg, alpha, A) != A:
        return False
    I = identity(F, alg.dim)
    diff = mat_sub(F, alpha.matrix, I)
    return all(tuple(diff[i][j] for i in range(alg.dim)) in A for j in range(alg.dim))
