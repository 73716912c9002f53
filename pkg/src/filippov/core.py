"""The n-Lie algebra data model and bracket engine.

Structure constants are stored only on strictly increasing n-tuples of basis
indices (0-based internally); every other ordering is recovered by the sign of
the sorting permutation, and tuples with a repeated index vanish.  Elements
are plain coordinate tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from .errors import PreconditionError
from .linalg import (
    FieldSpec,
    Matrix,
    Subspace,
    Vector,
    columns_to_matrix,
    is_zero_vector,
    kernel,
    lincomb,
    mat_lincomb,
    mat_vec,
    unit_vector,
    vec_add,
    vec_sub,
    zero_vector,
)


@lru_cache(maxsize=None)
def _signed_permutations(n: int):
    out = []
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        out.append((perm, -1 if inversions % 2 else 1))
    return tuple(out)


def sort_with_sign(idx: Sequence[int]) -> tuple[tuple[int, ...] | None, int]:
    """Sort indices, returning ``(sorted, sign)``; ``(None, 0)`` on a repeat."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return None, 0
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return tuple(idx), sign


def alternating_coefficient(F: FieldSpec, args: Sequence[Vector], key: Sequence[int]):
    """Determinant of the minor of ``args`` on the columns ``key``.

    This is the coefficient of the stored bracket ``key`` when the alternating
    multilinear bracket is expanded on ``args``.
    """
    n = len(key)
    cols = [[a[k] for k in key] for a in args]
    if any(not any(c) for c in cols):
        return F.zero
    total = 0
    for perm, sign in _signed_permutations(n):
        prod = sign
        for r in range(n):
            x = cols[r][perm[r]]
            if not x:
                break
            prod = prod * x
        else:
            total += prod
    return F.norm(total)


@dataclass(frozen=True, eq=False)
class NLieAlgebra:
    """An alternating n-ary algebra given by structure constants.

    ``sc`` maps strictly increasing 0-based index tuples to coordinate vectors;
    only nonzero values are kept.  Construct through :meth:`from_brackets`,
    which accepts any ordering and normalizes signs.  Jacobi is not checked
    here; call :func:`validate_jacobi`.
    """

    field: FieldSpec
    n: int
    dim: int
    sc: Mapping[tuple[int, ...], Vector]
    basis_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.n < 2:
            raise PreconditionError("arity must be at least 2")
        if self.dim < 0:
            raise PreconditionError("dimension must be non-negative")
        for key, val in self.sc.items():
            if len(key) != self.n or list(key) != sorted(set(key)) or not all(0 <= k < self.dim for k in key):
                raise PreconditionError(f"bad structure-constant key {key}")
            if len(val) != self.dim:
                raise PreconditionError(f"value for {key} has wrong length")
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"e{i + 1}" for i in range(self.dim)))
        elif len(self.basis_names) != self.dim:
            raise PreconditionError("basis_names length differs from dim")

    @classmethod
    def from_brackets(cls, F: FieldSpec, n: int, dim: int, brackets: Mapping | None = None,
                      basis_names: Sequence[str] = ()) -> "NLieAlgebra":
        """Build from ``{index tuple: vector}`` (0-based, any order, repeated keys accumulate)."""
        acc: dict[tuple[int, ...], Vector] = {}
        for idx, val in (brackets or {}).items():
            key, sign = sort_with_sign(idx)
            if key is None:
                continue
            v = tuple(F(x) for x in val)
            if sign < 0:
                v = tuple(F.norm(-x) for x in v)
            acc[key] = vec_add(F, acc[key], v) if key in acc else v
        sc = {k: v for k, v in sorted(acc.items()) if not is_zero_vector(v)}
        return cls(F, n, dim, sc, tuple(basis_names))

    def __eq__(self, other):
        if not isinstance(other, NLieAlgebra):
            return NotImplemented
        return (self.field, self.n, self.dim, dict(self.sc), self.basis_names) == (
            other.field, other.n, other.dim, dict(other.sc), other.basis_names)

    def __hash__(self):
        return hash((self.field, self.n, self.dim, tuple(sorted(self.sc.items())), self.basis_names))

    def __repr__(self):
        return f"NLieAlgebra(n={self.n}, dim={self.dim}, field={self.field}, brackets={len(self.sc)})"

    # -- elements ---------------------------------------------------------

    def e(self, i: int) -> Vector:
        """The ``i``-th basis vector (0-based)."""
        return unit_vector(self.field, self.dim, i)

    def element(self, coords: Sequence) -> Vector:
        if len(coords) != self.dim:
            raise PreconditionError(f"element of length {len(coords)} in algebra of dimension {self.dim}")
        return tuple(self.field(x) for x in coords)

    @property
    def zero(self) -> Vector:
        return zero_vector(self.field, self.dim)

    @cached_property
    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    @cached_property
    def zero_space(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def span(self, vectors) -> Subspace:
        return Subspace.span(self.field, self.dim, vectors)

    # -- bracket ----------------------------------------------------------

    def basis_bracket(self, idx: Sequence[int]) -> Vector:
        """Bracket of basis vectors given by (unsorted) indices."""
        key, sign = sort_with_sign(idx)
        if key is None or key not in self.sc:
            return self.zero
        v = self.sc[key]
        return v if sign > 0 else tuple(self.field.norm(-x) for x in v)

    def bracket(self, *args: Vector) -> Vector:
        if len(args) != self.n:
            raise PreconditionError(f"bracket takes {self.n} arguments, got {len(args)}")
        for a in args:
            if len(a) != self.dim:
                raise PreconditionError("argument dimension mismatch")
        F = self.field
        coeffs, vals = [], []
        for key, val in self.sc.items():
            c = alternating_coefficient(F, args, key)
            if c:
                coeffs.append(c)
                vals.append(val)
        return lincomb(F, coeffs, vals, self.dim)

    # -- cached derivation data -------------------------------------------

    @cached_property
    def basis_derivations(self) -> dict[tuple[int, ...], Matrix]:
        """``D(e_i1, ..., e_i(n-1))`` for every increasing (n-1)-tuple."""
        out = {}
        for tup in itertools.combinations(range(self.dim), self.n - 1):
            cols = [self.basis_bracket(tup + (j,)) for j in range(self.dim)]
            out[tup] = columns_to_matrix(self.field, cols, self.dim)
        return out


def bracket(alg: NLieAlgebra, args: Sequence[Vector]) -> Vector:
    """Functional spelling of :meth:`NLieAlgebra.bracket`."""
    return alg.bracket(*args)


# ---------------------------------------------------------------------------
# Jacobi
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JacobiViolation:
    x: tuple[int, ...]
    y: tuple[int, ...]
    defect: Vector


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    violations: tuple[JacobiViolation, ...]
    checked: int


def _bracket_vec_basis(alg: NLieAlgebra, v: Vector, pos: int, others: Sequence[int]) -> Vector:
    """Bracket with vector ``v`` at slot ``pos`` and basis vectors elsewhere."""
    F = alg.field
    out = alg.zero
    for m, c in enumerate(v):
        if c:
            idx = list(others)
            idx.insert(pos, m)
            b = alg.basis_bracket(idx)
            if not is_zero_vector(b):
                out = tuple(F.norm(o + c * x) for o, x in zip(out, b))
    return out


def jacobi_defect(alg: NLieAlgebra, x: Sequence[int], y: Sequence[int]) -> Vector:
    """LHS minus RHS of the generalised Jacobi identity on basis tuples."""
    lhs = _bracket_vec_basis(alg, alg.basis_bracket(x), 0, y)
    rhs = alg.zero
    for i in range(alg.n):
        inner = alg.basis_bracket((x[i],) + tuple(y))
        if is_zero_vector(inner):
            continue
        rest = list(x[:i]) + list(x[i + 1:])
        rhs = vec_add(alg.field, rhs, _bracket_vec_basis(alg, inner, i, rest))
    return vec_sub(alg.field, lhs, rhs)


def validate_jacobi(alg: NLieAlgebra, fail_fast: bool = False) -> JacobiReport:
    """Check the generalised Jacobi identity on all increasing basis tuples."""
    violations = []
    checked = 0
    for x in itertools.combinations(range(alg.dim), alg.n):
        for y in itertools.combinations(range(alg.dim), alg.n - 1):
            checked += 1
            d = jacobi_defect(alg, x, y)
            if not is_zero_vector(d):
                violations.append(JacobiViolation(x, y, d))
                if fail_fast:
                    return JacobiReport(False, tuple(violations), checked)
    return JacobiReport(not violations, tuple(violations), checked)


def require_valid(alg: NLieAlgebra) -> NLieAlgebra:
    rep = validate_jacobi(alg, fail_fast=True)
    if not rep.ok:
        v = rep.violations[0]
        raise PreconditionError(f"Jacobi identity fails on x={v.x}, y={v.y}")
    return alg


# ---------------------------------------------------------------------------
# derivations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DerivationMatrix:
    """A derivation matrix, optionally with the formal sum of strings it came from."""

    matrix: Matrix
    provenance: tuple[tuple[object, tuple[Vector, ...]], ...] | None = None

    @property
    def strings(self):
        return [s for _, s in self.provenance] if self.provenance else []


def inner_derivation(alg: NLieAlgebra, a: Sequence[Vector]) -> DerivationMatrix:
    """``D(a_1, ..., a_{n-1})``: ``x -> [a_1, ..., a_{n-1}, x]``."""
    a = tuple(tuple(v) for v in a)
    if len(a) != alg.n - 1:
        raise PreconditionError(f"an inner derivation needs {alg.n - 1} elements")
    F = alg.field
    coeffs, mats = [], []
    for tup, m in alg.basis_derivations.items():
        c = alternating_coefficient(F, a, tup)
        if c:
            coeffs.append(c)
            mats.append(m)
    mat = mat_lincomb(F, coeffs, mats, alg.dim, alg.dim)
    return DerivationMatrix(mat, ((F.one, a),))


def combine_derivations(alg: NLieAlgebra, coeffs, ders: Sequence[DerivationMatrix]) -> DerivationMatrix:
    """Linear combination, carrying provenance when every input has it."""
    F = alg.field
    mat = mat_lincomb(F, coeffs, [d.matrix for d in ders], alg.dim, alg.dim)
    prov = None
    if all(d.provenance is not None for d in ders):
        terms: list = []
        for c, d in zip(coeffs, ders):
            if c:
                terms.extend((F.norm(c * c0), s) for c0, s in d.provenance)
        prov = tuple(terms)
    return DerivationMatrix(mat, prov)


def derivation_from_provenance(alg: NLieAlgebra, provenance) -> Matrix:
    ders = [inner_derivation(alg, s) for _, s in provenance]
    return combine_derivations(alg, [c for c, _ in provenance], ders).matrix


def derivation_span(alg: NLieAlgebra, U: Subspace) -> list[DerivationMatrix]:
    """``D(u)`` for every increasing (n-1)-tuple of U's canonical basis."""
    return [inner_derivation(alg, tup) for tup in itertools.combinations(U.basis, alg.n - 1)]


def is_derivation(alg: NLieAlgebra, d: Matrix) -> bool:
    if len(d) != alg.dim or any(len(r) != alg.dim for r in d):
        raise PreconditionError("derivation matrix has the wrong size")
    F = alg.field
    cols = [tuple(d[i][j] for i in range(alg.dim)) for j in range(alg.dim)]
    for x in itertools.combinations(range(alg.dim), alg.n):
        lhs = mat_vec(F, d, alg.basis_bracket(x))
        rhs = alg.zero
        for i in range(alg.n):
            rest = list(x[:i]) + list(x[i + 1:])
            rhs = vec_add(F, rhs, _bracket_vec_basis(alg, cols[x[i]], i, rest))
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# subspace products and the ideal lattice
# ---------------------------------------------------------------------------

def product_subspaces(alg: NLieAlgebra, factors: Sequence[Subspace]) -> Subspace:
    """``[A_1, ..., A_n]``: span of brackets of basis vectors drawn from each factor.

    Equal factors are grouped and drawn as increasing tuples, which loses
    nothing because the bracket is alternating.
    """
    if len(factors) != alg.n:
        raise PreconditionError(f"product needs {alg.n} factors")
    for f in factors:
        if f.ambient_dim != alg.dim:
            raise PreconditionError("factor lives in the wrong ambient space")
    if any(f.is_zero() for f in factors):
        return alg.zero_space
    groups: list[tuple[Subspace, int]] = []
    for f in factors:
        for i, (g, r) in enumerate(groups):
            if g == f:
                groups[i] = (g, r + 1)
                break
        else:
            groups.append((f, 1))
    choices = [list(itertools.combinations(g.basis, r)) for g, r in groups]
    vectors = []
    for combo in itertools.product(*choices):
        args = [v for part in combo for v in part]
        b = alg.bracket(*args)
        if not is_zero_vector(b):
            vectors.append(b)
    return alg.span(vectors)


def repeat(r: int, A: Subspace) -> list[Subspace]:
    """``rA`` in a product: ``r`` copies of ``A``."""
    return [A] * r


def dot(alg: NLieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """``A . B = [A, B, (n-2)L]``."""
    return product_subspaces(alg, [A, B] + repeat(alg.n - 2, alg.full))


def derived_product(alg: NLieAlgebra, A: Subspace | None = None) -> Subspace:
    """``[nA]``; with no argument, ``[nL]``."""
    A = alg.full if A is None else A
    return product_subspaces(alg, repeat(alg.n, A))


def is_subalgebra(alg: NLieAlgebra, K: Subspace) -> bool:
    if K.dim < alg.n:
        return True
    return product_subspaces(alg, repeat(alg.n, K)) <= K


def is_ideal(alg: NLieAlgebra, K: Subspace) -> bool:
    if K.is_zero() or K.is_full():
        return True
    return all(K.is_invariant(m) for m in alg.basis_derivations.values())


def subalgebra_closure(alg: NLieAlgebra, S: Subspace) -> Subspace:
    """Least subalgebra containing ``S``."""
    for _ in range(alg.dim + 1):
        nxt = S + product_subspaces(alg, repeat(alg.n, S))
        if nxt == S:
            return S
        S = nxt
    return S


def ideal_closure(alg: NLieAlgebra, S: Subspace) -> Subspace:
    """Least ideal containing ``S``."""
    mats = list(alg.basis_derivations.values())
    for _ in range(alg.dim + 1):
        nxt = alg.span(list(S.basis) + [mat_vec(alg.field, m, v) for m in mats for v in S.basis])
        if nxt == S:
            return S
        S = nxt
    return S


def _require_ideal(alg, K, what="subspace"):
    if not is_ideal(alg, K):
        raise PreconditionError(f"{what} is not an ideal")


def _require_subalgebra(alg, U, what="subspace"):
    if not is_subalgebra(alg, U):
        raise PreconditionError(f"{what} is not a subalgebra")


def projection_matrix(K: Subspace) -> Matrix:
    """Matrix of ``F^d -> F^d / K`` in the coordinates of the non-pivot columns."""
    F = K.field
    piv = set(K.pivots)
    keep = [j for j in range(K.ambient_dim) if j not in piv]
    cols = []
    for j in range(K.ambient_dim):
        r = K.reduce(unit_vector(F, K.ambient_dim, j))
        cols.append(tuple(r[c] for c in keep))
    return columns_to_matrix(F, cols, len(keep))


def quotient(alg: NLieAlgebra, K: Subspace) -> tuple[NLieAlgebra, Matrix]:
    """``L/K`` on the coordinate basis complementary to K's pivots, with the projection."""
    _require_ideal(alg, K, "quotient kernel")
    F = alg.field
    piv = set(K.pivots)
    keep = [j for j in range(alg.dim) if j not in piv]
    proj = projection_matrix(K)
    sc = {}
    for tup in itertools.combinations(range(len(keep)), alg.n):
        img = mat_vec(F, proj, alg.basis_bracket([keep[t] for t in tup]))
        if not is_zero_vector(img):
            sc[tup] = img
    names = tuple(alg.basis_names[j] for j in keep)
    return NLieAlgebra(F, alg.n, len(keep), sc, names), proj


def preimage(alg: NLieAlgebra, K: Subspace, Q: Subspace) -> Subspace:
    """Preimage in L of a subspace of ``L/K`` (coordinates as in :func:`quotient`)."""
    F = alg.field
    piv = set(K.pivots)
    keep = [j for j in range(alg.dim) if j not in piv]
    lifted = []
    for v in Q.basis:
        w = [F.zero] * alg.dim
        for c, j in zip(v, keep):
            w[j] = c
        lifted.append(tuple(w))
    return alg.span(list(K.basis) + lifted)


def image_in_quotient(alg: NLieAlgebra, K: Subspace, B: Subspace) -> Subspace:
    proj = projection_matrix(K)
    return Subspace.span(alg.field, alg.dim - K.dim, [mat_vec(alg.field, proj, v) for v in B.basis])


def _solution_space(alg: NLieAlgebra, blocks: list[Matrix]) -> Subspace:
    rows = [r for b in blocks for r in b]
    if not rows:
        return alg.full
    return kernel(alg.field, tuple(rows), alg.dim)


def centralizer(alg: NLieAlgebra, A: Subspace) -> Subspace:
    """``{c : [c, A, (n-2)L] = 0}``; ``A`` must be an ideal."""
    _require_ideal(alg, A)
    blocks = []
    for a in A.basis:
        for xs in itertools.combinations(range(alg.dim), alg.n - 2):
            cols = [alg.bracket(alg.e(j), a, *[alg.e(x) for x in xs]) for j in range(alg.dim)]
            blocks.append(columns_to_matrix(alg.field, cols, alg.dim))
    return _solution_space(alg, blocks)


def center(alg: NLieAlgebra) -> Subspace:
    """``Z(L) = {z : [x_1, ..., x_{n-1}, z] = 0 for all x}``."""
    return _solution_space(alg, list(alg.basis_derivations.values()))


def normalizer(alg: NLieAlgebra, U: Subspace) -> Subspace:
    """``{x : [x, u_1, ..., u_{n-1}] in U for all u in U}``.

    Returned as a bare subspace: it need not be a subalgebra.
    """
    _require_subalgebra(alg, U)
    F = alg.field
    ann = U.annihilator()
    if not ann:
        return alg.full
    blocks = []
    for d in derivation_span(alg, U):
        # [x, u] = +-D(u) x; the sign does not change the solution space
        prod = tuple(tuple(F.norm(sum(a * d.matrix[k][j] for k, a in enumerate(row)))
                           for j in range(alg.dim)) for row in ann)
        blocks.append(prod)
    return _solution_space(alg, blocks)


def is_abelian(alg: NLieAlgebra) -> bool:
    return not alg.sc


def is_abelian_embedded(alg: NLieAlgebra, A: Subspace) -> bool:
    """``[2A, (n-2)L] = 0`` for an ideal ``A``."""
    _require_ideal(alg, A)
    return product_subspaces(alg, repeat(2, A) + repeat(alg.n - 2, alg.full)).is_zero()


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def reduce_fix_element(alg: NLieAlgebra, a: Vector) -> NLieAlgebra:
    """The (n-1)-Lie algebra ``m'(x_1..x_{n-1}) = [x_1, ..., x_{n-1}, a]``."""
    if alg.n <= 2:
        raise PreconditionError("fixing an element needs arity above 2")
    a = alg.element(a)
    sc = {}
    for tup in itertools.combinations(range(alg.dim), alg.n - 1):
        v = alg.bracket(*[alg.e(i) for i in tup], a)
        if not is_zero_vector(v):
            sc[tup] = v
    return NLieAlgebra(alg.field, alg.n - 1, alg.dim, sc, alg.basis_names)


def direct_sum(a: NLieAlgebra, b: NLieAlgebra) -> NLieAlgebra:
    if a.field != b.field or a.n != b.n:
        raise PreconditionError("direct sum needs equal field and arity")
    F = a.field
    d = a.dim + b.dim
    sc = {}
    for k, v in a.sc.items():
        sc[k] = tuple(v) + (F.zero,) * b.dim
    for k, v in b.sc.items():
        sc[tuple(i + a.dim for i in k)] = (F.zero,) * a.dim + tuple(v)
    names = tuple(f"e{i + 1}" for i in range(d))
    return NLieAlgebra(F, a.n, d, dict(sorted(sc.items())), names)


def restrict(alg: NLieAlgebra, S: Subspace) -> NLieAlgebra:
    """A subalgebra as a standalone algebra in its canonical basis."""
    _require_subalgebra(alg, S)
    sc = {}
    for tup in itertools.combinations(range(S.dim), alg.n):
        v = alg.bracket(*[S.basis[i] for i in tup])
        c = S.coordinates(v)
        if not is_zero_vector(c):
            sc[tup] = c
    return NLieAlgebra(alg.field, alg.n, S.dim, sc)


def embed(S: Subspace, T: Subspace) -> Subspace:
    """Map a subspace ``T`` given in S-coordinates back into the ambient space."""
    return Subspace.span(S.field, S.ambient_dim, [S.from_coordinates(v) for v in T.basis])


def abelian(F: FieldSpec, n: int, d: int) -> NLieAlgebra:
    return NLieAlgebra(F, n, d, {})
