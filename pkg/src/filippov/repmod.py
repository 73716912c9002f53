"""L-modules: representation checks, split extensions, kernels and components.

A representation is stored like the structure constants: one matrix per
strictly increasing (n-1)-tuple of basis indices, other orderings by sign.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import (
    NLieAlgebra,
    _require_ideal,
    alternating_coefficient,
    inner_derivation,
    is_ideal,
    is_subalgebra,
    restrict,
    sort_with_sign,
    validate_jacobi,
)
from .errors import PreconditionError, UnsupportedError, VerificationError
from .lattice import DEFAULT_BUDGET, LatticeBudget, check_budget, enumerate_subspaces, minimal_elements
from .linalg import (
    FieldSpec,
    Matrix,
    Subspace,
    columns_to_matrix,
    commutator,
    coordinates_in,
    flatten,
    identity,
    is_zero_matrix,
    kernel,
    mat_add,
    mat_lincomb,
    mat_mul,
    mat_scale,
    mat_vec,
    rref,
    unflatten,
    zeros,
)
from .series import is_nilpotent


@dataclass(frozen=True, eq=False)
class LModule:
    alg: NLieAlgebra
    vdim: int
    rho: Mapping[tuple[int, ...], Matrix]

    def __post_init__(self):
        for key, m in self.rho.items():
            if len(key) != self.alg.n - 1 or list(key) != sorted(set(key)):
                raise PreconditionError(f"bad representation key {key}")
            if len(m) != self.vdim or any(len(r) != self.vdim for r in m):
                raise PreconditionError(f"matrix for {key} has the wrong size")

    @classmethod
    def from_table(cls, alg: NLieAlgebra, vdim: int, table: Mapping) -> "LModule":
        """Build from ``{index tuple: matrix}`` in any order; signs are normalized."""
        F = alg.field
        acc: dict = {}
        for idx, m in table.items():
            key, sign = sort_with_sign(idx)
            if key is None:
                continue
            m = tuple(tuple(F(x) for x in r) for r in m)
            if sign < 0:
                m = mat_scale(F, F.norm(-1), m)
            acc[key] = mat_add(F, acc[key], m) if key in acc else m
        return cls(alg, vdim, {k: v for k, v in sorted(acc.items()) if not is_zero_matrix(v)})

    @property
    def field(self) -> FieldSpec:
        return self.alg.field

    def zero_matrix(self) -> Matrix:
        return zeros(self.field, self.vdim)

    def basis_rho(self, idx: Sequence[int]) -> Matrix:
        key, sign = sort_with_sign(idx)
        if key is None or key not in self.rho:
            return self.zero_matrix()
        m = self.rho[key]
        return m if sign > 0 else mat_scale(self.field, self.field.norm(-1), m)

    def act(self, *string) -> Matrix:
        """``rho(x_1, ..., x_{n-1})`` for arbitrary elements."""
        if len(string) != self.alg.n - 1:
            raise PreconditionError(f"rho takes {self.alg.n - 1} elements")
        F = self.field
        coeffs, mats = [], []
        for key, m in self.rho.items():
            c = alternating_coefficient(F, string, key)
            if c:
                coeffs.append(c)
                mats.append(m)
        return mat_lincomb(F, coeffs, mats, self.vdim, self.vdim)

    def generators(self) -> list[Matrix]:
        return [self.basis_rho(t) for t in itertools.combinations(range(self.alg.dim), self.alg.n - 1)]


@dataclass(frozen=True)
class RepViolation:
    equation: str
    x: tuple[int, ...]
    y: tuple[int, ...]
    defect: Matrix


@dataclass(frozen=True)
class RepReport:
    ok: bool
    violations: tuple[RepViolation, ...]


def _rho_vec_slot(m: LModule, v, pos: int, others: Sequence[int]) -> Matrix:
    """``rho`` with the vector ``v`` at slot ``pos`` and basis vectors elsewhere."""
    F = m.field
    coeffs, mats = [], []
    for j, c in enumerate(v):
        if c:
            idx = list(others)
            idx.insert(pos, j)
            coeffs.append(c)
            mats.append(m.basis_rho(idx))
    return mat_lincomb(F, coeffs, mats, m.vdim, m.vdim)


def validate_representation(m: LModule, fail_fast: bool = False) -> RepReport:
    """Check the commutator identity and the bracket-in-first-slot identity on basis tuples."""
    alg, F = m.alg, m.field
    n, d = alg.n, alg.dim
    violations = []
    # [rho(x), rho(y)] = sum_i rho(y_1, .., [x, y_i], .., y_{n-1})
    for x in itertools.combinations(range(d), n - 1):
        rx = m.basis_rho(x)
        for y in itertools.combinations(range(d), n - 1):
            lhs = commutator(F, rx, m.basis_rho(y))
            rhs = m.zero_matrix()
            for i in range(n - 1):
                inner = alg.basis_bracket(x + (y[i],))
                rest = y[:i] + y[i + 1:]
                rhs = mat_add(F, rhs, _rho_vec_slot(m, inner, i, rest))
            if lhs != rhs:
                violations.append(RepViolation("commutator", x, y, _diff(F, lhs, rhs)))
                if fail_fast:
                    return RepReport(False, tuple(violations))
    # rho([x_1..x_n], y_2..y_{n-1}) = sum_i (-1)^(n-i) rho(x without x_i) rho(x_i, y_2..y_{n-1})
    for x in itertools.combinations(range(d), n):
        bx = alg.basis_bracket(x)
        for y in itertools.combinations(range(d), n - 2):
            lhs = _rho_vec_slot(m, bx, 0, y)
            rhs = m.zero_matrix()
            for i in range(n):
                sign = 1 if (n - 1 - i) % 2 == 0 else -1  # 0-based i: (-1)^(n-(i+1))
                rest = x[:i] + x[i + 1:]
                prod = mat_mul(F, m.basis_rho(rest), m.basis_rho((x[i],) + y))
                rhs = mat_add(F, rhs, mat_scale(F, F.norm(sign), prod))
            if lhs != rhs:
                violations.append(RepViolation("bracket", x, y, _diff(F, lhs, rhs)))
                if fail_fast:
                    return RepReport(False, tuple(violations))
    return RepReport(not violations, tuple(violations))


def _diff(F, a, b):
    return tuple(tuple(F.norm(x - y) for x, y in zip(r, s)) for r, s in zip(a, b))


@dataclass(frozen=True)
class SplitExtension:
    algebra: NLieAlgebra
    algebra_part: Subspace
    module_part: Subspace


def split_extension(m: LModule, check: bool = True) -> SplitExtension:
    """The algebra on ``L + V`` with ``[x_1..x_{n-1}, v] = rho(x) v`` and ``[2V, ...] = 0``."""
    if check and not validate_representation(m, fail_fast=True).ok:
        raise PreconditionError("not a representation")
    alg, F = m.alg, m.field
    d, vd = alg.dim, m.vdim
    total = d + vd
    sc = {}
    for k, v in alg.sc.items():
        sc[k] = tuple(v) + (F.zero,) * vd
    for key, mat in m.rho.items():
        for j in range(vd):
            col = tuple(mat[i][j] for i in range(vd))
            if any(col):
                sc[key + (d + j,)] = (F.zero,) * d + col
    names = tuple(alg.basis_names) + tuple(f"v{j + 1}" for j in range(vd))
    big = NLieAlgebra(F, alg.n, total, dict(sorted(sc.items())), names)
    unit = identity(F, total)
    return SplitExtension(big, big.span(unit[:d]), big.span(unit[d:]))


def adjoint_module(alg: NLieAlgebra) -> LModule:
    return LModule(alg, alg.dim, {k: v for k, v in alg.basis_derivations.items() if not is_zero_matrix(v)})


def zero_module(alg: NLieAlgebra, vdim: int) -> LModule:
    return LModule(alg, vdim, {})


def rep_kernel(m: LModule) -> Subspace:
    """``{k : rho(k, x) = 0 for all x}``."""
    alg, F = m.alg, m.field
    rows = []
    for xs in itertools.combinations(range(alg.dim), alg.n - 2):
        cols = [flatten(m.basis_rho((j,) + xs)) for j in range(alg.dim)]
        rows.extend(columns_to_matrix(F, cols, m.vdim * m.vdim))
    K = kernel(F, tuple(rows), alg.dim) if rows else alg.full
    if not is_ideal(alg, K):
        raise VerificationError("representation kernel is not an ideal")
    return K


def rho_r_span(m: LModule, U: Subspace, r: int) -> list[Matrix]:
    """A basis of ``rho_r(U)``: strings with ``r`` slots in ``U`` and the rest in ``L``."""
    alg, F = m.alg, m.field
    if not 1 <= r <= alg.n - 1:
        raise PreconditionError(f"r must lie in 1..{alg.n - 1}")
    mats = []
    for us in itertools.combinations(U.basis, r):
        for ls in itertools.combinations(range(alg.dim), alg.n - 1 - r):
            mats.append(m.act(*us, *[alg.e(i) for i in ls]))
    return matrix_span_basis(F, mats, m.vdim)


def matrix_span_basis(F: FieldSpec, mats: Sequence[Matrix], size: int) -> list[Matrix]:
    if not mats:
        return []
    rows, r = rref(F, [flatten(x) for x in mats], size * size)
    return [unflatten(row, size, size) for row in rows[:r]]


def verify_subnormal_chain(alg: NLieAlgebra, chain: Sequence[Subspace]) -> bool:
    """Each term a subalgebra, strictly increasing, an ideal of the next, ending at L."""
    if not chain or not chain[-1].is_full():
        return False
    for U in chain:
        if not is_subalgebra(alg, U):
            return False
    for U, W in zip(chain, chain[1:]):
        if not U < W or not is_ideal_in(alg, U, W):
            return False
    return True


def is_ideal_in(alg: NLieAlgebra, U: Subspace, W: Subspace) -> bool:
    """``[U, (n-1)W] <= U`` for ``U <= W``."""
    if not U <= W:
        return False
    if U.is_zero():
        return True
    for w in itertools.combinations(W.basis, alg.n - 1):
        D = inner_derivation(alg, w).matrix
        if not U.is_invariant(D):
            return False
    return True


# ---------------------------------------------------------------------------
# modules over a family of matrices, and A-components
# ---------------------------------------------------------------------------

def invariant_subspaces(F: FieldSpec, gens: Sequence[Matrix], vdim: int,
                        budget: LatticeBudget = DEFAULT_BUDGET) -> list[Subspace]:
    return [S for S in enumerate_subspaces(F, vdim, budget) if all(S.is_invariant(g) for g in gens)]


def induced_action(F: FieldSpec, gens: Sequence[Matrix], lower: Subspace, upper: Subspace) -> list[Matrix]:
    """Matrices of the generators on ``upper/lower`` in a fixed complement basis."""
    # basis of upper adapted to lower: lower's basis, then vectors completing it
    adapted = list(lower.basis)
    cur = lower
    for v in upper.basis:
        if v not in cur:
            adapted.append(v)
            cur = cur + Subspace.span(F, upper.ambient_dim, [v])
    k = lower.dim
    q = len(adapted) - k
    out = []
    for g in gens:
        cols = []
        for v in adapted[k:]:
            c = coordinates_in(F, adapted, mat_vec(F, g, v))
            if c is None:
                raise PreconditionError("upper is not invariant")
            cols.append(tuple(c[k:]))
        out.append(columns_to_matrix(F, cols, q))
    return out


def hom_space_dim(F: FieldSpec, a: Sequence[Matrix], b: Sequence[Matrix], da: int, db: int) -> int:
    """Dimension of ``{T : T a_i = b_i T}`` for ``T`` of shape ``db x da``."""
    rows = []
    for x, y in zip(a, b):
        # (T x - y T)[r][c] = sum_k T[r][k] x[k][c] - sum_k y[r][k] T[k][c]
        for r in range(db):
            for c in range(da):
                row = [0] * (db * da)
                for k in range(da):
                    row[r * da + k] += x[k][c]
                for k in range(db):
                    row[k * da + c] -= y[r][k]
                rows.append([F.norm(v) for v in row])
    if not rows:
        return db * da
    return db * da - rref(F, rows, db * da)[1]


def irreducible_isomorphic(F: FieldSpec, a: Sequence[Matrix], b: Sequence[Matrix], da: int, db: int) -> bool:
    """Isomorphism of two irreducible modules: any nonzero intertwiner is invertible."""
    return da == db and hom_space_dim(F, a, b, da, db) > 0


def isomorphic_exhaustive(F: FieldSpec, a: Sequence[Matrix], b: Sequence[Matrix], d: int) -> bool:
    """Brute-force search for an invertible intertwiner (tiny sizes only)."""
    for entries in itertools.product(range(F.p), repeat=d * d):
        T = unflatten(entries, d, d)
        if rref(F, T)[1] != d:
            continue
        if all(mat_mul(F, T, x) == mat_mul(F, y, T) for x, y in zip(a, b)):
            return True
    return False


@dataclass(frozen=True)
class CompositionFactor:
    lower: Subspace
    upper: Subspace
    action: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return self.upper.dim - self.lower.dim


def composition_series(F, gens, lower: Subspace, upper: Subspace, lattice: Sequence[Subspace]):
    """A composition series from ``lower`` to ``upper`` through the invariant-subspace lattice."""
    chain = [lower]
    factors = []
    while chain[-1] != upper:
        cur = chain[-1]
        above = [S for S in lattice if cur < S and S <= upper]
        nxt = min(above, key=lambda s: (s.dim, s.basis))
        factors.append(CompositionFactor(cur, nxt, tuple(induced_action(F, gens, cur, nxt))))
        chain.append(nxt)
    return chain, factors


class _Classes:
    """Isomorphism classes of irreducible factors, keyed by first representative."""

    def __init__(self, F):
        self.F = F
        self.reps: list[CompositionFactor] = []

    def classify(self, f: CompositionFactor) -> int:
        for i, r in enumerate(self.reps):
            if irreducible_isomorphic(self.F, r.action, f.action, r.dim, f.dim):
                return i
        self.reps.append(f)
        return len(self.reps) - 1


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[Subspace, ...]
    classes: tuple[int, ...]
    factor_classes: tuple[int, ...]


def components(m: LModule, N: Subspace, r: int | None = None,
               budget: LatticeBudget = DEFAULT_BUDGET, check_nilpotent: bool = True) -> ComponentDecomposition:
    """Decompose ``V`` into its ``A``-components for a nilpotent ideal ``N``.

    ``N`` acts through ``rho_r(N)`` (by default ``r = n-1``, the action of
    ``N`` as an algebra).  Submodules are found by a lattice scan, composition
    factors are classified by solving for intertwiners, and each component is
    the unique L-submodule whose N-factors are all of one class with no such
    factor above it.
    """
    alg, F = m.alg, m.field
    r = alg.n - 1 if r is None else r
    if not F.is_finite:
        raise UnsupportedError("components needs a finite field")
    check_budget(F, m.vdim, budget)
    _require_ideal(alg, N)
    if check_nilpotent and not is_nilpotent(restrict(alg, N)):
        raise PreconditionError("N is not nilpotent")
    n_gens = rho_r_span(m, N, r) if not N.is_zero() else []
    l_gens = m.generators()
    V = Subspace.full(F, m.vdim)
    zero = Subspace.zero(F, m.vdim)
    n_lattice = invariant_subspaces(F, n_gens, m.vdim, budget)
    l_submodules = [S for S in n_lattice if all(S.is_invariant(g) for g in l_gens)]

    classes = _Classes(F)

    def factor_classes(lower, upper):
        _, facs = composition_series(F, n_gens, lower, upper, n_lattice)
        return [classes.classify(f) for f in facs]

    whole = factor_classes(zero, V)
    comps, comp_classes = [], []
    for cls in sorted(set(whole)):
        hits = [W for W in l_submodules
                if set(factor_classes(zero, W)) <= {cls} and cls not in factor_classes(W, V)]
        if len(hits) != 1:
            raise VerificationError(f"expected one component for class {cls}, found {len(hits)}")
        comps.append(hits[0])
        comp_classes.append(cls)
    total = zero
    for W in comps:
        if not (total & W).is_zero():
            raise VerificationError("components are not independent")
        total = total + W
    if total != V:
        raise VerificationError("components do not exhaust V")
    regathered = Counter(c for W in comps for c in factor_classes(zero, W))
    if regathered != Counter(whole):
        raise VerificationError("composition factors of the components differ from those of V")
    return ComponentDecomposition(tuple(comps), tuple(comp_classes), tuple(whole))


def split_extension_jacobi_ok(m: LModule) -> bool:
    """Jacobi on the extension built without checking the representation first."""
    return validate_jacobi(split_extension(m, check=False).algebra, fail_fast=True).ok
