"""Exact linear algebra over the rationals and prime fields.

Scalars are plain Python values: :class:`fractions.Fraction` over Q and
``int`` residues in ``[0, p)`` over GF(p).  Both are canonical, so equality
of scalars (and of tuples of scalars) is representation equality.

Matrices are tuples of row tuples.  A linear map acts on column vectors,
so column ``j`` of a matrix is the image of the ``j``-th basis vector.
Subspaces are stored by their reduced row echelon basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PreconditionError

Vector = tuple
Matrix = tuple


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``kind="Q"``) or GF(p) (``kind="GF"``)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise PreconditionError("the rational field takes no modulus")
        elif self.kind == "GF":
            if not isinstance(self.p, int) or not 2 <= self.p < 2**31 or not _is_prime(self.p):
                raise PreconditionError(f"GF(p) needs a prime p < 2^31, got {self.p!r}")
        else:
            raise PreconditionError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("Q")

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls("GF", p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``Q``, ``QQ``, ``GF5``, ``GF(5)`` or ``5``."""
        t = text.strip().upper().replace("(", "").replace(")", "")
        if t in ("Q", "QQ"):
            return cls.rationals()
        if t.startswith("GF"):
            t = t[2:]
        try:
            return cls.gf(int(t))
        except ValueError:
            raise PreconditionError(f"cannot parse field {text!r}") from None

    @property
    def is_finite(self) -> bool:
        return self.kind == "GF"

    @property
    def cardinality(self) -> float | int:
        """``p`` for GF(p); ``math.inf`` for Q."""
        return self.p if self.kind == "GF" else math.inf

    @property
    def zero(self):
        return 0 if self.kind == "GF" else Fraction(0)

    @property
    def one(self):
        return 1 if self.kind == "GF" else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or decimal string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def norm(self, x):
        """Canonicalize the result of raw ``+ - *`` arithmetic."""
        return x % self.p if self.kind == "GF" else x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("division by zero in field")
        return pow(x, -1, self.p) if self.kind == "GF" else Fraction(1) / x

    def elements(self):
        if self.kind != "GF":
            raise PreconditionError("the rationals cannot be enumerated")
        return range(self.p)

    def element(self, k: int):
        """The image of the integer ``k``."""
        return self(k)

    def random(self, rng, spread: int = 3):
        """A pseudo-random element; over Q a small integer in ``[-spread, spread]``."""
        if self.kind == "GF":
            return rng.randrange(self.p)
        return Fraction(rng.randint(-spread, spread))

    def format(self, x) -> str:
        return str(x)

    def __str__(self):
        return "Q" if self.kind == "Q" else f"GF({self.p})"


# ---------------------------------------------------------------------------
# vectors and matrices
# ---------------------------------------------------------------------------

def zero_vector(F: FieldSpec, d: int) -> Vector:
    return (F.zero,) * d


def unit_vector(F: FieldSpec, d: int, i: int) -> Vector:
    return tuple(F.one if j == i else F.zero for j in range(d))


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def vec_add(F, u, v):
    return tuple(F.norm(a + b) for a, b in zip(u, v))


def vec_sub(F, u, v):
    return tuple(F.norm(a - b) for a, b in zip(u, v))


def vec_scale(F, c, v):
    return tuple(F.norm(c * a) for a in v)


def lincomb(F, coeffs, vectors, d):
    """``sum(c * v)`` over the pairs; ``d`` is the length used when empty."""
    out = [0] * d
    for c, v in zip(coeffs, vectors):
        if c == 0:
            continue
        for i, a in enumerate(v):
            if a:
                out[i] += c * a
    return tuple(F.norm(x) for x in out) if F.kind == "GF" else tuple(Fraction(x) for x in out)


def zeros(F, rows, cols=None) -> Matrix:
    cols = rows if cols is None else cols
    return tuple((F.zero,) * cols for _ in range(rows))


def identity(F, d) -> Matrix:
    return tuple(unit_vector(F, d, i) for i in range(d))


def transpose(m: Matrix, cols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*m))


def mat_mul(F, a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(F.norm(sum(x * y for x, y in zip(row, col))) for col in bt) for row in a
    )


def mat_vec(F, a: Matrix, v: Vector) -> Vector:
    return tuple(F.norm(sum(x * y for x, y in zip(row, v))) for row in a)


def mat_add(F, a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(F.norm(x + y) for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(F, a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(F.norm(x - y) for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(F, c, a: Matrix) -> Matrix:
    return tuple(tuple(F.norm(c * x) for x in r) for r in a)


def mat_lincomb(F, coeffs, mats, rows, cols) -> Matrix:
    flat = lincomb(F, coeffs, [flatten(m) for m in mats], rows * cols)
    return unflatten(flat, rows, cols)


def mat_pow(F, a: Matrix, k: int) -> Matrix:
    result = identity(F, len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(F, result, base)
        k >>= 1
        if k:
            base = mat_mul(F, base, base)
    return result


def commutator(F, a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(F, mat_mul(F, a, b), mat_mul(F, b, a))


def is_zero_matrix(m: Matrix) -> bool:
    return not any(any(r) for r in m)


def flatten(m: Matrix) -> Vector:
    return tuple(x for r in m for x in r)


def unflatten(v: Sequence, rows: int, cols: int) -> Matrix:
    return tuple(tuple(v[i * cols:(i + 1) * cols]) for i in range(rows))


def as_matrix(F, rows) -> Matrix:
    """Coerce nested sequences of numbers or strings into a field matrix."""
    return tuple(tuple(F(x) for x in r) for r in rows)


def columns_to_matrix(F, cols: Sequence[Vector], nrows: int) -> Matrix:
    """Matrix whose ``j``-th column is ``cols[j]``."""
    if not cols:
        return tuple(() for _ in range(nrows))
    return tuple(zip(*cols))


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _rref_rows(F, rows: list[list], ncols: int, pivot_limit: int | None = None):
    """In-place Gauss-Jordan elimination; returns pivot columns."""
    limit = ncols if pivot_limit is None else pivot_limit
    if F.kind == "GF":
        rows[:] = [[x % F.p for x in r] for r in rows]
    else:
        rows[:] = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    gf = F.kind == "GF"
    p = F.p
    for c in range(limit):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        piv = rows[r]
        inv = F.inv(piv[c])
        if gf:
            piv = [x * inv % p for x in piv]
        else:
            piv = [x * inv for x in piv]
        rows[r] = piv
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    if gf:
                        rows[i] = [(a - f * b) % p for a, b in zip(row, piv)]
                    else:
                        rows[i] = [a - f * b for a, b in zip(row, piv)]
        pivots.append(c)
        r += 1
    return pivots


def rref(F: FieldSpec, m: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, int]:
    """Reduced row echelon form of ``m`` (zero rows kept at the bottom) and its rank."""
    rows = [list(r) for r in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = _rref_rows(F, rows, ncols)
    return tuple(tuple(r) for r in rows), len(pivots)


def rank(F, m) -> int:
    return rref(F, m)[1]


def solve(F: FieldSpec, a: Matrix, b: Vector, ncols: int | None = None) -> Vector | None:
    """One solution ``x`` of ``a x = b`` (free variables set to zero), or None."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    rows = [list(r) + [bi] for r, bi in zip(a, b)]
    pivots = _rref_rows(F, rows, ncols + 1, pivot_limit=ncols)
    for i in range(len(pivots), len(rows)):
        if rows[i][ncols] != 0:
            return None
    x = [F.zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][ncols]
    return tuple(x)


def kernel(F: FieldSpec, m: Matrix, ncols: int | None = None) -> "Subspace":
    """``{v : m v = 0}``."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    rows = [list(r) for r in m]
    pivots = _rref_rows(F, rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for i, c in enumerate(pivots):
            v[c] = F.norm(-rows[i][f])
        basis.append(tuple(v))
    return Subspace.span(F, ncols, basis)


def image(F: FieldSpec, m: Matrix, nrows: int | None = None) -> "Subspace":
    """Column space of ``m``."""
    if nrows is None:
        nrows = len(m)
    return Subspace.span(F, nrows, transpose(m) if m and m[0] else [])


def is_nilpotent_matrix(F: FieldSpec, d: Matrix) -> bool:
    """True iff ``d ** size == 0``."""
    return is_zero_matrix(mat_pow(F, d, len(d)))


def fitting_split(F: FieldSpec, d: Matrix) -> tuple["Subspace", "Subspace"]:
    """Fitting decomposition ``(ker d^t, im d^t)`` with ``t`` the size of ``d``."""
    t = len(d)
    dt = mat_pow(F, d, t)
    return kernel(F, dt, t), image(F, dt, t)


def member_of_span(F: FieldSpec, gens: Sequence[Matrix], target: Matrix):
    """Coefficients ``c`` with ``target = sum(c_i * gens[i])``, or None."""
    flat_t = flatten(target)
    if not gens:
        return () if is_zero_vector(flat_t) else None
    cols = [flatten(g) for g in gens]
    a = columns_to_matrix(F, cols, len(flat_t))
    return solve(F, a, flat_t, len(cols))


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of ``F^ambient_dim`` held by its canonical RREF basis (no zero rows)."""

    field: FieldSpec
    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, F: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [list(v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise PreconditionError(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
        pivots = _rref_rows(F, rows, ambient_dim)
        return cls(F, ambient_dim, tuple(tuple(r) for r in rows[: len(pivots)]))

    @classmethod
    def zero(cls, F, ambient_dim) -> "Subspace":
        return cls(F, ambient_dim, ())

    @classmethod
    def full(cls, F, ambient_dim) -> "Subspace":
        return cls(F, ambient_dim, identity(F, ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x != 0) for r in self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after eliminating the pivot columns."""
        F = self.field
        out = list(v)
        for row, c in zip(self.basis, self.pivots):
            f = out[c]
            if f:
                out = [F.norm(a - f * b) for a, b in zip(out, row)]
        return tuple(out)

    def __contains__(self, v) -> bool:
        return is_zero_vector(self.reduce(v))

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the canonical basis; ``v`` must lie in the subspace."""
        if v not in self:
            raise PreconditionError("vector is not in the subspace")
        return tuple(v[c] for c in self.pivots)

    def from_coordinates(self, c: Sequence) -> Vector:
        return lincomb(self.field, c, self.basis, self.ambient_dim)

    def annihilator(self) -> Matrix:
        """A matrix ``P`` with ``P v = 0`` iff ``v`` lies in the subspace."""
        return kernel(self.field, self.basis, self.ambient_dim).basis

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise PreconditionError("subspaces live in different ambient spaces")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.field, self.ambient_dim)
        stacked = self.annihilator() + other.annihilator()
        return kernel(self.field, stacked, self.ambient_dim)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(v in other for v in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def image_under(self, m: Matrix) -> "Subspace":
        F = self.field
        return Subspace.span(F, len(m), [mat_vec(F, m, v) for v in self.basis])

    def is_invariant(self, m: Matrix) -> bool:
        F = self.field
        return all(mat_vec(F, m, v) in self for v in self.basis)

    def __repr__(self):
        rows = ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in self.basis)
        return f"Subspace[{self.field}^{self.ambient_dim}]<{rows}>"


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a & b


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff ``b`` is a subspace of ``a``."""
    return b <= a


def complement_basis(s: Subspace) -> list[Vector]:
    """Unit vectors on the non-pivot columns; together with ``s`` they span everything."""
    piv = set(s.pivots)
    return [unit_vector(s.field, s.ambient_dim, j) for j in range(s.ambient_dim) if j not in piv]


def coordinates_in(F, basis: Sequence[Vector], v: Vector) -> Vector | None:
    """Coordinates of ``v`` in an arbitrary independent list, or None if outside the span."""
    d = len(v)
    a = columns_to_matrix(F, list(basis), d)
    return solve(F, a, v, len(basis))
