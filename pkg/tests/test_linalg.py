import random
from fractions import Fraction
from math import gcd, inf

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filippov.errors import PreconditionError
from filippov.linalg import (
    FieldSpec,
    Subspace,
    contains,
    fitting_split,
    identity,
    image,
    intersect,
    is_nilpotent_matrix,
    kernel,
    mat_mul,
    mat_vec,
    member_of_span,
    rank,
    rref,
    subspace_sum,
    zeros,
)

from conftest import GF2, GF5, Q


def diag(F, *xs):
    return tuple(tuple(F(xs[i]) if i == j else F.zero for j in range(len(xs))) for i in range(len(xs)))


class TestFieldSpec:
    def test_prime_check(self):
        with pytest.raises(PreconditionError):
            FieldSpec.gf(6)
        with pytest.raises(PreconditionError):
            FieldSpec.gf(2**31 + 11)

    def test_cardinality(self):
        assert Q.cardinality == inf
        assert GF5.cardinality == 5

    def test_parse(self):
        assert FieldSpec.parse("GF(7)") == FieldSpec.gf(7)
        assert FieldSpec.parse("gf5") == GF5
        assert FieldSpec.parse("Q") == Q
        with pytest.raises(PreconditionError):
            FieldSpec.parse("R")

    def test_canonical_scalars(self):
        assert Q("6/4") == Fraction(3, 2)
        assert GF5(-1) == 4
        assert GF5.inv(2) == 3
        assert Q.inv(3) == Fraction(1, 3)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GF5.inv(0)
        with pytest.raises(ZeroDivisionError):
            Q.inv(0)


class TestRref:
    def test_zero(self, field):
        m, r = rref(field, zeros(field, 2, 3))
        assert r == 0 and m == zeros(field, 2, 3)

    def test_identity(self, field):
        m, r = rref(field, identity(field, 3))
        assert r == 3 and m == identity(field, 3)

    def test_hand_example(self):
        m, r = rref(Q, ((2, 4), (1, 2)))
        assert r == 1
        assert m == ((1, 2), (0, 0))


class TestKernelImage:
    def test_identity_kernel(self, field):
        assert kernel(field, identity(field, 3)).is_zero()

    def test_zero_kernel(self, field):
        assert kernel(field, zeros(field, 3, 3)).is_full()

    def test_nilpotent_block(self, field):
        m = ((0, 1), (0, 0))
        e1 = Subspace.span(field, 2, [(1, 0)])
        assert kernel(field, m) == e1
        assert image(field, m) == e1


class TestLattice:
    def test_sum_with_zero(self, field):
        V = Subspace.span(field, 3, [(1, 2, 0)])
        assert subspace_sum(V, Subspace.zero(field, 3)) == V

    def test_disjoint_axes(self, field):
        a = Subspace.span(field, 2, [(1, 0)])
        b = Subspace.span(field, 2, [(0, 1)])
        assert intersect(a, b).is_zero()

    def test_gf2_example(self):
        s = subspace_sum(Subspace.span(GF2, 3, [(1, 1, 0)]), Subspace.span(GF2, 3, [(0, 1, 1)]))
        t = Subspace.span(GF2, 3, [(1, 0, 0), (0, 0, 1)])
        assert s & t == Subspace.span(GF2, 3, [(1, 0, 1)])

    def test_contains(self, field):
        a = Subspace.full(field, 2)
        assert contains(a, Subspace.span(field, 2, [(1, 1)]))
        assert not contains(Subspace.span(field, 2, [(1, 1)]), a)

    def test_ambient_mismatch(self):
        with pytest.raises(PreconditionError):
            Subspace.zero(Q, 2) + Subspace.zero(Q, 3)


class TestFitting:
    def test_nilpotent(self, field):
        null, inv = fitting_split(field, ((0, 1, 0), (0, 0, 1), (0, 0, 0)))
        assert null.is_full() and inv.is_zero()

    def test_invertible(self, field):
        null, inv = fitting_split(field, diag(field, 1, 2, 3))
        assert null.is_zero() and inv.is_full()

    def test_diag(self, field):
        null, inv = fitting_split(field, diag(field, 0, 0, 1))
        assert null == Subspace.span(field, 3, [(1, 0, 0), (0, 1, 0)])
        assert inv == Subspace.span(field, 3, [(0, 0, 1)])


class TestNilpotentMatrix:
    def test_examples(self, field):
        assert is_nilpotent_matrix(field, ((0, 1, 1), (0, 0, 1), (0, 0, 0)))
        assert not is_nilpotent_matrix(field, identity(field, 3))
        assert is_nilpotent_matrix(field, ((0, 1), (0, 0)))
        assert not is_nilpotent_matrix(field, ((1, 1), (0, 0)))


class TestMemberOfSpan:
    def test_examples(self, field):
        gens = [diag(field, 1, 0), diag(field, 0, 1)]
        assert tuple(member_of_span(field, gens, gens[0])) == (1, 0)
        assert tuple(member_of_span(field, gens, zeros(field, 2, 2))) == (0, 0)
        assert tuple(member_of_span(field, gens, diag(field, 2, 3))) == (2, 3)
        assert member_of_span(field, gens, ((0, 1), (0, 0))) is None


def _random_matrix(F, rng, r, c):
    return tuple(tuple(F.random(rng) if rng.random() < 0.6 else F.zero for _ in range(c)) for _ in range(r))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 6))
def test_rank_nullity_and_fitting(seed, r, c):
    rng = random.Random(seed)
    m = _random_matrix(GF5, rng, r, c)
    assert kernel(GF5, m, c).dim + image(GF5, m, r).dim == c
    d = _random_matrix(GF5, rng, c, c)
    null, inv = fitting_split(GF5, d)
    assert null.is_invariant(d) and inv.is_invariant(d)
    assert (null & inv).is_zero() and (null + inv).is_full()
    assert inv.image_under(d) == inv


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_sum_is_canonical_and_modular(seed):
    rng = random.Random(seed)
    a = Subspace.span(GF5, 5, [[GF5.random(rng) for _ in range(5)] for _ in range(rng.randint(0, 4))])
    b = Subspace.span(GF5, 5, [[GF5.random(rng) for _ in range(5)] for _ in range(rng.randint(0, 4))])
    assert (a + b).basis == (b + a).basis
    assert a.dim + b.dim == (a + b).dim + (a & b).dim
    assert a & b <= a and a <= a + b


def test_rational_pipeline_stays_reduced():
    rng = random.Random(1)
    spaces = []
    for _ in range(100):
        vecs = [[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)] for _ in range(rng.randint(1, 3))]
        S = Subspace.span(Q, 4, vecs)
        m, _ = rref(Q, vecs, 4)
        K = kernel(Q, tuple(tuple(v) for v in vecs), 4)
        spaces.extend([S, K, S + K])
        for row in m:
            for x in row:
                assert isinstance(x, Fraction)
    for S in spaces:
        for row in S.basis:
            for x in row:
                assert x.denominator > 0 and gcd(x.numerator, x.denominator) == 1


def test_kernel_really_annihilates():
    rng = random.Random(3)
    for _ in range(30):
        m = _random_matrix(Q, rng, 3, 5)
        for v in kernel(Q, m, 5).basis:
            assert all(x == 0 for x in mat_vec(Q, m, v))
        assert rank(Q, m) + kernel(Q, m, 5).dim == 5
    a = _random_matrix(GF5, rng, 3, 3)
    assert mat_mul(GF5, a, identity(GF5, 3)) == tuple(tuple(GF5(x) for x in r) for r in a)
