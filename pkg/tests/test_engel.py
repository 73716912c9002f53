import random

import pytest

from filippov.catalog import abelian, aff, cross, heis
from filippov.core import direct_sum, inner_derivation, normalizer, subalgebra_closure
from filippov.engel import (
    EngelWitness,
    all_inner_derivations,
    cartan_subalgebra,
    certified_engel_subalgebras,
    engel_set,
    engel_witness,
    intravariance_check,
    is_cartan,
    is_engel_subalgebra,
    minimal_engel_descent,
    self_normalizing_above,
)
from filippov.errors import PreconditionError, UnsupportedError
from filippov.lattice import enumerate_subalgebras, minimal_elements
from filippov.linalg import identity, zeros
from filippov.repmod import adjoint_module, split_extension
from filippov.series import random_element

from conftest import GF3, GF5, GF7, Q


def span(alg, *idx):
    return alg.span([alg.e(i - 1) for i in idx])


class TestEngelSet:
    def test_zero_derivation(self, field):
        L = aff(field, 3)
        assert engel_set(L, zeros(field, 3, 3)).is_full()

    def test_nilpotent_algebra(self, field):
        L = heis(field, 3)
        rng = random.Random(0)
        for _ in range(5):
            d = inner_derivation(L, [random_element(L, rng) for _ in range(2)])
            assert engel_set(L, d).is_full()

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_aff(self, field, n):
        L = aff(field, n)
        d = inner_derivation(L, [L.e(i) for i in range(n - 1)])
        assert engel_set(L, d) == L.span([L.e(i) for i in range(n - 1)])

    def test_not_a_derivation(self):
        L = heis(Q, 3)
        with pytest.raises(PreconditionError):
            engel_set(L, identity(Q, 4))


class TestCertificate:
    def test_strings_certify(self, field):
        L = cross(field, 3)
        rng = random.Random(1)
        for _ in range(5):
            w = engel_witness(L, [random_element(L, rng) for _ in range(2)])
            assert is_engel_subalgebra(L, w)

    def test_zero(self, field):
        from filippov.core import DerivationMatrix
        L = aff(field, 3)
        w = EngelWitness(DerivationMatrix(zeros(field, 3, 3)), L.full)
        assert is_engel_subalgebra(L, w)

    def test_aff(self, field):
        L = aff(field, 3)
        w = engel_witness(L, [L.e(0), L.e(1)])
        assert w.engel_set == span(L, 1, 2) and is_engel_subalgebra(L, w)
        assert w.string == (L.e(0), L.e(1))

    def test_wrong_set_rejected(self, field):
        L = aff(field, 3)
        w = engel_witness(L, [L.e(0), L.e(1)])
        assert not is_engel_subalgebra(L, EngelWitness(w.derivation, L.full))


class TestSelfNormalizing:
    def test_full(self, field):
        L = aff(field, 3)
        assert self_normalizing_above(L, span(L, 1, 2), L.full)

    @pytest.mark.parametrize("n", [2, 3])
    def test_aff(self, field, n):
        L = aff(field, n)
        E = L.span([L.e(i) for i in range(n - 1)])
        assert self_normalizing_above(L, E, E)

    def test_heis_plus_aff(self):
        L = direct_sum(heis(GF7, 3), aff(GF7, 3))
        rng = random.Random(4)
        for _ in range(10):
            w = engel_witness(L, [random_element(L, rng) for _ in range(2)])
            U = subalgebra_closure(L, w.engel_set + L.span([random_element(L, rng)]))
            assert self_normalizing_above(L, w.engel_set, U)

    def test_not_above(self, field):
        L = aff(field, 3)
        with pytest.raises(PreconditionError):
            self_normalizing_above(L, span(L, 1, 2), span(L, 1))


class TestDescent:
    @pytest.mark.parametrize("L", [heis(GF5, 2), heis(GF5, 3), abelian(GF5, 3, 4), heis(Q, 4)], ids=repr)
    def test_nilpotent_returns_l(self, L):
        w = minimal_engel_descent(L)
        assert w.engel_set.is_full()
        assert cartan_subalgebra(L).is_full()

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_aff(self, n):
        L = aff(GF7, n)
        S = cartan_subalgebra(L, seed=3)
        assert S == L.span([L.e(i) for i in range(n - 1)])

    def test_aff_over_rationals(self):
        L = aff(Q, 3)
        assert cartan_subalgebra(L) == span(L, 1, 2)

    def test_history_strictly_decreasing(self):
        for L in (cross(GF5, 2), direct_sum(aff(GF7, 2), cross(GF7, 2)), split_extension(adjoint_module(aff(GF7, 2))).algebra):
            h = minimal_engel_descent(L).history
            assert all(a > b for a, b in zip(h, h[1:]))

    def test_field_too_small(self):
        with pytest.raises(UnsupportedError):
            minimal_engel_descent(cross(GF3, 3))

    def test_sl2_descends(self):
        L = cross(GF5, 2)
        w = minimal_engel_descent(L)
        assert w.engel_set.dim == 1 and is_cartan(L, w.engel_set)


class TestIsCartan:
    def test_nilpotent_full(self, field):
        L = heis(field, 3)
        assert is_cartan(L, L.full)

    @pytest.mark.parametrize("n", [2, 3])
    def test_aff(self, field, n):
        L = aff(field, n)
        assert is_cartan(L, L.span([L.e(i) for i in range(n - 1)]))
        assert not is_cartan(L, span(L, n))

    def test_abelian_proper(self, field):
        L = abelian(field, 2, 3)
        assert not is_cartan(L, span(L, 1, 2))


class TestIntravariance:
    def test_trivial_ideals(self):
        L = aff(GF7, 3)
        assert intravariance_check(L, L.full).holds
        r = intravariance_check(L, L.zero_space)
        assert r.holds and r.S.is_zero() and r.normalizer.is_full()

    def test_aff_extension(self):
        ext = split_extension(adjoint_module(aff(GF7, 3)))
        L = ext.algebra
        K = L.span([L.e(2)]) + ext.module_part
        assert intravariance_check(L, K).holds


def test_minimal_engel_equals_cartan_small():
    L = cross(GF5, 2)
    ders = all_inner_derivations(L)
    assert len(ders) == 125
    engels = certified_engel_subalgebras(L, ders)
    cartans = [S for S in enumerate_subalgebras(L) if is_cartan(L, S)]
    assert minimal_elements(engels) == sorted(cartans, key=lambda s: (s.dim, s.basis))


def test_lemma_self_normalizing_random():
    L = direct_sum(aff(GF7, 2), heis(GF7, 2))
    rng = random.Random(8)
    for _ in range(20):
        w = engel_witness(L, [random_element(L, rng)])
        assert normalizer(L, w.engel_set) == w.engel_set
