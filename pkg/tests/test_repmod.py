import random

import pytest

from filippov.catalog import abelian, aff, cross, heis
from filippov.core import center, direct_sum, validate_jacobi
from filippov.errors import PreconditionError
from filippov.linalg import Subspace, commutator, mat_mul
from filippov.repmod import (
    LModule,
    adjoint_module,
    components,
    hom_space_dim,
    irreducible_isomorphic,
    isomorphic_exhaustive,
    matrix_span_basis,
    rep_kernel,
    rho_r_span,
    split_extension,
    split_extension_jacobi_ok,
    validate_representation,
    verify_subnormal_chain,
    zero_module,
)
from filippov.series import is_k_solubly_embedded, is_nilpotent

from conftest import GF3, GF5, Q
from modules import constructed_modules


def span(alg, *idx):
    return alg.span([alg.e(i - 1) for i in idx])


CATALOG = [abelian(GF5, 3, 3), heis(GF5, 2), heis(GF5, 3), aff(GF5, 2), aff(GF5, 3), cross(GF5, 2),
           cross(GF5, 3), heis(Q, 3), aff(Q, 4)]


class TestValidate:
    def test_zero(self, field):
        assert validate_representation(zero_module(aff(field, 3), 2)).ok

    @pytest.mark.parametrize("L", CATALOG, ids=lambda L: repr(L)[:40])
    def test_adjoint(self, L):
        assert validate_representation(adjoint_module(L)).ok

    def test_corrupted_adjoint(self, field):
        m = adjoint_module(heis(field, 3))
        rho = dict(m.rho)
        key = next(iter(rho))
        mat = [list(r) for r in rho[key]]
        mat[0][0] = field.one
        rho[key] = tuple(tuple(r) for r in mat)
        rep = validate_representation(LModule(m.alg, m.vdim, rho))
        assert not rep.ok and rep.violations


class TestSplitExtension:
    def test_zero_rep(self, field):
        L = aff(field, 3)
        ext = split_extension(zero_module(L, 2)).algebra
        assert ext.sc == direct_sum(L, abelian(field, 3, 2)).sc and ext.dim == 5

    def test_adjoint_of_abelian(self, field):
        ext = split_extension(adjoint_module(abelian(field, 3, 3))).algebra
        assert ext.dim == 6 and not ext.sc

    def test_identity_action(self, field):
        L = abelian(field, 3, 2)
        m = LModule.from_table(L, 1, {(0, 1): ((1,),)})
        ext = split_extension(m)
        E = ext.algebra
        assert validate_jacobi(E).ok
        assert E.sc == {(0, 1, 2): (0, 0, 1)}
        assert ext.module_part == span(E, 3)

    def test_invalid_rep_rejected(self):
        L = aff(GF5, 3)
        # [rho(e1,e2), rho(e1,e3)] = 0 but rho(e1, [e1,e2,e3]) = rho(e1,e3) = 1
        m = LModule.from_table(L, 1, {(0, 1): ((1,),), (0, 2): ((1,),)})
        assert not validate_representation(m).ok
        with pytest.raises(PreconditionError):
            split_extension(m)


class TestKernel:
    def test_zero_rep(self, field):
        L = aff(field, 3)
        assert rep_kernel(zero_module(L, 2)).is_full()

    @pytest.mark.parametrize("L", CATALOG, ids=lambda L: repr(L)[:40])
    def test_adjoint_kernel_is_centre(self, L):
        assert rep_kernel(adjoint_module(L)) == center(L)

    def test_identity_action(self, field):
        L = abelian(field, 3, 2)
        assert rep_kernel(LModule.from_table(L, 1, {(0, 1): ((1,),)})).is_zero()


class TestAdjoint:
    def test_abelian(self, field):
        assert not adjoint_module(abelian(field, 3, 3)).rho

    def test_heis(self, field):
        m = adjoint_module(heis(field, 3))
        r = m.basis_rho((0, 1))
        assert [(i, j) for i in range(4) for j in range(4) if r[i][j]] == [(3, 2)]

    def test_aff(self, field):
        m = adjoint_module(aff(field, 3))
        r = m.basis_rho((0, 1))
        assert [(i, j) for i in range(3) for j in range(3) if r[i][j]] == [(2, 2)]


class TestRhoR:
    def test_zero(self, field):
        m = adjoint_module(heis(field, 3))
        assert rho_r_span(m, m.alg.zero_space, 1) == []

    def test_full(self, field):
        m = adjoint_module(cross(field, 3))
        gens = matrix_span_basis(field, m.generators(), m.vdim)
        assert rho_r_span(m, m.alg.full, 1) == gens

    def test_heis_e1(self, field):
        m = adjoint_module(heis(field, 3))
        got = rho_r_span(m, span(m.alg, 1), 1)
        want = matrix_span_basis(field, [m.basis_rho(t) for t in ((0, 1), (0, 2), (0, 3))], 4)
        assert got == want

    def test_bad_r(self):
        m = adjoint_module(heis(GF5, 3))
        with pytest.raises(PreconditionError):
            rho_r_span(m, m.alg.full, 3)


class TestSubnormal:
    def test_examples(self, field):
        L = aff(field, 3)
        assert verify_subnormal_chain(L, [L.full])
        assert verify_subnormal_chain(L, [L.zero_space, L.full])
        assert not verify_subnormal_chain(L, [span(L, 1), L.full])
        assert verify_subnormal_chain(L, [span(L, 3), L.full])


class TestIsomorphism:
    def test_intertwiners(self):
        a = [((1, 0), (0, 2))]
        b = [((2, 0), (0, 1))]
        assert isomorphic_exhaustive(GF3, a, b, 2)
        assert hom_space_dim(GF3, a, b, 2, 2) == 2
        rot = [((0, 2), (1, 0))]
        assert not isomorphic_exhaustive(GF3, a, rot, 2)
        assert irreducible_isomorphic(GF3, [((1,),)], [((1,),)], 1, 1)
        assert not irreducible_isomorphic(GF3, [((1,),)], [((2,),)], 1, 1)


@pytest.mark.parametrize("case", constructed_modules(), ids=lambda c: c[0])
def test_components(case):
    name, m, N, dims, classes = case
    assert validate_representation(m).ok
    dec = components(m, N)
    assert sorted(W.dim for W in dec.components) == sorted(dims)
    assert len(set(dec.factor_classes)) == classes
    total = Subspace.zero(m.field, m.vdim)
    for W in dec.components:
        assert (total & W).is_zero()
        total = total + W
        assert all(W.is_invariant(g) for g in m.generators())
    assert total.is_full()


def test_irreducible_factors_isomorphic():
    name, m, N, _, _ = constructed_modules()[2]
    from filippov.repmod import invariant_subspaces
    subs = invariant_subspaces(GF3, m.generators(), m.vdim)
    assert len(subs) == 2  # irreducible under L
    dec = components(m, N)
    assert len(dec.factor_classes) == 2 and len(set(dec.factor_classes)) == 1


def test_components_needs_nilpotent_ideal():
    L = aff(GF3, 3)
    with pytest.raises(PreconditionError):
        components(adjoint_module(L), L.full)


def test_rep_validity_matches_extension_jacobi():
    from filippov.catalog import _random_rho
    rng = random.Random(11)
    for L in (aff(GF5, 2), heis(GF5, 2), aff(GF5, 3)):
        for _ in range(20):
            m = _random_rho(L, 2, rng)
            assert validate_representation(m, fail_fast=True).ok == split_extension_jacobi_ok(m)


def _assoc_nilpotent(F, gens, size):
    if not gens:
        return True
    power = matrix_span_basis(F, gens, size)
    for _ in range(size + 1):
        if not power:
            return True
        power = matrix_span_basis(F, [mat_mul(F, p, g) for p in power for g in gens], size)
    return not power


@pytest.mark.parametrize("L", [heis(GF5, 2), heis(GF5, 3), heis(GF5, 4), abelian(GF5, 3, 3),
                               direct_sum(heis(GF5, 3), heis(GF5, 3))], ids=repr)
def test_nilpotent_algebras_act_nilpotently(L):
    m = adjoint_module(L)
    assert _assoc_nilpotent(L.field, rho_r_span(m, L.full, 1), L.dim)


def _lie_soluble(F, gens, size):
    cur = matrix_span_basis(F, gens, size)
    for _ in range(size * size + 1):
        if not cur:
            return True
        nxt = matrix_span_basis(F, [commutator(F, a, b) for a in cur for b in cur], size)
        if len(nxt) == len(cur):
            return False
        cur = nxt
    return not cur


@pytest.mark.parametrize("L", [aff(GF3, 3), aff(GF3, 2), heis(GF3, 3), direct_sum(aff(GF3, 2), aff(GF3, 2))], ids=repr)
def test_two_solubly_embedded_ideals_act_solubly(L):
    from filippov.lattice import enumerate_ideals
    m = adjoint_module(L)
    for S in enumerate_ideals(L):
        if is_k_solubly_embedded(L, S, 2):
            assert _lie_soluble(L.field, rho_r_span(m, S, 1), L.dim)


def test_faithful_nilpotent_action_forces_nilpotency():
    # Heisenberg Lie algebra by strictly upper triangular 3x3 matrices
    F = GF5
    L = heis(F, 2)
    E = lambda i, j: tuple(tuple(1 if (r, c) == (i, j) else 0 for c in range(3)) for r in range(3))
    m = LModule.from_table(L, 3, {(0,): E(0, 1), (1,): E(1, 2), (2,): E(0, 2)})
    assert validate_representation(m).ok
    assert rep_kernel(m).is_zero()
    assert _assoc_nilpotent(F, m.generators(), 3)
    assert is_nilpotent(L)
