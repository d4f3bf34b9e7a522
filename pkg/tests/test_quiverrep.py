import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monrep.amodule import hom_matrices, zero_module
from monrep.instances import TEST_QUIVERS, instance_rng, random_module, random_monic, random_rep, suite_algebras
from monrep.quiverrep import (
    RepMorphism,
    Representation,
    adjunction_check,
    cok_i,
    compose_morphisms,
    delta,
    from_lambda_module,
    hom_rep_basis,
    identity_morphism,
    is_monic,
    is_morphism,
    m_functor,
    m_i,
    rep_cokernel,
    rep_is_isomorphic,
    rep_kernel,
    sequence_exactness,
    to_lambda_module,
    zero_morphism,
)
from monrep.stablecat import point_rep

from conftest import brute_rep_homs, log_p

ALGS = suite_algebras()


def rep(q, A, modules, maps):
    return Representation(q, A, modules, [A.field.array(m) for m in maps])


def test_delta_on_a2_is_the_arrow(k2, a2):
    A, reg, S = k2
    x = m_i(S, 2, a2)
    assert np.array_equal(delta(x, 1).mat, x.maps[0])


def test_delta_is_a_row_block(k2):
    A, reg, S = k2
    q = TEST_QUIVERS["2->1<-3"]
    x = rep(q, A, {1: reg, 2: S, 3: S}, [[[0], [1]], [[0], [1]]])
    d = delta(x, 1).mat
    assert d.shape == (2, 2) and np.array_equal(d, np.hstack(x.maps))
    assert not is_monic(x)


def test_identity_rep_is_monic_with_zero_cokernel(k2, a2):
    A, reg, S = k2
    x = m_i(reg, 2, a2)
    assert is_monic(x)
    assert cok_i(x, 1)[0].dim == 0
    assert cok_i(x, 2)[0].dim == 2  # a source keeps X_i


def test_zero_map_is_not_monic(k2, a2):
    A, reg, S = k2
    x = rep(a2, A, {1: reg, 2: reg}, [np.zeros((2, 2), dtype=np.int64)])
    report = is_monic(x)
    assert not report and report.failures == [1]


def test_m_i_shapes(k2, a2):
    A, reg, S = k2
    assert m_i(S, 2, a2).dim_vector == (1, 1)
    assert m_i(S, 1, a2).dim_vector == (1, 0)
    assert m_functor(S, a2).dim_vector == (2, 1)


def test_hom_between_m_i_of_simple(k2, a2):
    A, reg, S = k2
    assert len(hom_rep_basis(m_i(S, 2, a2), m_i(S, 1, a2))) == 0
    assert len(hom_rep_basis(m_i(S, 1, a2), m_i(S, 2, a2))) == 1


def test_adjunction_on_m_i(k2, a2):
    A, reg, S = k2
    for mod in (S, reg):
        for i in (1, 2):
            c = adjunction_check(mod, m_i(mod, i, a2), i)
            assert c.verified and c.summary["dim_left"] == c.summary["dim_right"] == len(hom_matrices(mod, mod))


@pytest.mark.parametrize("qn", list(TEST_QUIVERS))
@pytest.mark.parametrize("an", ["GF(2)[x]/(x^2)", "Nakayama(2,2)"])
def test_hom_rep_matches_enumeration(qn, an):
    A, q = ALGS[an], TEST_QUIVERS[qn]
    checked = 0
    for k in range(30):
        rng = instance_rng(5, k)
        x, y = random_rep(q, A, rng), random_rep(q, A, rng)
        size = sum(x[i].dim * y[i].dim for i in q.vertices)
        if 2**size > 2**16:
            continue
        basis = hom_rep_basis(x, y)
        assert all(is_morphism(f) for f in basis)
        assert len(basis) == log_p(len(brute_rep_homs(x, y)), 2)
        checked += 1
    assert checked >= 5


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**20), st.sampled_from(list(ALGS)), st.sampled_from(list(TEST_QUIVERS)))
def test_adjunction_dimensions(seed, an, qn):
    A, q = ALGS[an], TEST_QUIVERS[qn]
    rng = instance_rng(seed, 9)
    x = random_rep(q, A, rng)
    m = random_module(A, rng)
    i = int(rng.integers(1, q.n + 1))
    c = adjunction_check(m, x, i)
    assert c.verified and c.summary["dim_left"] == c.summary["dim_right"]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**20), st.sampled_from(list(ALGS)), st.sampled_from(list(TEST_QUIVERS)))
def test_lambda_round_trip(seed, an, qn):
    A, q = ALGS[an], TEST_QUIVERS[qn]
    x = random_rep(q, A, instance_rng(seed, 10))
    lm = to_lambda_module(x)
    assert lm.dim == x.total_dim
    back, _ = from_lambda_module(lm, q, A)
    assert back.dim_vector == x.dim_vector
    for i in q.vertices:
        assert np.array_equal(back[i].action, x[i].action)
    for a in range(len(q.arrows)):
        assert np.array_equal(back.maps[a], x.maps[a])


def test_lambda_module_of_m2_simple(k2, a2):
    A, reg, S = k2
    assert to_lambda_module(m_i(S, 2, a2)).dim == 2


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**20), st.sampled_from(list(ALGS)), st.sampled_from(list(TEST_QUIVERS)))
def test_kernel_cokernel_sequences_are_exact(seed, an, qn):
    A, q = ALGS[an], TEST_QUIVERS[qn]
    rng = instance_rng(seed, 11)
    x, y = random_rep(q, A, rng), random_rep(q, A, rng)
    basis = hom_rep_basis(x, y)
    F = A.field
    f = zero_morphism(x, y)
    for h in basis:
        if rng.random() < 0.5:
            f = RepMorphism(x, y, {i: F.add(f[i], h[i]) for i in q.vertices})
    k, inc = rep_kernel(f)
    c, proj = rep_cokernel(f)
    assert is_morphism(inc) and is_morphism(proj)
    cert = sequence_exactness([inc, f, proj])
    assert cert.verified, cert.failures()


def test_broken_sequence_is_pinpointed(k2):
    A, reg, S = k2
    F = A.field
    q = TEST_QUIVERS["1<-3->2"]
    x = rep(q, A, {1: S, 2: S, 3: zero_module(A)}, [np.zeros((1, 0)), np.zeros((1, 0))])
    g = RepMorphism(x, x, {1: F.zeros(1, 1), 2: F.eye(1), 3: F.zeros(0, 0)})
    assert is_morphism(g)
    cert = sequence_exactness([identity_morphism(x), g], right_zero=False)
    assert not cert.verified
    assert cert.failures() == ["sequence: position 1, vertex 2: im = ker"]


def test_rep_isomorphism_under_scramble():
    A, q = ALGS["GF(3)[x]/(x^3)"], TEST_QUIVERS["2->1<-3"]
    rng = instance_rng(3, 0)
    x = random_monic(q, A, rng, scrambled=False)
    from monrep.instances import scramble

    y = scramble(x, rng)
    v = rep_is_isomorphic(x, y)
    assert v and is_morphism(v.witness)
    z = random_monic(q, A, instance_rng(3, 1))
    if z.dim_vector != x.dim_vector:
        assert not rep_is_isomorphic(x, z)


def test_composition_and_identity(k2, a2):
    A, reg, S = k2
    x = m_functor(reg, a2)
    for f in hom_rep_basis(x, x)[:4]:
        g = compose_morphisms(identity_morphism(x), f)
        assert all(np.array_equal(g[i], f[i]) for i in a2.vertices)


def test_point_rep_is_a_module(k2):
    A, reg, S = k2
    x = point_rep(reg)
    assert x.dim_vector == (2,)
