import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from commalg import linalg as la
from commalg.algebra import NotMonomial, monomial_algebra
from commalg.modules import (
    Module,
    cokernel,
    decompose,
    direct_sum,
    dual,
    enumerate_bruteforce,
    enumerate_indecomposables,
    find_isomorphism,
    hom_dim,
    hom_space,
    image,
    is_indecomposable,
    is_isomorphic,
    is_projective,
    kernel,
    projective_cover,
    pushout,
    pullback,
)

from conftest import algebra, ambient


# -- algebras ----------------------------------------------------------------------------------

@pytest.mark.parametrize("name,dim", [("kA2", 3), ("L3", 5), ("N2", 2), ("Lambda4", 6), ("k", 1)])
def test_algebra_dimension(name, dim):
    assert algebra(name).dimension == dim


def test_relation_must_be_a_path():
    with pytest.raises((NotMonomial, ValueError)):
        monomial_algebra(["1", "2"], [("a", "1", "2")], [("a", "a")])


def test_projectives_sum_to_regular():
    for name in ("kA2", "L3", "N2", "Lambda4"):
        a = algebra(name)
        assert sum(p.total_dim for p in a.projectives()) == a.dimension
        assert sum(i.total_dim for i in a.injectives()) == a.dimension


def test_L3_projectives_and_injectives(L3):
    dims = {v: L3.projective(v).dims for v in L3.vertices}
    assert dims == {"1": (1, 0, 0), "2": (1, 1, 0), "3": (0, 1, 1)}
    inj = {v: L3.injective(v).dims for v in L3.vertices}
    assert inj == {"1": (1, 1, 0), "2": (0, 1, 1), "3": (0, 0, 1)}


# -- the Hom formula (oracle: dim Hom(P(v), X) = dim X_v) -------------------------------------

@pytest.mark.parametrize("name", ["kA2", "L3", "N2", "Lambda4"])
def test_hom_from_projective_is_vertex_space(name):
    a = algebra(name)
    for x in ambient(name).members:
        for v in a.vertices:
            assert hom_dim(a.projective(v), x) == x.dim(v)


# -- enumeration against brute force ---------------------------------------------------------

@pytest.mark.parametrize("name,cap,count", [("kA2", 3, 3), ("L3", 3, 5), ("N2", 3, 2)])
def test_enumeration_matches_bruteforce(name, cap, count):
    a = algebra(name)
    fast = enumerate_indecomposables(a, cap)
    slow = enumerate_bruteforce(a, cap)
    assert len(fast) == len(slow) == count
    for m in slow:
        assert sum(is_isomorphic(m, n) for n in fast) == 1


def test_enumeration_over_f3_kA2():
    a = algebra("kA2", 3)
    assert len(enumerate_indecomposables(a, 4)) == 3


def test_enumeration_of_cm_free_example():
    assert len(ambient("Lambda4").members) == 9


# -- kernels, cokernels, images --------------------------------------------------------------

def _maps(name):
    amb = ambient(name)
    for m in amb.members:
        for n in amb.members:
            for g in hom_space(m, n):
                yield g


@pytest.mark.parametrize("name", ["kA2", "L3", "N2"])
def test_kernel_cokernel_image_exact(name):
    for g in _maps(name):
        k, inc = kernel(g)
        c, proj = cokernel(g)
        assert (g @ inc).is_zero() and inc.is_mono()
        assert (proj @ g).is_zero() and proj.is_epi()
        im, epi, mono = image(g)
        assert (mono @ epi - g).is_zero()
        assert k.total_dim + im.total_dim == g.source.total_dim
        assert c.total_dim + im.total_dim == g.target.total_dim


@pytest.mark.parametrize("name", ["L3", "N2"])
def test_pushout_pullback_dimensions(name):
    for g in _maps(name):
        if g.source.is_zero():
            continue
        p, i1, i2 = pushout(g, g)
        assert (i1 @ g - i2 @ g).is_zero()
        pb, q1, q2 = pullback(g, g)
        assert (g @ q1 - g @ q2).is_zero()


# -- decomposition and isomorphism ------------------------------------------------------------

@st.composite
def sums(draw, name):
    amb = ambient(name)
    idx = draw(st.lists(st.integers(0, len(amb.members) - 1), min_size=1, max_size=3))
    return idx, direct_sum([amb.members[i] for i in idx]).module


@given(sums("L3"))
def test_decompose_recovers_summands(pair):
    idx, m = pair
    amb = ambient("L3")
    d = decompose(m)
    assert d.witness.is_iso()
    assert sorted(idx) == sorted(i for s, mult in d.summands for i in [amb.locate(s)] * mult)


@given(sums("N2"), st.integers(0, 2 ** 10))
def test_iso_detected_after_base_change(pair, seed):
    _, m = pair
    f = m.field
    rng = np.random.default_rng(seed)
    maps, action = {}, {}
    for v, d in zip(m.algebra.vertices, m.dims):
        while True:
            g = rng.integers(0, 2, size=(d, d))
            if d == 0 or round(abs(np.linalg.det(g))) % 2 == 1:
                break
        maps[v] = g
    for a in m.algebra.arrows:
        g_t, g_s = maps[a.target], maps[a.source]
        action[a.name] = f.mul(g_t, m.action[a.name], la.inverse(f, g_s)) if g_s.size else m.action[a.name]
    n = Module(m.algebra, m.dims, action)
    iso = find_isomorphism(m, n)
    assert iso is not None and iso.is_iso()


def test_non_isomorphic_same_dims(L3):
    amb = ambient("L3")
    p2, s1 = amb.module("P(2)=I(1)"), amb.module("P(1)=S(1)")
    s2 = amb.module("S(2)")
    assert not is_isomorphic(p2, direct_sum([s1, s2]).module)


@pytest.mark.parametrize("name", ["kA2", "L3", "N2", "Lambda4"])
def test_enumerated_modules_are_indecomposable(name):
    for m in ambient(name).members:
        assert is_indecomposable(m)


def test_projective_cover_and_duality():
    for name in ("kA2", "L3", "N2", "Lambda4"):
        for m in ambient(name).members:
            cover = projective_cover(m)
            assert cover.epi.is_epi() and is_projective(cover.module)
            assert is_isomorphic(dual(dual(m)), m)


def test_module_validation_rejects_broken_relation(L3):
    with pytest.raises(ValueError):
        Module(L3, [1, 1, 1], {"α": [[1]], "β": [[1]]})
