import itertools

import pytest

from commalg.approximation import ObjectClass
from commalg.comma import (
    Bimodule,
    TensorFunctor,
    TriangularSplit,
    check_Y_exact,
    is_projective_triple,
    membership_BXY,
)
from commalg.homology import ext_dim, ext_group, realize_extension, tor_dims
from commalg.modules import direct_sum, hom_dim, is_isomorphic, is_projective, zero_module

from conftest import SETUPS, algebra, ambient, setup, split


# -- triangular splits -------------------------------------------------------------------------

def test_L3_split_shape():
    sp = split("L3", ("1",))
    assert sp.R.dimension == 1 and sp.S.dimension == 3
    assert sp.bimodule.total_dim == 1
    assert sp.functor.is_exact() is False


def test_split_rejects_non_triangular():
    with pytest.raises(ValueError):
        TriangularSplit(algebra("L3"), ["2"])


@pytest.mark.parametrize("name,left", [("L3", ("1",)), ("kA2", ("1",)), ("Lambda4", ("1",)), ("L3", ("1", "2"))])
def test_module_triple_round_trip(name, left):
    sp = split(name, left)
    amb = ambient(name)
    for m in amb.members:
        t = sp.module_to_triple(m)
        assert is_isomorphic(sp.triple_to_module(t), m)
        assert t.total_dim == m.total_dim


@pytest.mark.parametrize("name,left", [("L3", ("1",)), ("Lambda4", ("1",))])
def test_split_is_an_equivalence(name, left):
    """Hom and Ext are preserved between Λ-modules and triples."""
    sp = split(name, left)
    amb = ambient(name)
    for m, n in itertools.product(amb.members, repeat=2):
        tm, tn = sp.module_to_triple(m), sp.module_to_triple(n)
        assert hom_dim(m, n) == hom_dim(tm, tn)
        assert ext_dim(m, n, 1) == ext_dim(tm, tn, 1)


def test_morphism_conversion_round_trip():
    sp = split("L3", ("1",))
    amb = ambient("L3")
    from commalg.modules import hom_space

    for m, n in itertools.product(amb.members, repeat=2):
        for g in hom_space(m, n):
            back = sp.morphism_to_module(sp.morphism_to_triple(g))
            assert (back - g).is_zero()


# -- tensor functors ---------------------------------------------------------------------------

def test_identity_functor_is_identity():
    s = setup("id:N2")
    for m in s.s_amb.members:
        assert is_isomorphic(s.T(m), m)
    assert s.T.is_exact() and s.T.preserves_projectives()


def test_tensor_matches_tor_zero():
    for label in SETUPS:
        s = setup(label)
        for y in s.s_amb.members:
            assert tor_dims(s.T, y, 0) == s.T(y).total_dim


def test_tensor_is_right_exact_on_extensions():
    """T(E) has dimension dim T(A) + dim T(C) - (rank of the connecting kernel) ≤ the sum."""
    s = setup("L3|1")
    for a, c in itertools.product(s.s_amb.members, repeat=2):
        g = ext_group(c, a, 1)
        for j in range(g.dim):
            e = [0] * g.dim
            e[j] = 1
            ses = realize_extension(g, e)
            te = s.T.on_morphism(ses.epi)
            assert te.is_epi()
            assert s.T(ses.middle).total_dim <= s.T(a).total_dim + s.T(c).total_dim


# -- p and q ---------------------------------------------------------------------------------

@pytest.mark.parametrize("label", SETUPS)
def test_p_left_adjoint_to_q(label):
    s = setup(label)
    for a in s.r_amb.members[:4]:
        for b in s.s_amb.members[:4]:
            pab = s.comma.p(a, b)
            for t in s.amb.members:
                ta, tb = s.comma.q(t)
                assert hom_dim(pab, t) == hom_dim(a, ta) + hom_dim(b, tb)


def test_p_additive():
    s = setup("id:kA2")
    zr, zs = zero_module(s.comma.R), zero_module(s.comma.S)
    for a in s.r_amb.members:
        for b in s.s_amb.members:
            both = direct_sum([s.comma.p(a, zs), s.comma.p(zr, b)]).module
            assert is_isomorphic(s.comma.p(a, b), both)


# -- projective triples (oracle: Ext-based projectivity) ---------------------------------------

@pytest.mark.parametrize("label", ["L3|1", "id:N2", "id:kA2", "Lambda4|1"])
def test_projective_triples(label):
    s = setup(label)
    for t in s.amb.members:
        by_ext = all(ext_dim(t, x, 1) == 0 for x in s.amb.members)
        assert bool(is_projective_triple(s.comma, t)) == is_projective(t) == by_ext


# -- Y-exactness: Tor criterion against the sequence-level oracle -----------------------------

def _sequence_level_exact(T, members):
    """T keeps every enumerated extension 0 -> A -> E -> C -> 0 (A, C indecomposable) left exact."""
    f = T.S.field
    for a, c in itertools.product(members, repeat=2):
        g = ext_group(c, a, 1)
        for coeffs in itertools.product(range(f.characteristic), repeat=g.dim):
            if not any(coeffs):
                continue
            ses = realize_extension(g, list(coeffs))
            if not T.on_morphism(ses.mono).is_mono():
                return False
    return True


@pytest.mark.parametrize("label", SETUPS)
def test_Y_exact_tor_vs_sequences(label):
    s = setup(label)
    rep = check_Y_exact(s.T, s.s_amb.members)
    assert rep.exact == _sequence_level_exact(s.T, s.s_amb.members)
    if not rep.exact:
        w = rep.witness
        assert w.is_exact() and not s.T.on_morphism(w.mono).is_mono()


def test_L3_not_Y_exact_witness():
    s = setup("L3|1")
    rep = check_Y_exact(s.T, s.s_amb.members, s.s_amb.names)
    assert not rep.exact
    assert [k for k, v in rep.tor1.items() if v] == ["I(3)=S(3)"]
    w = rep.witness
    # 0 -> P(2) -> P(3) -> S(3) -> 0 over S = kA2 on the vertices 2, 3
    assert w.left.dims == (1, 0) and w.middle.dims == (1, 1) and w.right.dims == (0, 1)


# -- the B^X_Y membership filter --------------------------------------------------------------

def test_membership_monomorphism_category():
    s = setup("id:kA2")
    every_r = ObjectClass.everything_in(s.r_amb)
    every_s = ObjectClass.everything_in(s.s_amb)
    for t in s.amb.members:
        tr = s.comma.components(t)
        assert membership_BXY(s.comma, t, every_r, every_s) == tr.phi.is_mono()


def test_explicit_bimodule_functor():
    """T = M ⊗ − for M = k viewed as a (k, k)-bimodule agrees with the identity."""
    k = algebra("k")
    b = Bimodule.regular(k)
    t = TensorFunctor(b)
    s = k.simple("1")
    assert t(s).total_dim == 1
