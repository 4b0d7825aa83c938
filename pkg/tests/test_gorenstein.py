import pytest

from commalg.approximation import ObjectClass, extension_closure
from commalg.gorenstein import (
    NotCompatible,
    check_compatibility,
    gp_class,
    gp_precover_comma,
    is_gorenstein_projective,
    is_gp_triple,
)
from commalg.homology import ext_dim, homological_dimension
from commalg.modules import zero_module

from conftest import ambient, setup


def names(c):
    return set(c.member_names())


def test_N2_everything_gp_with_period_one():
    rep = gp_class(ambient("N2"))
    assert names(rep.cls) == {"S(1)", "P(1)=I(1)"}
    v = rep.verdicts["S(1)"]
    assert v.certified and v.certificate["period"] == 1
    assert v.complex.is_exact()
    assert all(v.complex.hom_exact(p) for p in ambient("N2").category.projectives())


@pytest.mark.parametrize("name", ["kA2", "L3", "Lambda4"])
def test_gp_equals_projectives(name):
    amb = ambient(name)
    rep = gp_class(amb)
    assert names(rep.cls) == names(ObjectClass.projectives(amb))
    assert not rep.undecided


def test_cm_free_side_algebra():
    s = setup("Lambda4|1")
    rep = gp_class(s.s_amb)
    assert names(rep.cls) == names(ObjectClass.projectives(s.s_amb))


@pytest.mark.parametrize("name", ["kA2", "L3"])
def test_finite_global_dimension_oracle(name):
    """Finite global dimension: GP = projective (the Ext condition alone decides)."""
    amb = ambient(name)
    assert all(homological_dimension(m, "pd") is not None for m in amb.members)
    for m in amb.members:
        v = is_gorenstein_projective(m)
        assert v.certified == (homological_dimension(m, "pd") == 0)


def test_refutation_certificate():
    v = is_gorenstein_projective(ambient("kA2").module("S(2)"))
    assert v.refuted
    c = v.certificate
    assert c["degree"] == 1 and c["dimension"] == 1


def test_gp_class_is_extension_closed():
    for name in ("N2", "L3", "Lambda4"):
        rep = gp_class(ambient(name))
        assert extension_closure(rep.cls).support == rep.cls.support


# -- compatibility ---------------------------------------------------------------------------

def test_cm_free_compatibility_report():
    s = setup("Lambda4|1")
    rep = check_compatibility(s.T, s.r_amb, s.s_amb)
    assert rep.c1.holds is False and rep.c1.method == "direct-bounded"
    assert rep.w1.holds is True
    assert rep.c2.holds is True
    assert not rep.compatible and rep.weak_compatible
    tensored = rep.c1.detail["witness"]["tensored"]
    assert tensored["text"] == "⋯ -> k -0-> k -0-> k -> ⋯"
    assert tensored["homology"] == [1]


def test_identity_functor_compatible():
    s = setup("id:N2")
    rep = check_compatibility(s.T, s.r_amb, s.s_amb)
    assert rep.compatible and rep.c1.method == "dimension-bound"


@pytest.mark.parametrize("label", ["Lambda4|1", "id:N2"])
def test_W1_equivalent_to_p_of_gp_being_gp(label):
    s = setup(label)
    rep = check_compatibility(s.T, s.r_amb, s.s_amb)
    zr = zero_module(s.comma.R)
    gp_s = gp_class(s.s_amb).cls
    p_gp = all(is_gorenstein_projective(s.comma.p(zr, g)).certified for g in gp_s.support_modules())
    assert rep.w1.holds == p_gp


def test_triple_characterization_on_T2_of_N2():
    """Exhaustive: monic φ, GP cokernel and GP B ⇔ direct detection on the comma object."""
    s = setup("id:N2")
    rep = check_compatibility(s.T, s.r_amb, s.s_amb)
    gr, gs = gp_class(s.r_amb).cls, gp_class(s.s_amb).cls
    seen = set()
    for t in s.amb.members:
        v = is_gp_triple(s.comma, t, gr, gs, rep, cross_check=True)
        assert v.direct.status != "UpToBound"
        assert v.gp == v.direct.certified
        seen.add(v.gp)
    assert seen == {True, False}


def test_triple_characterization_refuses_incompatible():
    s = setup("Lambda4|1")
    rep = check_compatibility(s.T, s.r_amb, s.s_amb)
    gr, gs = gp_class(s.r_amb).cls, gp_class(s.s_amb).cls
    with pytest.raises(NotCompatible):
        is_gp_triple(s.comma, s.amb.members[0], gr, gs, rep)


def test_gp_precovers_on_T2_of_N2():
    s = setup("id:N2")
    rep = check_compatibility(s.T, s.r_amb, s.s_amb)
    gr, gs = gp_class(s.r_amb).cls, gp_class(s.s_amb).cls
    direct = gp_class(s.amb).cls
    for t in s.amb.members:
        r = gp_precover_comma(s.comma, t, gr, gs, rep)
        assert all(r.certificates.values())
        assert direct.contains(r.middle)
        # the kernel is right orthogonal to every GP object found directly
        assert all(ext_dim(g, r.kernel, 1) == 0 for g in direct.support_modules())
