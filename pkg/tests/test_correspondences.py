"""Class identities in comma categories, each side computed independently.

* ⟨p(𝒳, 𝒴)⟩ (extension closure of the images of p) against the filter
  "B ∈ 𝒴, φ monic, coker φ ∈ 𝒳" whenever T is 𝒴-exact;
* ⟨p(𝒳, 𝒴)⟩^⊥ against the componentwise class (𝒳^⊥ over 𝒴^⊥);
* ⟨p(mod, mod)⟩ against ^⊥(injectives over 0);
* ⟨p(^⊥𝒳, ^⊥𝒴)⟩ against ^⊥(𝒳 over 𝒴) ∩ ^⊥(injectives over 0).
"""
import functools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from commalg.approximation import ObjectClass, extension_closure, perp_left, perp_right
from commalg.comma import check_Y_exact, membership_BXY
from commalg.homology import tor_dims
from commalg.modules import zero_module

from conftest import setup


def side_class(amb, kind):
    if kind == "all":
        return ObjectClass.everything_in(amb)
    if kind == "proj":
        return ObjectClass.projectives(amb)
    if kind == "inj":
        return ObjectClass.injectives(amb)
    raise KeyError(kind)


def tor_perp(s):
    """{Y : Tor₁(M, Y) = 0}, extension closed and the largest class on which T is exact."""
    return ObjectClass.of_indices(s.s_amb, [n for n, y in enumerate(s.s_amb.members) if tor_dims(s.T, y, 1) == 0],
                                  "Tor-perp")


def y_class(s, kind):
    return tor_perp(s) if kind == "torperp" else side_class(s.s_amb, kind)


def p_images(s, x, y):
    zr, zs = zero_module(s.comma.R), zero_module(s.comma.S)
    gens = [s.comma.p(a, zs) for a in x.support_modules()] + [s.comma.p(zr, b) for b in y.support_modules()]
    return ObjectClass.of_modules(s.amb, gens, "p(X,Y)")


@functools.lru_cache(maxsize=None)
def closure(label, xk, yk):
    s = setup(label)
    x, y = side_class(s.r_amb, xk), y_class(s, yk)
    return extension_closure(p_images(s, x, y))


def column(s, x_pred, y_pred):
    """Indices of enumerated triples (A, B, φ) with A ∈ 𝒳 and B ∈ 𝒴."""
    out = []
    for n, t in enumerate(s.amb.members):
        a, b = s.comma.q(t)
        if x_pred(a) and y_pred(b):
            out.append(n)
    return out


CASES = [
    ("L3|1", "all", "proj"), ("L3|1", "all", "torperp"), ("L3|1", "proj", "proj"),
    ("id:kA2", "all", "all"), ("id:kA2", "proj", "all"), ("id:kA2", "all", "proj"),
    ("id:kA2", "proj", "proj"), ("id:kA2", "inj", "inj"),
    ("Lambda4|1", "all", "proj"), ("Lambda4|1", "all", "torperp"),
    ("id:N2", "all", "all"), ("id:N2", "proj", "proj"),
]


@pytest.mark.parametrize("label,xk,yk", CASES)
def test_closure_of_p_images_is_membership_filter(label, xk, yk):
    s = setup(label)
    x, y = side_class(s.r_amb, xk), y_class(s, yk)
    assert check_Y_exact(s.T, y.support_modules()).exact
    filt = [n for n, t in enumerate(s.amb.members) if membership_BXY(s.comma, t, x, y)]
    assert closure(label, xk, yk).support == filt


@pytest.mark.parametrize("label,xk,yk", CASES)
def test_perp_of_closure_is_componentwise(label, xk, yk):
    s = setup(label)
    x, y = side_class(s.r_amb, xk), y_class(s, yk)
    lhs = perp_right(closure(label, xk, yk)).support
    rhs = column(s, x.right_orthogonal, y.right_orthogonal)
    assert lhs == rhs


def injectives_over_zero(s):
    zs = zero_module(s.comma.S)
    inj = ObjectClass.injectives(s.r_amb).support_modules()
    return ObjectClass.of_modules(s.amb, [s.comma.p(i, zs) for i in inj], "(I 0)")


@pytest.mark.parametrize("label", ["L3|1", "id:kA2", "Lambda4|1", "id:N2"])
def test_monomorphism_category_is_left_perp_of_injectives(label):
    s = setup(label)
    lhs = closure(label, "all", "all").support
    rhs = perp_left(injectives_over_zero(s)).support
    assert lhs == rhs


LEFT_CASES = [
    ("L3|1", "inj", "inj"), ("L3|1", "all", "all"), ("L3|1", "inj", "all"),
    ("id:kA2", "inj", "inj"), ("id:kA2", "all", "inj"), ("id:kA2", "inj", "all"),
    ("Lambda4|1", "inj", "inj"), ("id:N2", "all", "all"), ("id:N2", "inj", "inj"),
]


@pytest.mark.parametrize("label,xk,yk", LEFT_CASES)
def test_closure_of_left_perps(label, xk, yk):
    s = setup(label)
    x, y = side_class(s.r_amb, xk), side_class(s.s_amb, yk)
    lx, ly = perp_left(x), perp_left(y)
    lhs = extension_closure(p_images(s, lx, ly)).support
    col = ObjectClass.of_indices(s.amb, column(s, x.contains, y.contains), "(X Y)")
    rhs = sorted(set(perp_left(col).support) & set(perp_left(injectives_over_zero(s)).support))
    assert lhs == rhs


@st.composite
def closed_classes(draw, label):
    """Random extension-closed classes on both sides (closures of random subsets)."""
    s = setup(label)
    xs = draw(st.sets(st.integers(0, len(s.r_amb.members) - 1)))
    ys = draw(st.sets(st.integers(0, len(s.s_amb.members) - 1)))
    x = extension_closure(ObjectClass.of_indices(s.r_amb, xs, "X"))
    y = extension_closure(ObjectClass.of_indices(s.s_amb, ys, "Y"))
    return s, x, y


@given(st.one_of(closed_classes("id:kA2"), closed_classes("id:N2")))
def test_random_classes_exact_functor(data):
    s, x, y = data
    gen = extension_closure(p_images(s, x, y))
    filt = [n for n, t in enumerate(s.amb.members) if membership_BXY(s.comma, t, x, y)]
    assert gen.support == filt
    assert perp_right(gen).support == column(s, x.right_orthogonal, y.right_orthogonal)
