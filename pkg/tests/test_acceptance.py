"""Acceptance criteria 1–8.  Each criterion prints one verdict line (shown even
without ``-s``) and then asserts; a failing assertion still prints FAIL first.

Criterion 1 reproduces the worked counterexample on Λ = kA3/(βα).  Items
(a)–(c) agree with the published statement.  Items (d)–(e) do not: the
simple projective P(1) = S(1) lies in the right perp of the class, and S(2)
has the special precover 0 -> P(1) -> P(2) -> S(2) -> 0.  Both facts are
established here by two independent routes and reported as a DEVIATION line;
the published claim itself is kept as a strict xfail.
"""
import itertools
import time

import pytest

from commalg.approximation import (
    NoSpecialPrecover,
    ObjectClass,
    TripleClass,
    exhaustive_precover_search,
    extension_closure,
    perp_left,
    perp_right,
    special_precover,
    transfer_precover_comma,
)
from commalg.comma import check_Y_exact, is_projective_triple, membership_BXY
from commalg.gorenstein import check_compatibility, gp_class, gp_precover_comma, is_gp_triple
from commalg.homology import class_of, ext_dim, ext_group, realize_extension, syzygy
from commalg.modules import hom_dim, is_projective

from conftest import algebra, ambient, setup, split
from test_correspondences import column, injectives_over_zero, p_images, side_class, y_class

BUDGET = 10.0


@pytest.fixture
def verdict(capsys):
    """Print ``criterion N: PASS|FAIL|DEVIATION — detail`` and time the criterion."""
    start = time.perf_counter()

    def emit(n, ok, detail, tag=None):
        elapsed = time.perf_counter() - start
        status = tag or ("PASS" if ok else "FAIL")
        with capsys.disabled():
            print(f"\ncriterion {n}: {status} — {detail} [{elapsed:.2f}s]")
        assert ok, detail
        assert elapsed < BUDGET, f"criterion {n} took {elapsed:.2f}s"

    return emit


# -- 1. the counterexample on kA3/(βα) ---------------------------------------------------------

def _remark_class():
    s = setup("L3|1")
    x, y = side_class(s.r_amb, "all"), side_class(s.s_amb, "all")
    return s, x, y, extension_closure(p_images(s, x, y))


def test_criterion_1_remark(verdict):
    s, x, y, c = _remark_class()
    sp = split("L3", ("1",))
    # (a) Λ = (k k; 0 kA2)
    a = sp.R.dimension == 1 and sp.S.dimension == 3 and sp.bimodule.total_dim == 1
    # (b) T not Y-exact; the witness is 0 -> P(2) -> P(3) -> S(3) -> 0 over kA2
    rep = check_Y_exact(s.T, s.s_amb.members, s.s_amb.names)
    w = rep.witness
    b = (not rep.exact and w is not None and (w.left.dims, w.middle.dims, w.right.dims) == ((1, 0), (1, 1), (0, 1))
         and not s.T.on_morphism(w.mono).is_mono())
    # (c) ⟨p(mod k, mod kA2)⟩ = {P(1), P(2), P(3), S(3)}, by closure and by the filter
    expected_c = {"P(1)=S(1)", "P(2)=I(1)", "P(3)=I(2)", "I(3)=S(3)"}
    filt = {s.amb.names[n] for n, t in enumerate(s.amb.members) if membership_BXY(s.comma, t, x, y)}
    cc = set(c.member_names()) == expected_c == filt
    # (d) computed perp, with an independent Ext¹ check on the extra member
    perp = set(perp_right(c).member_names())
    inj = set(ObjectClass.injectives(s.amb).member_names())
    p1, s2 = s.amb.module("P(1)=S(1)"), s.amb.module("S(2)")
    d = perp == inj | {"P(1)=S(1)"} and all(ext_dim(m, p1, 1) == 0 for m in c.support_modules())
    # (e) S(2) has a special precover: Salce route and the exhaustive search agree
    r = special_precover(s2, c)
    e_search = exhaustive_precover_search(s2, c, 2)
    e = (all(r.certificates.values()) and e_search is not None
         and (r.kernel.dims, r.middle.dims) == ((1, 0, 0), (1, 1, 0))
         and (e_search.left.dims, e_search.middle.dims) == ((1, 0, 0), (1, 1, 0)))
    ok = a and b and cc and d and e
    detail = (f"(a) {a} (b) {b} (c) {cc} match; (d)/(e) DEVIATE: perp = {sorted(perp)} "
              f"(published: I(1), I(2), I(3); extra P(1)=S(1), Ext¹(𝒞, P(1)) = 0); "
              f"S(2) has special precover 0 -> P(1) -> P(2) -> S(2) -> 0 "
              f"[{r.route}: {r.certificates}; exhaustive search: found]")
    verdict(1, ok, detail, tag="PASS (a)-(c), DEVIATION (d)-(e)" if ok else None)


@pytest.mark.xfail(strict=True, reason="published perp omits the simple projective P(1)=S(1)")
def test_criterion_1_published_claim():
    s, _, _, c = _remark_class()
    assert set(perp_right(c).member_names()) == {"P(2)=I(1)", "P(3)=I(2)", "I(3)=S(3)"}
    with pytest.raises(NoSpecialPrecover):
        special_precover(s.amb.module("S(2)"), c)


def test_criterion_1_hand_oracle():
    """Hom(P(2), S(1)) = S(1)_2 = 0, so Ext¹(S(3), S(1)) = 0 from 0 -> P(1) -> P(2) -> P(3) -> S(3)."""
    amb = ambient("L3")
    s1, s3 = amb.module("P(1)=S(1)"), amb.module("I(3)=S(3)")
    assert hom_dim(algebra("L3").projective("2"), s1) == 0
    assert ext_dim(s3, s1, 1) == 0 and ext_dim(s3, s1, 2) == 1


# -- 2. closure of p-images = membership filter ------------------------------------------------

CRIT2 = [
    ("L3|1", "all", "proj"), ("L3|1", "all", "torperp"), ("L3|1", "proj", "proj"),
    ("id:kA2", "all", "all"), ("id:kA2", "proj", "all"), ("id:kA2", "inj", "inj"),
    ("Lambda4|1", "all", "proj"), ("Lambda4|1", "all", "torperp"),
]


def test_criterion_2_closure_is_filter(verdict):
    bad, checked = [], 0
    for label, xk, yk in CRIT2:
        s = setup(label)
        x, y = side_class(s.r_amb, xk), y_class(s, yk)
        assert check_Y_exact(s.T, y.support_modules()).exact
        lhs = extension_closure(p_images(s, x, y)).support
        rhs = [n for n, t in enumerate(s.amb.members) if membership_BXY(s.comma, t, x, y)]
        checked += 1
        if lhs != rhs:
            bad.append((label, xk, yk))
    verdict(2, not bad, f"{checked} (workspace, 𝒳, 𝒴) cases on L3|1, id:kA2, Lambda4|1; mismatches {bad}")


# -- 3. perp identities ------------------------------------------------------------------------

def test_criterion_3_perp_identities(verdict):
    bad = []
    for label, xk, yk in CRIT2:
        s = setup(label)
        x, y = side_class(s.r_amb, xk), y_class(s, yk)
        gen = extension_closure(p_images(s, x, y))
        if perp_right(gen).support != column(s, x.right_orthogonal, y.right_orthogonal):
            bad.append(("right-perp", label, xk, yk))
    for label in ("L3|1", "id:kA2", "Lambda4|1"):
        s = setup(label)
        every = extension_closure(p_images(s, side_class(s.r_amb, "all"), side_class(s.s_amb, "all")))
        if every.support != perp_left(injectives_over_zero(s)).support:
            bad.append(("mono", label))
    for label, xk, yk in [("L3|1", "inj", "inj"), ("L3|1", "inj", "all"), ("id:kA2", "all", "inj"),
                          ("id:kA2", "inj", "all"), ("Lambda4|1", "inj", "inj")]:
        s = setup(label)
        x, y = side_class(s.r_amb, xk), side_class(s.s_amb, yk)
        lhs = extension_closure(p_images(s, perp_left(x), perp_left(y))).support
        col = ObjectClass.of_indices(s.amb, column(s, x.contains, y.contains), "(X Y)")
        rhs = sorted(set(perp_left(col).support) & set(perp_left(injectives_over_zero(s)).support))
        if lhs != rhs:
            bad.append(("left-perp", label, xk, yk))
    verdict(3, not bad, f"right-perp, monomorphism and left-perp identities on 3 workspaces; mismatches {bad}")


# -- 4. projective triples --------------------------------------------------------------------

def test_criterion_4_projective_triples(verdict):
    counts, bad = {}, []
    for label in ("L3|1", "id:N2"):
        s = setup(label)
        counts[label] = len(s.amb.members)
        for n, t in enumerate(s.amb.members):
            by_ext = all(ext_dim(t, x, 1) == 0 for x in s.amb.members)
            if not (bool(is_projective_triple(s.comma, t)) == is_projective(t) == by_ext):
                bad.append((label, s.amb.names[n]))
    ok = not bad and counts["id:N2"] <= 30
    verdict(4, ok, f"triples checked {counts}; disagreements {bad}")


# -- 5. transfer and Salce precovers --------------------------------------------------------

def test_criterion_5_transfer(verdict):
    done, bad = 0, []
    for label in ("id:k", "id:N2"):
        s = setup(label)
        for xk, yk in itertools.product(("proj", "all"), repeat=2):
            x, y = side_class(s.r_amb, xk), side_class(s.s_amb, yk)
            tc = TripleClass(s.comma, x, y)
            for t in s.amb.members:
                r = transfer_precover_comma(t, s.comma, x, y)
                salce = special_precover(t, tc)
                done += 1
                if not (all(r.certificates.values()) and all(salce.certificates.values())
                        and tc.contains(r.middle) and tc.contains(salce.middle)):
                    bad.append((label, xk, yk))
    verdict(5, not bad, f"{done} transfer + Salce precovers on (k k; 0 k) and (N2 N2; 0 N2), all certified; "
                        f"failures {bad}")


# -- 6. Gorenstein projectives ----------------------------------------------------------------

def test_criterion_6_gp_suite(verdict):
    n2 = gp_class(ambient("N2"))
    n2_ok = (len(n2.cls.support) == 2 and len(ambient("N2").members) == 2
             and all(v.certified for v in n2.verdicts.values())
             and n2.verdicts["S(1)"].certificate["period"] == 1
             and n2.verdicts["P(1)=I(1)"].certificate["reason"] == "projective")
    proj_ok = {}
    for label, amb in (("kA2", ambient("kA2")), ("Lambda4", ambient("Lambda4")),
                       ("Lambda4|1.S", setup("Lambda4|1").s_amb)):
        rep = gp_class(amb)
        proj_ok[label] = rep.cls.support == ObjectClass.projectives(amb).support and not rep.undecided
    s = setup("Lambda4|1")
    compat = check_compatibility(s.T, s.r_amb, s.s_amb)
    text = compat.c1.detail["witness"]["tensored"]["text"]
    compat_ok = compat.w1.holds is True and compat.c1.holds is False and text == "⋯ -> k -0-> k -0-> k -> ⋯"
    t2 = setup("id:N2")
    rep = check_compatibility(t2.T, t2.r_amb, t2.s_amb)
    gr, gs = gp_class(t2.r_amb).cls, gp_class(t2.s_amb).cls
    cross = [is_gp_triple(t2.comma, t, gr, gs, rep, cross_check=True) for t in t2.amb.members]
    cross_ok = all(v.direct.status != "UpToBound" and v.gp == v.direct.certified for v in cross)
    ok = n2_ok and all(proj_ok.values()) and compat_ok and cross_ok
    verdict(6, ok, f"N2 = GP (S(1) period 1, P(1) projective): {n2_ok}; GP = proj {proj_ok}; compat W1 pass / C1 fail with "
                   f"'{text}': {compat_ok}; triple characterization vs direct on {len(cross)} triples: {cross_ok}")


# -- 7. special GP precovers of triples --------------------------------------------------------

def test_criterion_7_gp_precovers(verdict):
    s = setup("id:N2")
    rep = check_compatibility(s.T, s.r_amb, s.s_amb)
    gr, gs = gp_class(s.r_amb).cls, gp_class(s.s_amb).cls
    direct = gp_class(s.amb).cls
    bad = []
    for n, t in enumerate(s.amb.members):
        r = gp_precover_comma(s.comma, t, gr, gs, rep)
        if not (all(r.certificates.values()) and direct.contains(r.middle)
                and all(ext_dim(g, r.kernel, 1) == 0 for g in direct.support_modules())):
            bad.append(s.amb.names[n])
    verdict(7, not bad, f"{len(s.amb.members)} triples of (N2 N2; 0 N2) have verified special GP precovers; "
                        f"failures {bad}")


# -- 8. homology self-consistency -------------------------------------------------------------

def test_criterion_8_homology(verdict):
    hom = all(hom_dim(algebra(name).projective(v), x) == x.dim(v)
              for name in ("kA2", "L3", "Lambda4") for x in ambient(name).members for v in algebra(name).vertices)
    shift = all(ext_dim(m, n, i + 1) == ext_dim(syzygy(m, 1), n, i)
                for name in ("kA2", "L3", "Lambda4")
                for m, n in itertools.product(ambient(name).members, repeat=2) for i in (1, 2))
    rounds, round_ok = 0, True
    for name in ("kA2", "L3"):
        f = ambient(name).category.field
        for m, n in itertools.product(ambient(name).members, repeat=2):
            g = ext_group(m, n, 1)
            for j in range(g.dim):
                e = f.zeros(g.dim, 1).reshape(-1)
                e[j] = 1
                ses = realize_extension(g, e)
                rounds += 1
                round_ok &= ses.is_exact() and not ses.is_split() and list(class_of(ses, g)) == list(e)
    verdict(8, hom and shift and round_ok,
            f"Hom formula {hom}; dimension shift {shift}; {rounds} Ext¹ basis round trips {round_ok}")
