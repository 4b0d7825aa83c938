"""Object classes, Ext-orthogonals, cotorsion pairs and special approximations.

Classes are finite: an :class:`ObjectClass` is the additive monoid generated by
finitely many objects of an enumerated :class:`Ambient` (a finite list of
indecomposables up to isomorphism).  Membership of an arbitrary module is
decided by decomposing it, so it never depends on the ambient cap; only the
computation of orthogonal classes is restricted to the enumerated slice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .homology import (
    ShortExactSequence,
    ext_dim,
    ext_group,
    realize_extension,
    realize_sum_extension,
    resolution,
    universal_extension,
)
from .modules import (
    Module,
    Morphism,
    _subspaces,
    cokernel,
    decompose,
    direct_sum,
    factor_through,
    extend_along,
    hom_space,
    hstack_morphisms,
    identity,
    index_of_iso,
    is_isomorphic,
    kernel,
    projective_cover,
    pushout,
    vstack_morphisms,
    zero_module,
    zero_morphism,
    enumerate_indecomposables,
    _multisets,
)


class ClosureBudgetExceeded(Exception):
    pass


class IterationCapExceeded(Exception):
    pass


class CertificateFailure(AssertionError):
    pass


class PreconditionFailed(Exception):
    pass


class PreconditionYExact(PreconditionFailed):
    def __init__(self, report, message: str = "T is not 𝒴-exact"):
        super().__init__(message)
        self.report = report


class NoSpecialApproximation(Exception):
    def __init__(self, message: str, certificate: dict):
        super().__init__(message)
        self.certificate = certificate


class NoSpecialPrecover(NoSpecialApproximation):
    pass


class NoSpecialPreenvelope(NoSpecialApproximation):
    pass


class ApproximationUndecided(Exception):
    pass


# -- ambients -----------------------------------------------------------------------------

class Ambient:
    """A finite list of pairwise non-isomorphic indecomposables of one category."""

    def __init__(self, category, cap: int, members: Optional[Sequence[Module]] = None,
                 names: Optional[Sequence[str]] = None, injectives: Optional[Sequence[Module]] = None,
                 name: Optional[str] = None):
        self.category = category
        self.cap = cap
        self.name = name or getattr(category, "name", "ambient")
        self.members: List[Module] = list(members) if members is not None else enumerate_indecomposables(category, cap)
        if injectives is None and hasattr(category, "injectives"):
            injectives = category.injectives()
        self.injective_modules = list(injectives) if injectives is not None else None
        self.names = list(names) if names is not None else self._default_names()
        for m, n in zip(self.members, self.names):
            m.name = n
        self._ext: Dict[Tuple[int, int, int], int] = {}

    def _default_names(self) -> List[str]:
        cat = self.category
        tagged = []
        for kind, mods in (("P", cat.projectives()), ("I", self.injective_modules or []), ("S", cat.simples())):
            for v, mod in zip(cat.vertices, mods):
                tagged.append((f"{kind}({v})", mod))
        names = []
        for n, m in enumerate(self.members):
            tags = [t for t, mod in tagged if mod.dims == m.dims and is_isomorphic(mod, m)]
            names.append("=".join(tags) if tags else f"M{n}")
        return names

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"Ambient({self.name}, cap {self.cap}, {len(self.members)} indecomposables)"

    def ext(self, i: int, j: int, degree: int = 1) -> int:
        key = (i, j, degree)
        if key not in self._ext:
            self._ext[key] = ext_dim(self.members[i], self.members[j], degree)
        return self._ext[key]

    def locate(self, m: Module) -> Optional[int]:
        for n, x in enumerate(self.members):
            if x.dims == m.dims and is_isomorphic(x, m):
                return n
        return None

    def find(self, tag: str) -> int:
        for n, nm in enumerate(self.names):
            if tag == nm or tag in nm.split("="):
                return n
        raise KeyError(f"no member named {tag} in {self.name}")

    def module(self, tag: str) -> Module:
        return self.members[self.find(tag)]

    def decomposition_vector(self, m: Module) -> Optional[Tuple[int, ...]]:
        """Multiplicity of each member in ``m``; None if some summand is not listed."""
        vec = [0] * len(self.members)
        for s, mult in decompose(m).summands:
            n = self.locate(s)
            if n is None:
                return None
            vec[n] += mult
        return tuple(vec)

    def projective_indices(self) -> List[int]:
        return sorted({self.locate(p) for p in self.category.projectives() if not p.is_zero()} - {None})

    def injective_indices(self) -> List[int]:
        if self.injective_modules is None:
            # I is injective iff Ext¹(S, I) = 0 for every simple S: every module is an
            # iterated extension of simples, so the long exact sequence does the rest.
            simples = self.category.simples()
            return [n for n, m in enumerate(self.members)
                    if all(ext_group(s, m, 1).dim == 0 for s in simples)]
        return sorted({self.locate(i) for i in self.injective_modules if not i.is_zero()} - {None})


# -- classes --------------------------------------------------------------------------------

class ObjectClass:
    """The additive monoid generated by ``generators`` (multiplicity vectors over the ambient).

    When every generator is a single indecomposable the class is add-closed
    (``additive``); e.g. the free modules ``{Λ}`` give a non-additive class.
    """

    def __init__(self, ambient: Ambient, generators: Sequence[Sequence[int]], name: str = "class",
                 everything: bool = False, asserted_extension_closed: bool = False,
                 asserted_smd_closed: bool = False):
        self.ambient = ambient
        n = len(ambient.members)
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != n or any(x < 0 for x in g):
                raise ValueError("generator vectors must be non-negative with one entry per member")
            if any(g) and g not in gens:
                gens.append(g)
        self.generators = gens
        self.name = name
        self.everything = everything
        self.contains_zero = True
        self.asserted_extension_closed = asserted_extension_closed or everything
        self.asserted_smd_closed = asserted_smd_closed or everything
        self.support = sorted({i for g in gens for i, x in enumerate(g) if x})
        self.additive = all(sum(g) == 1 for g in gens)
        if self.additive:
            self.asserted_smd_closed = True

    # constructors
    @classmethod
    def of_indices(cls, ambient: Ambient, indices, name: str = "class", **flags) -> "ObjectClass":
        n = len(ambient.members)
        return cls(ambient, [tuple(1 if k == i else 0 for k in range(n)) for i in sorted(set(indices))], name, **flags)

    @classmethod
    def of_modules(cls, ambient: Ambient, mods: Sequence[Module], name: str = "class", **flags) -> "ObjectClass":
        gens = []
        for m in mods:
            v = ambient.decomposition_vector(m)
            if v is None:
                raise ValueError(f"{m.name or 'module'} has a summand outside the ambient (raise the cap)")
            gens.append(v)
        return cls(ambient, gens, name, **flags)

    @classmethod
    def of_names(cls, ambient: Ambient, names: Sequence[str], name: str = "class", **flags) -> "ObjectClass":
        return cls.of_indices(ambient, [ambient.find(x) for x in names], name, **flags)

    @classmethod
    def everything_in(cls, ambient: Ambient, name: Optional[str] = None) -> "ObjectClass":
        return cls.of_indices(ambient, range(len(ambient.members)), name or f"mod {ambient.name}", everything=True)

    @classmethod
    def projectives(cls, ambient: Ambient) -> "ObjectClass":
        return cls.of_indices(ambient, ambient.projective_indices(), f"proj {ambient.name}",
                              asserted_extension_closed=True)

    @classmethod
    def injectives(cls, ambient: Ambient) -> "ObjectClass":
        return cls.of_indices(ambient, ambient.injective_indices(), f"inj {ambient.name}",
                              asserted_extension_closed=True)

    # views
    @property
    def members(self) -> List[int]:
        """Indecomposable members (indices); for non-additive classes, those that are generators."""
        return [i for i in self.support if any(sum(g) == 1 and g[i] == 1 for g in self.generators)]

    def support_modules(self) -> List[Module]:
        return [self.ambient.members[i] for i in self.support]

    def member_names(self) -> List[str]:
        return [self.ambient.names[i] for i in self.members]

    def __repr__(self):
        return f"ObjectClass({self.name}: {{{', '.join(self.member_names())}}})"

    def __eq__(self, other):
        return isinstance(other, ObjectClass) and other.ambient is self.ambient and \
            sorted(self.generators) == sorted(other.generators)

    def __hash__(self):
        return hash(tuple(sorted(self.generators)))

    # membership
    def contains(self, m: Module) -> bool:
        if m.is_zero():
            return True
        if self.everything:
            return m.algebra is self.ambient.category
        vec = self.ambient.decomposition_vector(m)
        if vec is None:
            return False
        if any(x and i not in self.support for i, x in enumerate(vec)):
            return False
        if self.additive:
            return True
        return _in_monoid(vec, tuple(self.generators))

    def contains_projectives(self) -> bool:
        return all(self.contains(p) for p in self.ambient.category.projectives())

    def right_orthogonal(self, m: Module) -> bool:
        """``m ∈ 𝒞^⊥``: Ext¹(c, m) = 0 for every member c."""
        return all(ext_dim(c, m, 1) == 0 for c in self.support_modules())

    def left_orthogonal(self, m: Module) -> bool:
        """``m ∈ ^⊥𝒞``."""
        return all(ext_dim(m, c, 1) == 0 for c in self.support_modules())

    def to_dict(self) -> dict:
        return {"kind": "class", "name": self.name, "ambient": self.ambient.name,
                "members": self.member_names(),
                "generators": [[self.ambient.names[i]] * x for g in self.generators for i, x in enumerate(g) if x]
                if not self.additive else None,
                "flags": {"contains_zero": True,
                          "asserted_extension_closed": self.asserted_extension_closed,
                          "asserted_smd_closed": self.asserted_smd_closed}}


@lru_cache(maxsize=4096)
def _in_monoid(vec: tuple, gens: tuple) -> bool:
    if not any(vec):
        return True
    first = next(i for i, x in enumerate(vec) if x)
    for g in gens:
        if g[first] and all(a >= b for a, b in zip(vec, g)):
            if _in_monoid(tuple(a - b for a, b in zip(vec, g)), gens):
                return True
    return False


def perp_right(c: ObjectClass, name: Optional[str] = None) -> ObjectClass:
    """``𝒞^⊥`` on the enumerated ambient."""
    amb = c.ambient
    idx = [n for n in range(len(amb.members)) if all(amb.ext(g, n) == 0 for g in c.support)]
    return ObjectClass.of_indices(amb, idx, name or f"{c.name}^⊥", asserted_extension_closed=True)


def perp_left(c: ObjectClass, name: Optional[str] = None) -> ObjectClass:
    """``^⊥𝒞`` on the enumerated ambient."""
    amb = c.ambient
    idx = [n for n in range(len(amb.members)) if all(amb.ext(n, g) == 0 for g in c.support)]
    return ObjectClass.of_indices(amb, idx, name or f"^⊥{c.name}", asserted_extension_closed=True)


def smd_closure(c: ObjectClass) -> ObjectClass:
    return ObjectClass.of_indices(c.ambient, c.support, f"Smd({c.name})",
                                  asserted_extension_closed=c.asserted_extension_closed)


def extension_closure(c: ObjectClass, budget: int = 20000, cap: Optional[int] = None) -> ObjectClass:
    """Indecomposable summands of iterated extensions, up to total dimension ``cap``.

    Least fixpoint of: for an indecomposable current member ``A`` and a sum
    ``C`` of current members (each isotypic block carrying linearly independent
    Ext components, which loses nothing up to Aut(C)), add the indecomposable
    summands of the middle term of every extension ``0 -> A -> E -> C -> 0``
    with ``dim E ≤ cap``.
    """
    amb = c.ambient
    cap = cap if cap is not None else amb.cap
    f = amb.category.field
    current = list(c.support)
    work = 0
    seen = set()
    changed = True
    while changed:
        changed = False
        for a in list(current):
            da = amb.members[a].total_dim
            items = []
            for i in current:
                e = amb.ext(i, a)
                if e:
                    items.append((i, amb.members[i].total_dim, e))
            for total in range(1, cap - da + 1):
                for ms in _multisets(items, total):
                    key = (a, tuple(ms))
                    if key in seen:
                        continue
                    seen.add(key)
                    groups = [ext_group(amb.members[i], amb.members[a], 1) for i, _ in ms]
                    choices = [list(_subspaces(f, mult, g.dim)) for (i, mult), g in zip(ms, groups)]
                    for combo in itertools.product(*choices):
                        work += 1
                        if work > budget:
                            raise ClosureBudgetExceeded(f"more than {budget} extensions examined")
                        comps = [(g, sub[r]) for (i, mult), g, sub in zip(ms, groups, combo) for r in range(mult)]
                        mid = realize_sum_extension(comps).middle
                        vec = amb.decomposition_vector(mid)
                        if vec is None:
                            raise ClosureBudgetExceeded("an extension has a summand outside the ambient")
                        for n, x in enumerate(vec):
                            if x and n not in current:
                                current.append(n)
                                changed = True
    return ObjectClass.of_indices(amb, current, f"⟨{c.name}⟩", asserted_extension_closed=True)


# -- cotorsion pairs ----------------------------------------------------------------------

@dataclass
class CotorsionPair:
    left: ObjectClass
    right: ObjectClass
    hereditary_verified: bool = False
    complete_verified: bool = False

    def to_dict(self) -> dict:
        return {"kind": "pair", "left": self.left.to_dict(), "right": self.right.to_dict(),
                "flags": {"hereditary_verified": self.hereditary_verified,
                          "complete_verified": self.complete_verified}}


def pair_from_left(left: ObjectClass) -> CotorsionPair:
    return CotorsionPair(left, perp_right(left))


def pair_from_right(right: ObjectClass) -> CotorsionPair:
    return CotorsionPair(perp_left(right), right)


@dataclass
class PairReport:
    right_is_perp: bool
    left_is_perp: bool
    right_missing: List[str]
    right_extra: List[str]
    left_missing: List[str]
    left_extra: List[str]
    hereditary: Optional[bool]
    hereditary_failures: List[Tuple[str, str, int]]
    resolving: Optional[bool]
    coresolving: Optional[bool]
    complete: Optional[bool] = None
    completeness_failures: List[str] = field(default_factory=list)
    scope: str = ""

    @property
    def is_pair(self) -> bool:
        return self.right_is_perp and self.left_is_perp

    def to_dict(self) -> dict:
        d = {k: v for k, v in self.__dict__.items()}
        d["is_pair"] = self.is_pair
        d["hereditary_failures"] = [list(x) for x in self.hereditary_failures]
        return d


def _enumerated_ses(amb: Ambient):
    """Basis extensions ``0 -> A -> E -> C -> 0`` between listed indecomposables."""
    for c in range(len(amb.members)):
        for a in range(len(amb.members)):
            if amb.ext(c, a):
                g = ext_group(amb.members[c], amb.members[a], 1)
                for j in range(g.dim):
                    v = [0] * g.dim
                    v[j] = 1
                    yield a, c, realize_extension(g, v)


def check_cotorsion_pair(pair: CotorsionPair, bound: int = 8, completeness: bool = False,
                         iter_cap: int = 16) -> PairReport:
    left, right = pair.left, pair.right
    amb = left.ambient
    names = amb.names
    pr, pl = perp_right(left), perp_left(right)
    rs, ls = set(right.support), set(left.support)
    report = PairReport(
        right_is_perp=set(pr.support) == rs, left_is_perp=set(pl.support) == ls,
        right_missing=[names[i] for i in pr.support if i not in rs],
        right_extra=[names[i] for i in right.support if i not in set(pr.support)],
        left_missing=[names[i] for i in pl.support if i not in ls],
        left_extra=[names[i] for i in left.support if i not in set(pl.support)],
        hereditary=None, hereditary_failures=[], resolving=None, coresolving=None,
        scope=f"indecomposables of {amb.name} up to dimension {amb.cap}",
    )
    fails = []
    for x in left.support:
        for y in right.support:
            for i in range(1, bound + 1):
                if amb.ext(x, y, i):
                    fails.append((names[x], names[y], i))
                    break
    report.hereditary = not fails
    report.hereditary_failures = fails
    # resolving: projectives inside, closed under kernels of epis (on enumerated sequences)
    res = left.contains_projectives()
    cores = all(n in rs for n in amb.injective_indices())
    for a, c, ses in _enumerated_ses(amb):
        if res and left.contains(ses.middle) and c in ls and a not in ls:
            res = False
        if cores and right.contains(ses.middle) and a in rs and c not in rs:
            cores = False
    report.resolving, report.coresolving = res, cores
    if completeness:
        ok = True
        for n, m in enumerate(amb.members):
            for fn, cls, label in ((special_precover, left, "precover"), (special_preenvelope, right, "preenvelope")):
                try:
                    fn(m, cls, iter_cap=iter_cap)
                except (NoSpecialApproximation, IterationCapExceeded, ApproximationUndecided):
                    ok = False
                    report.completeness_failures.append(f"{label} of {names[n]}")
        report.complete = ok
    if report.is_pair:
        pair.hereditary_verified = bool(report.hereditary)
        if report.complete:
            pair.complete_verified = True
    return report


# -- approximation results -------------------------------------------------------------------

@dataclass
class ApproxResult:
    """A verified special precover ``0 -> K -> G -> target -> 0`` or preenvelope
    ``0 -> target -> G -> C -> 0``.  Construction fails unless every certificate holds."""

    kind: str
    target: Module
    ses: ShortExactSequence
    route: str
    in_class: Callable[[Module], bool]
    orthogonal: Callable[[Module], bool]
    class_name: str = ""
    extra: dict = field(default_factory=dict)
    certificates: dict = field(init=False)

    def __post_init__(self):
        if self.kind not in ("precover", "preenvelope"):
            raise ValueError("kind must be precover or preenvelope")
        ses = self.ses
        exact = ses.is_exact()
        if self.kind == "precover":
            on_target = ses.right.dims == self.target.dims and is_isomorphic(ses.right, self.target)
            side = ses.left
        else:
            on_target = ses.left.dims == self.target.dims and is_isomorphic(ses.left, self.target)
            side = ses.right
        member = self.in_class(ses.middle)
        orth = self.orthogonal(side)
        self.certificates = {"exact": exact, "on_target": on_target, "middle_in_class": member,
                             ("kernel" if self.kind == "precover" else "cokernel") + "_orthogonal": orth}
        if not all(self.certificates.values()):
            raise CertificateFailure(f"{self.kind} certificate failed: {self.certificates}")

    @property
    def middle(self) -> Module:
        return self.ses.middle

    @property
    def kernel(self) -> Module:
        return self.ses.left

    @property
    def cokernel(self) -> Module:
        return self.ses.right

    def to_dict(self) -> dict:
        s = self.ses
        return {"kind": self.kind, "route": self.route, "class": self.class_name,
                "target": self.target.to_dict(),
                "sequence": {"left": s.left.to_dict(), "middle": s.middle.to_dict(), "right": s.right.to_dict(),
                             "mono": s.mono.to_dict(), "epi": s.epi.to_dict()},
                "certificates": dict(self.certificates), **self.extra}


def _trivial_precover(m: Module) -> ShortExactSequence:
    z = zero_module(m.algebra)
    return ShortExactSequence(z, m, m, zero_morphism(z, m), identity(m))


def _trivial_preenvelope(m: Module) -> ShortExactSequence:
    z = zero_module(m.algebra)
    return ShortExactSequence(m, m, z, identity(m), zero_morphism(m, z))


def _approx(kind, target, ses, route, cls, in_class=None, orthogonal=None, extra=None) -> ApproxResult:
    if in_class is None:
        in_class = cls.contains
    if orthogonal is None:
        orthogonal = cls.right_orthogonal if kind == "precover" else cls.left_orthogonal
    return ApproxResult(kind, target, ses, route, in_class, orthogonal, getattr(cls, "name", ""), extra or {})


def ext_killing_preenvelope(k: Module, tests: Sequence[Module], iter_cap: int = 16
                            ) -> Tuple[ShortExactSequence, int]:
    """``0 -> k -> W -> X' -> 0`` with Ext¹(t, W) = 0 for every test object and X'
    an iterated extension of sums of test objects (iterated universal extensions)."""
    w, mono = k, identity(k)
    for step in range(iter_cap + 1):
        if all(ext_dim(t, w, 1) == 0 for t in tests):
            c, epi = cokernel(mono)
            return ShortExactSequence(k, w, c, mono, epi), step
        if step == iter_cap:
            break
        ses, _ = universal_extension(tests, w)
        w, mono = ses.middle, ses.mono @ mono
    raise IterationCapExceeded(f"Ext¹ not killed after {iter_cap} universal extensions")


def minimal_right_approximation(target: Module, mods: Sequence[Module]) -> Morphism:
    """A right-minimal right add(mods)-approximation ``G -> target``.

    Start from the evaluation map on ``⊕ X^{dim Hom(X, target)}`` and drop, one
    at a time, every summand whose component factors through the others.  At
    the end no coordinate summand does; by the exchange property a summand of
    G inside the kernel would force one, so the result is right minimal.
    """
    comps: List[Morphism] = []
    for x in mods:
        comps.extend(hom_space(x, target))
    changed = True
    while changed and comps:
        changed = False
        for k in range(len(comps)):
            rest = comps[:k] + comps[k + 1:]
            if not rest:
                if comps[k].is_zero():
                    comps = []
                    changed = True
                break
            if factor_through(comps[k], hstack_morphisms(rest)) is not None:
                comps = rest
                changed = True
                break
    if not comps:
        return zero_morphism(zero_module(target.algebra), target)
    return hstack_morphisms(comps)


def minimal_left_approximation(target: Module, mods: Sequence[Module]) -> Morphism:
    """A left-minimal left add(mods)-approximation ``target -> G`` (dual procedure)."""
    comps: List[Morphism] = []
    for x in mods:
        comps.extend(hom_space(target, x))
    changed = True
    while changed and comps:
        changed = False
        for k in range(len(comps)):
            rest = comps[:k] + comps[k + 1:]
            if not rest:
                if comps[k].is_zero():
                    comps = []
                    changed = True
                break
            if extend_along(comps[k], vstack_morphisms(rest)) is not None:
                comps = rest
                changed = True
                break
    if not comps:
        return zero_morphism(target, zero_module(target.algebra))
    return vstack_morphisms(comps)


def special_precover(target: Module, cls, iter_cap: int = 16) -> ApproxResult:
    """Special 𝒞-precover ``0 -> K -> G -> target -> 0`` (G ∈ 𝒞, K ∈ 𝒞^⊥).

    Salce route first (projective cover, special 𝒞^⊥-preenvelope of the
    kernel by killing Ext¹(𝒞, −), pushout); if that does not certify (𝒞 not
    extension-closed or missing projectives), decide exactly through the
    minimal right add(𝒞)-approximation, which is a special precover whenever
    one exists.
    """
    if cls.contains(target):
        return _approx("precover", target, _trivial_precover(target), "identity", cls)
    tests = cls.support_modules()
    salce_note = None
    if cls.contains_projectives():
        cover = projective_cover(target)
        k, inc = kernel(cover.epi)
        try:
            pre, steps = ext_killing_preenvelope(k, tests, iter_cap)
            e, p_to_e, w_to_e = pushout(inc, pre.mono)
            epi = _induced_from_pushout(e, p_to_e, w_to_e, cover.epi, zero_morphism(pre.middle, target))
            ses = ShortExactSequence(pre.middle, e, target, w_to_e, epi)
            return _approx("precover", target, ses, "salce", cls, extra={"iterations": steps})
        except (CertificateFailure, IterationCapExceeded) as exc:
            salce_note = str(exc)
    if not getattr(cls, "additive", False):
        raise ApproximationUndecided("the Salce construction did not certify and the class is not additive")
    approx = minimal_right_approximation(target, tests)
    k, inc = kernel(approx)
    cert = {"approximation_source": approx.source.name, "approximation_dims": list(approx.source.dims),
            "epi": approx.is_epi(), "kernel_dims": list(k.dims), "salce": salce_note}
    if approx.is_epi():
        bad = [(c.name, ext_dim(c, k, 1)) for c in tests if ext_dim(c, k, 1)]
        if not bad:
            ses = ShortExactSequence(k, approx.source, target, inc, approx)
            return _approx("precover", target, ses, "minimal-approximation", cls)
        cert["nonvanishing_ext1"] = bad
        reason = "the kernel of the minimal approximation is not in the right orthogonal"
    else:
        reason = "the minimal approximation is not surjective"
    raise NoSpecialPrecover(f"no special {cls.name}-precover of {target.name or 'the target'}: {reason}", cert)


def special_preenvelope(target: Module, cls, iter_cap: int = 16) -> ApproxResult:
    """Special 𝒞-preenvelope ``0 -> target -> G -> C -> 0`` (G ∈ 𝒞, C ∈ ^⊥𝒞).

    First the minimal left add(𝒞)-approximation: it is a special preenvelope
    whenever one exists with middle term inside the ambient.  If it is not,
    iterate universal extensions against the left orthogonal ^⊥𝒞 (on the
    ambient) until Ext¹(^⊥𝒞, W) = 0; this lands in 𝒞 when 𝒞 is the right
    half of a cotorsion pair.
    """
    if cls.contains(target):
        return _approx("preenvelope", target, _trivial_preenvelope(target), "identity", cls)
    cert = {}
    if getattr(cls, "additive", False):
        mods = cls.support_modules()
        approx = minimal_left_approximation(target, mods)
        c, proj = cokernel(approx)
        cert = {"approximation_target": approx.target.name, "approximation_dims": list(approx.target.dims),
                "mono": approx.is_mono(), "cokernel_dims": list(c.dims)}
        if approx.is_mono():
            bad = [(x.name, ext_dim(c, x, 1)) for x in mods if ext_dim(c, x, 1)]
            if not bad:
                ses = ShortExactSequence(target, approx.target, c, approx, proj)
                return _approx("preenvelope", target, ses, "minimal-approximation", cls)
            cert["nonvanishing_ext1"] = bad
            reason = "the cokernel of the minimal approximation is not in the left orthogonal"
        else:
            reason = "the minimal approximation is not injective"
    if isinstance(cls, ObjectClass):
        tests = perp_left(cls).support_modules()
        try:
            ses, steps = ext_killing_preenvelope(target, tests, iter_cap)
            return _approx("preenvelope", target, ses, "universal-extensions", cls, extra={"iterations": steps})
        except (CertificateFailure, IterationCapExceeded) as exc:
            cert["universal_extensions"] = str(exc)
    if not getattr(cls, "additive", False):
        raise ApproximationUndecided("the universal-extension construction did not certify")
    raise NoSpecialPreenvelope(f"no special {cls.name}-preenvelope of {target.name or 'the target'}: {reason}", cert)


def _induced_from_pushout(p: Module, i1: Morphism, i2: Morphism, g1: Morphism, g2: Morphism) -> Morphism:
    """The map out of a pushout ``p`` (with legs i1, i2) restricting to g1, g2."""
    both = hstack_morphisms([i1, i2])
    g = hstack_morphisms([g1, g2])
    x = extend_along(g, both)
    if x is None:
        raise AssertionError("maps do not agree on the pushout")
    return x


# -- exhaustive oracle ------------------------------------------------------------------------

def exhaustive_precover_search(target: Module, cls: ObjectClass, mult_cap: int) -> Optional[ShortExactSequence]:
    """Oracle: try every sum of class members (multiplicities ≤ mult_cap) and every
    epimorphism from it (over F_p, all Hom elements) for a special precover."""
    from .modules import combine
    import itertools as it

    f = target.field
    mods = cls.support_modules()
    for mults in it.product(range(mult_cap + 1), repeat=len(mods)):
        if not any(mults):
            continue
        parts = [m for m, k in zip(mods, mults) for _ in range(k)]
        ds = direct_sum(parts)
        if not cls.contains(ds.module):
            continue
        basis = hom_space(ds.module, target)
        for coeffs in it.product(f.elements(), repeat=len(basis)):
            g = combine(basis, coeffs, ds.module, target)
            if not g.is_epi():
                continue
            k, inc = kernel(g)
            if cls.right_orthogonal(k):
                return ShortExactSequence(k, ds.module, target, inc, g)
    return None


# -- triple classes -----------------------------------------------------------------------------

class TripleClass:
    """``⟨p(𝒳, 𝒴)⟩ = 𝔅^𝒳_𝒴`` in a comma category, decided componentwise.

    Its right orthogonal is tested against ``p(X, 0)`` and ``p(0, Y)`` for the
    listed members, which generate the class under extensions.
    """

    additive = False

    def __init__(self, comma, x_class: ObjectClass, y_class: ObjectClass, name: Optional[str] = None):
        self.comma, self.x, self.y = comma, x_class, y_class
        self.name = name or f"⟨p({x_class.name},{y_class.name})⟩"
        zr, zs = zero_module(comma.R), zero_module(comma.S)
        self._tests = [comma.p(m, zs) for m in x_class.support_modules()] + \
                      [comma.p(zr, m) for m in y_class.support_modules()]

    def contains(self, t: Module) -> bool:
        from .comma import membership_BXY

        return membership_BXY(self.comma, t, self.x, self.y)

    def contains_projectives(self) -> bool:
        return self.x.contains_projectives() and self.y.contains_projectives()

    def support_modules(self) -> List[Module]:
        return list(self._tests)

    def right_orthogonal(self, t: Module) -> bool:
        return all(ext_dim(g, t, 1) == 0 for g in self._tests)

    def left_orthogonal(self, t: Module) -> bool:
        return all(ext_dim(t, g, 1) == 0 for g in self._tests)


def componentwise(comma, x_class, y_class, x_test: str = "contains", y_test: str = "contains"):
    """Predicate ``(A, B, φ) ↦ x_test(A) ∧ y_test(B)`` (any φ)."""

    def pred(t: Module) -> bool:
        tr = comma.components(t)
        return getattr(x_class, x_test)(tr.a) and getattr(y_class, y_test)(tr.b)

    return pred


# -- the two-pushout transfer -----------------------------------------------------------------

def transfer_preenvelope_comma(t: Module, comma, x_pair: CotorsionPair, y_pair: CotorsionPair,
                               iter_cap: int = 16, require_complete: bool = False) -> ApproxResult:
    """Special (𝒳^⊥, 𝒴^⊥)-preenvelope ``0 -> (A,B) -> (U,V) -> (D,Y) -> 0`` with the
    cokernel in 𝔅^𝒳_𝒴, by two pushouts."""
    from .comma import check_Y_exact, membership_BXY

    x_left, x_right = x_pair.left, x_pair.right
    y_left, y_right = y_pair.left, y_pair.right
    rep = check_Y_exact(comma.functor, y_left.support_modules(), [y_left.ambient.names[i] for i in y_left.support])
    if not rep.exact:
        raise PreconditionYExact(rep)
    if require_complete and not (x_pair.complete_verified and y_pair.complete_verified):
        raise PreconditionFailed("both cotorsion pairs must be verified complete")
    T = comma.functor
    tr = comma.components(t)
    # step 1: 0 -> B -> V -> Y -> 0
    pb = special_preenvelope(tr.b, y_right, iter_cap)
    b_to_v = pb.ses.mono
    # step 2: pushout of φ along T(B) -> T(V)
    tb_to_tv = T.on_morphism(b_to_v)
    phi = Morphism(tb_to_tv.source, tr.a, tr.phi.maps, check=False)
    c, a_to_c, tv_to_c = pushout(phi, tb_to_tv)
    # step 3: 0 -> C -> U -> X -> 0
    pc = special_preenvelope(c, x_right, iter_cap)
    u = pc.ses.middle
    psi = pc.ses.mono @ tv_to_c
    middle = comma.triple(u, pb.ses.middle, psi)
    a_map = pc.ses.mono @ a_to_c
    mono = comma.morphism(t, middle, a_map.maps, b_to_v.maps)
    coker, proj = cokernel(mono)
    ses = ShortExactSequence(t, middle, coker, mono, proj)
    return ApproxResult(
        "preenvelope", t, ses, "two-pushout",
        componentwise(comma, x_right, y_right),
        lambda z: membership_BXY(comma, z, x_left, y_left),
        class_name=f"({x_right.name},{y_right.name})",
        extra={"steps": {"B_preenvelope": pb.route, "C_preenvelope": pc.route}},
    )


def transfer_precover_comma(t: Module, comma, x_class: ObjectClass, y_class: ObjectClass,
                            iter_cap: int = 16) -> ApproxResult:
    """Special ⟨p(𝒳,𝒴)⟩-precover ``0 -> (C,D) -> (M,Y)_φ -> t -> 0`` with kernel in
    (𝒳^⊥, 𝒴^⊥), following the proof: work with Smd-closures, then pad the
    middle and kernel by one object so the middle lies in 𝔅^𝒳_𝒴 itself."""
    from .comma import check_Y_exact, membership_BXY

    rep = check_Y_exact(comma.functor, y_class.support_modules(), [y_class.ambient.names[i] for i in y_class.support])
    if not rep.exact:
        raise PreconditionYExact(rep)
    xs, ys = smd_closure(x_class), smd_closure(y_class)
    if not (xs.contains_projectives() and ys.contains_projectives()):
        raise PreconditionFailed("the classes are not special precovering (their summands miss a projective)")
    x_pair, y_pair = CotorsionPair(xs, perp_right(xs)), CotorsionPair(ys, perp_right(ys))
    T = comma.functor
    in_b = lambda z: membership_BXY(comma, z, x_class, y_class)
    orth = componentwise(comma, x_class, y_class, "right_orthogonal", "right_orthogonal")
    if in_b(t):
        return ApproxResult("precover", t, _trivial_precover(t), "identity", in_b, orth,
                            class_name=f"⟨p({x_class.name},{y_class.name})⟩")
    # Salce in the comma category with the transferred pair
    cover = projective_cover(t)
    k, inc = kernel(cover.epi)
    pre = transfer_preenvelope_comma(k, comma, x_pair, y_pair, iter_cap)
    e, p_to_e, w_to_e = pushout(inc, pre.ses.mono)
    epi = _induced_from_pushout(e, p_to_e, w_to_e, cover.epi, zero_morphism(pre.ses.middle, t))
    # padding: Π = (U ⊕ N ⊕ L, K, T(K) -i-> N)
    mid = comma.components(e)
    yk = special_precover(mid.b, y_class, iter_cap).kernel
    coker_phi = cokernel(mid.phi)[0]
    u = special_precover(coker_phi, x_class, iter_cap).kernel
    env = special_preenvelope(T(yk), x_pair.right, iter_cap)
    n_mod, i_map = env.ses.middle, env.ses.mono
    l_mod = special_precover(env.ses.right, x_class, iter_cap).kernel
    pad = direct_sum([u, n_mod, l_mod], algebra=comma.R)
    phi_pad = pad.inclusions[1] @ Morphism(T(yk), n_mod, i_map.maps, check=False)
    padding = comma.triple(pad.module, yk, phi_pad, name="Π")
    steps = {"padding_dims": list(padding.dims)}
    if padding.is_zero():
        ses = ShortExactSequence(pre.ses.middle, e, t, w_to_e, epi)
    else:
        dm = direct_sum([e, padding])
        dk = direct_sum([pre.ses.middle, padding])
        mono = dm.inclusions[0] @ w_to_e @ dk.projections[0] + dm.inclusions[1] @ dk.projections[1]
        epi2 = epi @ dm.projections[0]
        ses = ShortExactSequence(dk.module, dm.module, t, mono, epi2)
    return ApproxResult("precover", t, ses, "transfer", in_b, orth,
                        class_name=f"⟨p({x_class.name},{y_class.name})⟩", extra={"steps": steps})


# -- Frobenius check ---------------------------------------------------------------------------

@dataclass
class FrobeniusReport:
    exact_functor: bool
    left_relative_projectives: List[str]
    left_relative_injectives: List[str]
    left_enough_projectives: bool
    left_enough_injectives: bool
    left_side: bool
    r_selfinjective: bool
    s_selfinjective: bool
    preserves_projectives: bool
    right_side: bool

    @property
    def agree(self) -> bool:
        return self.left_side == self.right_side

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["agree"] = self.agree
        return d


def _self_injective(alg) -> bool:
    inj = alg.injectives()
    return all(any(p.dims == i.dims and is_isomorphic(p, i) for i in inj) for p in alg.projectives())


def check_frobenius(comma_ambient: Ambient) -> FrobeniusReport:
    """Both sides of: ⟨p(mod R, mod S)⟩ is Frobenius ⇔ R, S self-injective and T preserves projectives."""
    from .comma import membership_BXY

    comma = comma_ambient.category
    T = comma.functor
    exact = T.is_exact()
    if not exact:
        raise PreconditionFailed("T must be exact")
    amb = comma_ambient
    ar = ObjectClass.everything_in(Ambient(comma.R, 1, members=[], names=[]))
    as_ = ObjectClass.everything_in(Ambient(comma.S, 1, members=[], names=[]))
    cls_idx = [n for n, m in enumerate(amb.members) if membership_BXY(comma, m, ar, as_)]
    rel_proj = [n for n in cls_idx if all(amb.ext(n, e) == 0 for e in cls_idx)]
    rel_inj = [n for n in cls_idx if all(amb.ext(e, n) == 0 for e in cls_idx)]
    in_cls = lambda z: membership_BXY(comma, z, ar, as_)
    enough_p = True
    for n in cls_idx:
        g = minimal_right_approximation(amb.members[n], [amb.members[i] for i in rel_proj])
        if not g.is_epi() or not in_cls(kernel(g)[0]):
            enough_p = False
            break
    enough_i = True
    for n in cls_idx:
        g = minimal_left_approximation(amb.members[n], [amb.members[i] for i in rel_inj])
        if not g.is_mono() or not in_cls(cokernel(g)[0]):
            enough_i = False
            break
    left = enough_p and enough_i and set(rel_proj) == set(rel_inj)
    rsi, ssi = _self_injective(comma.R), _self_injective(comma.S)
    pp = T.preserves_projectives()
    return FrobeniusReport(exact, [amb.names[i] for i in rel_proj], [amb.names[i] for i in rel_inj],
                           enough_p, enough_i, left, rsi, ssi, pp, rsi and ssi and pp)
