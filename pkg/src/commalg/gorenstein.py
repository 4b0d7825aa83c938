"""Gorenstein projective detection, compatibility of T, and GP precovers of triples.

A module is tested through its chain of projective cosyzygies: ``C^0 = m``
and ``C^{k+1} = coker(C^k -> P^k)`` for the minimal left add(Λ)-approximation.
Each such sequence is Hom(−, Λ)-exact by construction, so ``Ext^{≥1}(C^{k+1}, Λ)``
vanishes whenever ``Ext^{≥1}(C^k, Λ)`` does.  A non-injective approximation
refutes (a GP module embeds in a projective with GP cokernel); a repeated
cosyzygy closes a periodic complete resolution and certifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from . import linalg as la
from .approximation import Ambient, ObjectClass, PreconditionFailed, minimal_left_approximation, \
    transfer_precover_comma, ApproxResult
from .homology import ext_dim, homological_dimension, resolution, tor_dims
from .modules import (
    Module,
    Morphism,
    cokernel,
    find_isomorphism,
    hom_dim,
    hom_space,
    identity,
    is_projective,
    coordinates,
)


class NotCompatible(PreconditionFailed):
    pass


# -- periodic complexes ---------------------------------------------------------------------------

@dataclass
class PeriodicComplex:
    """``… -> P^0 -> P^1 -> … -> P^{n-1} -> P^0 -> …`` with ``diffs[k]: P^k -> P^{k+1 mod n}``."""

    terms: List[Module]
    diffs: List[Morphism]

    @property
    def period(self) -> int:
        return len(self.terms)

    def _incoming(self, k: int) -> Morphism:
        return self.diffs[(k - 1) % self.period]

    def is_complex(self) -> bool:
        return all((self.diffs[k] @ self._incoming(k)).is_zero() for k in range(self.period))

    def is_exact(self) -> bool:
        if not self.is_complex():
            return False
        for k, p in enumerate(self.terms):
            rk_out = sum(self.diffs[k].ranks().values())
            rk_in = sum(self._incoming(k).ranks().values())
            if p.total_dim - rk_out != rk_in:
                return False
        return True

    def hom_exact(self, n: Module) -> bool:
        """Exactness of ``Hom(P•, n)``."""
        for k, p in enumerate(self.terms):
            dim = hom_dim(p, n)
            if dim - _precompose_rank(self._incoming(k), n) != _precompose_rank(self.diffs[k], n):
                return False
        return True

    def apply(self, functor) -> "TensoredComplex":
        terms = [functor(p) for p in self.terms]
        diffs = [functor.on_morphism(d) for d in self.diffs]
        return TensoredComplex(terms, diffs)

    def to_dict(self) -> dict:
        return {"period": self.period, "terms": [list(p.dims) for p in self.terms],
                "differentials": [d.to_dict() for d in self.diffs]}


@dataclass
class TensoredComplex:
    terms: List[Module]
    diffs: List[Morphism]

    def homology(self) -> List[int]:
        n = len(self.terms)
        out = []
        for k, p in enumerate(self.terms):
            rk_out = sum(self.diffs[k].ranks().values())
            rk_in = sum(self.diffs[(k - 1) % n].ranks().values())
            out.append(p.total_dim - rk_out - rk_in)
        return out

    def is_exact(self) -> bool:
        return not any(self.homology())

    def describe(self) -> str:
        """E.g. ``⋯ -> k -0-> k -0-> k -> ⋯``: the period unrolled to at least three
        terms, each term by its dimension and each map by its rank."""
        n = len(self.terms)
        reps = -(-3 // n)
        parts = []
        for k in range(n * reps):
            dim = self.terms[k % n].total_dim
            parts.append(("k" if dim == 1 else f"k^{dim}") if dim else "0")
            if k < n * reps - 1:
                parts.append(f"-{sum(self.diffs[k % n].ranks().values())}->")
        return "⋯ -> " + " ".join(parts) + " -> ⋯"

    def to_dict(self) -> dict:
        return {"terms": [p.total_dim for p in self.terms],
                "ranks": [sum(d.ranks().values()) for d in self.diffs],
                "homology": self.homology(), "text": self.describe()}


def _precompose_rank(d: Morphism, n: Module) -> int:
    """Rank of ``Hom(target d, n) -> Hom(source d, n)``, ``g ↦ g ∘ d``."""
    basis = hom_space(d.target, n)
    if not basis:
        return 0
    f = n.field
    cols = [(g @ d).flatten().reshape(-1, 1) for g in basis]
    return la.rank(f, f.hstack(cols, cols[0].shape[0]))


# -- GP verdicts ---------------------------------------------------------------------------------

@dataclass
class GpVerdict:
    status: str                     # "Certified" | "UpToBound" | "Refuted"
    bound: int
    certificate: dict = field(default_factory=dict)
    complex: Optional[PeriodicComplex] = None

    @property
    def certified(self) -> bool:
        return self.status == "Certified"

    @property
    def refuted(self) -> bool:
        return self.status == "Refuted"

    def label(self) -> str:
        return f"UpToBound({self.bound})" if self.status == "UpToBound" else self.status

    def to_dict(self) -> dict:
        d = {"status": self.label(), "certificate": self.certificate}
        if self.complex is not None:
            d["complete_resolution"] = self.complex.to_dict()
        return d


def _regular_summands(category) -> List[Module]:
    return [p for p in category.projectives() if not p.is_zero()]


def is_gorenstein_projective(m: Module, bound: int = 8) -> GpVerdict:
    cat = m.algebra
    projs = _regular_summands(cat)
    if is_projective(m):
        return GpVerdict("Certified", bound, {"reason": "projective", "period": 0})
    for i in range(1, bound + 1):
        for q in projs:
            e = ext_dim(m, q, i)
            if e:
                return GpVerdict("Refuted", bound, {"condition": "Ext^i(m, Λ) ≠ 0", "degree": i,
                                                    "projective": q.name, "dimension": e})
    cos: List[Module] = [m]
    approx: List[Morphism] = []
    projections: List[Morphism] = []
    for k in range(bound):
        f = minimal_left_approximation(cos[k], projs)
        if not f.is_mono():
            return GpVerdict("Refuted", bound, {"condition": "cosyzygy does not embed in a projective",
                                                "step": k, "cosyzygy_dims": list(cos[k].dims)})
        c, proj = cokernel(f)
        approx.append(f)
        projections.append(proj)
        if c.is_zero():
            # a finite Hom(−,Λ)-exact coresolution by projectives: everything splits
            return GpVerdict("Certified", bound, {"reason": "finite projective coresolution", "length": k + 1})
        for i, earlier in enumerate(cos):
            if earlier.dims != c.dims:
                continue
            iso = find_isomorphism(c, earlier)
            if iso is None:
                continue
            cx = _assemble(approx, projections, i, iso)
            if not (cx.is_exact() and all(cx.hom_exact(q) for q in projs)):
                raise AssertionError("periodic complete resolution failed verification")
            return GpVerdict("Certified", bound, {"reason": "periodic cosyzygies", "start": i,
                                                  "period": len(cos) - i}, cx)
        cos.append(c)
    return GpVerdict("UpToBound", bound, {"reason": "no repetition among the computed cosyzygies",
                                          "cosyzygies": len(cos)})


def _assemble(approx, projections, start, iso) -> PeriodicComplex:
    """Differentials ``P^k -> C^{k+1} -> P^{k+1}``; the last wraps through ``C^n ≅ C^start``."""
    n = len(approx)
    terms = [approx[k].target for k in range(start, n)]
    diffs = []
    for k in range(start, n):
        if k + 1 < n:
            diffs.append(approx[k + 1] @ projections[k])
        else:
            diffs.append(approx[start] @ iso @ projections[k])
    return PeriodicComplex(terms, diffs)


def syzygy_periodic_complex(m: Module, bound: int = 8) -> Optional[PeriodicComplex]:
    """If ``Ω^n m ≅ m`` for some ``1 ≤ n ≤ bound``, the acyclic periodic complex of projectives it yields."""
    res = resolution(m)
    for n in range(1, bound + 1):
        res.extend(n)
        omega, inc = res.syzygies[n - 1]
        if omega.is_zero():
            return None
        if omega.dims != m.dims:
            continue
        iso = find_isomorphism(m, omega)
        if iso is None:
            continue
        # cohomological order: Q^0 = P_{n-1}, ..., Q^{n-1} = P_0, then back to Q^0
        covers = [res.covers[i] for i in range(n)]
        terms = [covers[n - 1 - j].module for j in range(n)]
        diffs = []
        for j in range(n - 1):
            i = n - 1 - j             # P_i -> P_{i-1}
            diffs.append(res.differential(i))
        wrap_epi = covers[0].epi                         # P_0 -> m
        diffs.append(inc @ iso @ wrap_epi)               # P_0 -> m ≅ Ω^n m ⊂ P_{n-1}
        cx = PeriodicComplex(terms, diffs)
        if not cx.is_exact():
            raise AssertionError("syzygy-periodic complex is not exact")
        return cx
    return None


# -- GP classes ------------------------------------------------------------------------------------

@dataclass
class GpClassReport:
    cls: ObjectClass
    verdicts: Dict[str, GpVerdict]
    undecided: List[str]

    def to_dict(self) -> dict:
        return {"class": self.cls.to_dict(), "verdicts": {k: v.to_dict() for k, v in self.verdicts.items()},
                "undecided": self.undecided}


def gp_class(ambient: Ambient, bound: int = 8) -> GpClassReport:
    verdicts = {}
    certified, undecided = [], []
    for n, m in enumerate(ambient.members):
        v = is_gorenstein_projective(m, bound)
        verdicts[ambient.names[n]] = v
        if v.certified:
            certified.append(n)
        elif not v.refuted:
            undecided.append(ambient.names[n])
    cls = ObjectClass.of_indices(ambient, certified, f"GP({ambient.name})", asserted_extension_closed=True)
    return GpClassReport(cls, verdicts, undecided)


# -- compatibility --------------------------------------------------------------------------------

@dataclass
class Condition:
    holds: Optional[bool]
    method: str                     # "dimension-bound" | "direct-bounded"
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"holds": self.holds, "method": self.method, "detail": self.detail}


@dataclass
class CompatReport:
    c1: Condition
    c2: Condition
    w1: Condition

    @property
    def compatible(self) -> bool:
        return bool(self.c1.holds and self.c2.holds)

    @property
    def weak_compatible(self) -> bool:
        return bool(self.w1.holds and self.c2.holds)

    def to_dict(self) -> dict:
        return {"C1": self.c1.to_dict(), "C2": self.c2.to_dict(), "W1": self.w1.to_dict(),
                "compatible": self.compatible, "weak_compatible": self.weak_compatible}


def _first_inexact(functor, complexes):
    for name, cx in complexes:
        tc = cx.apply(functor)
        if not tc.is_exact():
            return name, cx, tc
    return None


def check_compatibility(functor, r_ambient: Ambient, s_ambient: Ambient, bound: int = 8) -> CompatReport:
    """Conditions (C1), (C2), (W1) for ``T = M ⊗_S −``."""
    bim = functor.bimodule
    s_gp = gp_class(s_ambient, bound)
    r_gp = gp_class(r_ambient, bound)
    complete_s = [(k, v.complex) for k, v in s_gp.verdicts.items() if v.complex is not None]
    complete_r = [(k, v.complex) for k, v in r_gp.verdicts.items() if v.complex is not None]

    # W1: T keeps complete resolutions of S-modules exact
    bad = _first_inexact(functor, complete_s)
    w1 = Condition(bad is None, "direct-bounded",
                   {"complete_resolutions_checked": [k for k, _ in complete_s]})
    if bad:
        w1.detail["witness"] = {"module": bad[0], "complex": bad[1].to_dict(), "tensored": bad[2].to_dict()}

    # C1: fd(M_S) finite suffices; otherwise look for acyclic periodic complexes T breaks
    fd = homological_dimension(bim.as_right_module(), "pd", bound)
    if fd is not None:
        c1 = Condition(True, "dimension-bound", {"fd_M_S": fd})
        if not w1.holds:
            raise AssertionError("C1 holds by the dimension bound but W1 fails")
        w1 = Condition(True, "dimension-bound", {"fd_M_S": fd})
    else:
        acyclic = list(complete_s)
        for n, x in enumerate(s_ambient.members):
            if is_projective(x):
                continue
            cx = syzygy_periodic_complex(x, bound)
            if cx is not None:
                acyclic.append((s_ambient.names[n], cx))
        bad1 = _first_inexact(functor, acyclic)
        c1 = Condition(bad1 is None, "direct-bounded",
                       {"fd_M_S": f">{bound}", "acyclic_complexes_checked": [k for k, _ in acyclic]})
        if bad1:
            c1.detail["witness"] = {"module": bad1[0], "complex": bad1[1].to_dict(),
                                    "tensored": bad1[2].to_dict()}

    # C2: Hom(P•, T(Q)) exact for complete resolutions P• of R-modules
    tq = [functor(q) for q in functor.S.projectives()]
    pds = [homological_dimension(x, "pd", bound) for x in tq]
    ids = [homological_dimension(x, "id", bound) if hasattr(functor.R, "opposite") else None for x in tq]
    if all(p is not None for p in pds):
        c2 = Condition(True, "dimension-bound", {"pd_R_TQ": pds})
    elif all(i is not None for i in ids):
        c2 = Condition(True, "dimension-bound", {"id_R_TQ": ids})
    else:
        fails = [(k, j) for k, cx in complete_r for j, x in enumerate(tq) if not cx.hom_exact(x)]
        c2 = Condition(not fails, "direct-bounded",
                       {"complete_resolutions_checked": [k for k, _ in complete_r]})
        if fails:
            c2.detail["witness"] = {"module": fails[0][0], "projective": functor.S.vertices[fails[0][1]]}
    return CompatReport(c1, c2, w1)


# -- GP triples -------------------------------------------------------------------------------------

@dataclass
class GpTripleVerdict:
    gp: bool
    phi_monic: bool
    coker_gp: bool
    b_gp: bool
    direct: Optional[GpVerdict] = None

    def __bool__(self):
        return self.gp

    def to_dict(self) -> dict:
        d = {"gp": self.gp, "phi_monic": self.phi_monic, "coker_gp": self.coker_gp, "b_gp": self.b_gp}
        if self.direct is not None:
            d["direct"] = self.direct.to_dict()
        return d


def is_gp_triple(comma, t: Module, gp_r: ObjectClass, gp_s: ObjectClass, compat: CompatReport,
                 cross_check: bool = True, bound: int = 8) -> GpTripleVerdict:
    """φ monic, coker φ ∈ 𝒢𝒫(R), B ∈ 𝒢𝒫(S) — licensed when T is compatible."""
    if not compat.compatible:
        raise NotCompatible("T is not compatible; the triple characterization does not apply")
    tr = comma.components(t)
    mono = tr.phi.is_mono()
    cgp = mono and gp_r.contains(cokernel(tr.phi)[0])
    bgp = gp_s.contains(tr.b)
    v = GpTripleVerdict(mono and cgp and bgp, mono, cgp, bgp)
    if cross_check:
        d = is_gorenstein_projective(t, bound)
        v.direct = d
        if (d.certified and not v.gp) or (d.refuted and v.gp):
            raise AssertionError(f"triple characterization ({v.gp}) disagrees with direct detection ({d.status})")
    return v


def gp_precover_comma(comma, t: Module, gp_r: ObjectClass, gp_s: ObjectClass, compat: CompatReport,
                      iter_cap: int = 16) -> ApproxResult:
    """Special GP precover of a triple via the transfer, after checking T is 𝒢𝒫(S)-exact."""
    if not compat.compatible:
        raise NotCompatible("T is not compatible")
    for g in gp_s.support_modules():
        if tor_dims(comma.functor, g, 1):
            raise AssertionError("compatible T must be 𝒢𝒫(S)-exact, but Tor₁(M, G) ≠ 0")
    return transfer_precover_comma(t, comma, gp_r, gp_s, iter_cap)
