"""Minimal projective resolutions, Ext, Tor, extensions and homological dimensions."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .modules import (
    Module,
    Morphism,
    ProjectiveCover,
    coordinates,
    combine,
    cokernel,
    diag_morphisms,
    direct_sum,
    dual,
    factor_through,
    hom_space,
    hstack_morphisms,
    induced_from_cokernel,
    induced_into_kernel,
    kernel,
    projective_cover,
    vstack_morphisms,
    zero_morphism,
)


@dataclass
class ShortExactSequence:
    """``0 -> left -mono-> middle -epi-> right -> 0``."""

    left: Module
    middle: Module
    right: Module
    mono: Morphism
    epi: Morphism

    def is_exact(self) -> bool:
        if not (self.mono.is_mono() and self.epi.is_epi()):
            return False
        if not (self.epi @ self.mono).is_zero():
            return False
        return all(a + c == b for a, b, c in zip(self.left.dims, self.middle.dims, self.right.dims))

    def verify(self) -> "ShortExactSequence":
        if not self.is_exact():
            raise AssertionError("sequence is not short exact")
        return self

    def is_split(self) -> bool:
        return factor_through(_identity(self.right), self.epi) is not None


def _identity(m):
    from .modules import identity

    return identity(m)


# -- resolutions ------------------------------------------------------------------------

@dataclass
class Resolution:
    """Minimal projective resolution, computed lazily.

    ``covers[i].epi: P_i ->> Ω^i`` (``Ω^0 = module``) and
    ``syzygies[i] = (Ω^{i+1}, Ω^{i+1} -> P_i)``.
    """

    module: Module
    covers: List[ProjectiveCover] = dc_field(default_factory=list)
    syzygies: List[Tuple[Module, Morphism]] = dc_field(default_factory=list)

    def syzygy_module(self, i: int) -> Module:
        if i == 0:
            return self.module
        self.extend(i)
        return self.syzygies[i - 1][0]

    def extend(self, n: int) -> None:
        """Make sure ``Ω^n`` (and ``P_0 .. P_{n-1}``) exist."""
        while len(self.covers) < n:
            current = self.module if not self.syzygies else self.syzygies[-1][0]
            cover = projective_cover(current)
            self.covers.append(cover)
            self.syzygies.append(kernel(cover.epi))

    def term(self, i: int) -> ProjectiveCover:
        self.extend(i + 1)
        return self.covers[i]

    def differential(self, i: int) -> Morphism:
        """``d_i: P_i -> P_{i-1}`` for i ≥ 1."""
        self.extend(i + 1)
        return self.syzygies[i - 1][1] @ self.covers[i].epi

    def terminates_by(self, cap: int) -> Optional[int]:
        """Smallest n ≤ cap with ``Ω^{n+1} = 0`` (the projective dimension)."""
        if self.module.is_zero():
            return 0
        for n in range(cap + 1):
            self.extend(n + 1)
            if self.syzygies[n][0].is_zero():
                return n
        return None


def resolution(m: Module) -> Resolution:
    """The (cached) minimal resolution of ``m``."""
    res = m.__dict__.get("_resolution")
    if res is None:
        res = Resolution(m)
        m._resolution = res
    return res


def projective_resolution(m: Module, length: int) -> List[Tuple[Module, Optional[Morphism]]]:
    """Terms ``P_0 .. P_length`` with differentials ``d_i: P_i -> P_{i-1}`` (None for i=0).

    Stops early once a syzygy vanishes.
    """
    res = resolution(m)
    out = []
    for i in range(length + 1):
        res.extend(i + 1)
        out.append((res.covers[i].module, None if i == 0 else res.differential(i)))
        if res.syzygies[i][0].is_zero():
            break
    return out


def syzygy(m: Module, i: int = 1) -> Module:
    return resolution(m).syzygy_module(i)


# -- Ext ----------------------------------------------------------------------------------

@dataclass
class ExtGroup:
    """``Ext^i(source, target)`` as ``Hom(Ω^i, N) / (restrictions of Hom(P_{i-1}, N))``."""

    source: Module
    target: Module
    degree: int
    syzygy: Module
    inclusion: Optional[Morphism]  # Ω^i -> P_{i-1}
    cover: Optional[ProjectiveCover]  # P_{i-1} ->> Ω^{i-1}
    hom_basis: List[Morphism]
    boundaries: List[Morphism]
    cocycles: List[Morphism]
    _system: np.ndarray = None

    @property
    def dim(self) -> int:
        return len(self.cocycles)

    def coords(self, c: Morphism) -> np.ndarray:
        """Coordinates of the class of the cocycle ``c`` in the ``cocycles`` basis."""
        f = self.source.field
        if self.dim == 0:
            return f.zeros(0, 1).reshape(-1)
        x = la.solve(f, self._system, c.flatten().reshape(-1, 1))
        if x is None:
            raise ValueError("not a cocycle of this Ext group")
        return x[:self.dim].reshape(-1)

    def cocycle(self, coeffs) -> Morphism:
        return combine(self.cocycles, coeffs, self.syzygy, self.target)

    def is_zero_class(self, c: Morphism) -> bool:
        return la.is_zero(self.coords(c))


def ext_group(m: Module, n: Module, degree: int = 1) -> ExtGroup:
    f = m.field
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if degree == 0:
        basis = hom_space(m, n)
        g = ExtGroup(m, n, 0, m, None, None, basis, [], basis)
    else:
        res = resolution(m)
        res.extend(degree)
        omega, inc = res.syzygies[degree - 1]
        cover = res.covers[degree - 1]
        z = hom_space(omega, n)
        b = [h @ inc for h in hom_space(cover.module, n)]
        if z:
            zmat = f.hstack([x.flatten().reshape(-1, 1) for x in z], len(z[0].flatten()))
            bcoords = [coordinates(x, z) for x in b]
            bmat = f.hstack([c.reshape(-1, 1) for c in bcoords], len(z)) if bcoords else f.zeros(len(z), 0)
            comp = la.complement_basis(f, la.image_basis(f, bmat) if bmat.size else bmat, len(z))
            cocycles = [combine(z, comp[:, j]) for j in range(comp.shape[1])]
        else:
            cocycles = []
        g = ExtGroup(m, n, degree, omega, inc, cover, z, b, cocycles)
    if g.cocycles:
        cols = [c.flatten().reshape(-1, 1) for c in g.cocycles] + [c.flatten().reshape(-1, 1) for c in g.boundaries]
        g._system = f.hstack(cols, len(cols[0]))
    return g


def ext_dim(m: Module, n: Module, degree: int = 1) -> int:
    return ext_group(m, n, degree).dim


def ext_map_covariant(g: Morphism, src: ExtGroup, tgt: ExtGroup) -> np.ndarray:
    """Matrix of ``Ext^i(C, g): Ext^i(C, X) -> Ext^i(C, Y)`` in the cocycle bases."""
    f = g.field
    cols = []
    for c in src.cocycles:
        pushed = g @ c
        pushed = Morphism(tgt.syzygy, tgt.target, pushed.maps, check=False)
        cols.append(tgt.coords(pushed).reshape(-1, 1))
    return f.hstack(cols, tgt.dim)


# -- extensions ------------------------------------------------------------------------------

def _realize(inc: Morphism, cover_epi: Morphism, c: Morphism) -> ShortExactSequence:
    """Pushout of ``Ω -inc-> P_0`` along ``c: Ω -> A``."""
    a = c.target
    ds = direct_sum([inc.target, a])
    rel = vstack_morphisms([inc, -c], ds)
    e, proj = cokernel(rel)
    mono = proj @ ds.inclusions[1]
    epi = induced_from_cokernel(proj, hstack_morphisms([cover_epi, zero_morphism(a, cover_epi.target)], ds))
    return ShortExactSequence(a, e, cover_epi.target, mono, epi).verify()


def realize_extension(group: ExtGroup, coeffs) -> ShortExactSequence:
    """The extension ``0 -> target -> E -> source -> 0`` of the given class (degree 1)."""
    if group.degree != 1:
        raise ValueError("only degree-1 classes are realised as extensions")
    c = group.cocycle(coeffs) if group.dim else zero_morphism(group.syzygy, group.target)
    return _realize(group.inclusion, group.cover.epi, c)


@dataclass
class SumExtension:
    ses: ShortExactSequence
    sources: List[Module]

    @property
    def middle(self) -> Module:
        return self.ses.middle


def realize_sum_extension(components: Sequence[Tuple[ExtGroup, np.ndarray]]) -> SumExtension:
    """Extension of ``⊕ source_i`` by the common target, with block classes."""
    groups = [g for g, _ in components]
    target = groups[0].target
    incs = [g.inclusion for g in groups]
    epis = [g.cover.epi for g in groups]
    cs = [g.cocycle(v) if g.dim else zero_morphism(g.syzygy, target) for g, v in components]
    omega = direct_sum([g.syzygy for g in groups])
    p0 = direct_sum([g.cover.module for g in groups])
    src = direct_sum([g.source for g in groups])
    inc = diag_morphisms(incs, omega, p0)
    epi = diag_morphisms(epis, p0, src)
    c = hstack_morphisms(cs, omega)
    return SumExtension(_realize(inc, epi, c), [g.source for g in groups])


def class_of(ses: ShortExactSequence, group: Optional[ExtGroup] = None) -> np.ndarray:
    """Coordinates in Ext¹(right, left) of the class of a short exact sequence."""
    group = group or ext_group(ses.right, ses.left, 1)
    cover = group.cover.epi
    cover = Morphism(cover.source, ses.right, cover.maps, check=False)
    lift = factor_through(cover, ses.epi)
    if lift is None:
        raise AssertionError("projective cover does not lift along an epimorphism")
    c = induced_into_kernel(ses.mono, lift @ group.inclusion)
    c = Morphism(group.syzygy, group.target, c.maps, check=False)
    return group.coords(c)


def universal_extension(targets: Sequence[Module], k: Module) -> Tuple[ShortExactSequence, List[Module]]:
    """``0 -> k -> W -> ⊕ t_i^{dim Ext¹(t_i, k)} -> 0`` realising a basis of every Ext¹(t_i, k).

    Returns the sequence and the list of summands of its right-hand term.  The
    defining property (the connecting map is onto each Ext¹(t_i, k)) is
    verified: Ext¹(t_i, W) -> Ext¹(t_i, ⊕) is injective for every t_i.
    """
    comps = []
    for t in targets:
        g = ext_group(t, k, 1)
        for j in range(g.dim):
            e = k.field.zeros(g.dim, 1).reshape(-1)
            e[j] = k.field.scalar(1)
            comps.append((g, e))
    if not comps:
        from .modules import identity, zero_module

        z = zero_module(k.algebra)
        ses = ShortExactSequence(k, k, z, identity(k), zero_morphism(k, z))
        return ses, []
    se = realize_sum_extension(comps)
    ses = se.ses
    for t in targets:
        gw = ext_group(t, ses.middle, 1)
        gx = ext_group(t, ses.right, 1)
        mat = ext_map_covariant(ses.epi, gw, gx)
        if gw.dim and la.rank(k.field, mat) != gw.dim:
            raise AssertionError("universal extension does not kill Ext¹")
    return ses, se.sources


# -- Tor --------------------------------------------------------------------------------------

def tor_dims(functor, n: Module, degree: int) -> int:
    """Total dimension of ``Tor_i(M, n)`` for the tensor functor ``M ⊗_S −``."""
    res = resolution(n)
    f = n.field

    def tensored_rank(i):
        if i == 0:
            return 0
        res.extend(i + 1)
        if res.covers[i].module.is_zero():
            return 0
        return sum(functor.on_morphism(res.differential(i)).ranks().values())

    res.extend(degree + 1)
    pdim = functor(res.covers[degree].module).total_dim
    return pdim - tensored_rank(degree) - tensored_rank(degree + 1)


def tor(m_right: Module, n: Module, degree: int) -> int:
    """``dim Tor_i^S(m_right, n)``; ``m_right`` is a module over ``opposite(S)``."""
    from .comma import Bimodule, TensorFunctor

    if m_right.algebra is not n.algebra.opposite():
        raise ValueError("the right module must live over the opposite algebra")
    return tor_dims(TensorFunctor(Bimodule.from_right_module(m_right)), n, degree)


def tensor_dim(m_right: Module, n: Module) -> int:
    from .comma import Bimodule, TensorFunctor

    return TensorFunctor(Bimodule.from_right_module(m_right))(n).total_dim


# -- dimensions --------------------------------------------------------------------------------

def projective_dimension(m: Module, cap: int) -> Optional[int]:
    """pd(m) if it is at most ``cap``, else None (meaning "> cap").  pd(0) is reported as 0."""
    return resolution(m).terminates_by(cap)


def injective_dimension(m: Module, cap: int) -> Optional[int]:
    return projective_dimension(dual(m), cap)


def homological_dimension(m: Module, kind: str = "pd", cap: int = 8) -> Optional[int]:
    if cap < 0:
        raise ValueError("cap must be non-negative")
    if kind == "pd":
        return projective_dimension(m, cap)
    if kind == "id":
        return injective_dimension(m, cap)
    raise ValueError(f"unknown dimension kind {kind!r}")


def format_dimension(value: Optional[int], cap: int) -> str:
    return f">{cap}" if value is None else str(value)
