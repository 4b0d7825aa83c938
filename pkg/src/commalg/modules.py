"""Representations, morphisms and the abelian structure of their category.

A :class:`Module` lives over any *presentation*: an object exposing ``field``,
``vertices``, ``arrows`` (with ``name``/``source``/``target``),
``check_relations(module)``, ``projective(v)`` and ``simple(v)``.  Both
:class:`~commalg.algebra.MonomialAlgebra` and
:class:`~commalg.comma.CommaCategory` are presentations, so every algorithm
here (Hom, kernels, decomposition, enumeration, ...) serves both.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .linalg import Field


class FieldNotFinite(Exception):
    pass


class DecompositionBudgetExceeded(Exception):
    pass


class IsoUndecided(Exception):
    pass


class EnumerationBudgetExceeded(Exception):
    pass


class Module:
    def __init__(self, algebra, dims, action: Optional[dict] = None, name: Optional[str] = None,
                 check: bool = True):
        self.algebra = algebra
        f = algebra.field
        if isinstance(dims, dict):
            dims = tuple(int(dims.get(v, 0)) for v in algebra.vertices)
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != len(algebra.vertices) or any(d < 0 for d in self.dims):
            raise ValueError("dimension vector does not match the vertices")
        self._dim = dict(zip(algebra.vertices, self.dims))
        action = dict(action or {})
        unknown = set(action) - {a.name for a in algebra.arrows}
        if unknown:
            raise ValueError(f"unknown arrows {sorted(unknown)}")
        self.action: Dict[str, np.ndarray] = {}
        for a in algebra.arrows:
            shape = (self._dim[a.target], self._dim[a.source])
            if a.name in action:
                mat = action[a.name]
                mat = f.array(mat) if not isinstance(mat, np.ndarray) else f.reduce(mat.astype(f.dtype))
                if mat.size == 0:
                    mat = f.zeros(*shape)
                if mat.shape != shape:
                    raise ValueError(f"arrow {a.name}: matrix shape {mat.shape}, expected {shape}")
            else:
                mat = f.zeros(*shape)
            self.action[a.name] = mat
        self.name = name
        if check:
            algebra.check_relations(self)

    @property
    def field(self) -> Field:
        return self.algebra.field

    def dim(self, v: str) -> int:
        return self._dim[v]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    @property
    def offsets(self) -> dict:
        out, o = {}, 0
        for v, d in zip(self.algebra.vertices, self.dims):
            out[v] = o
            o += d
        return out

    def named(self, name: Optional[str]) -> "Module":
        m = Module(self.algebra, self.dims, self.action, name=name, check=False)
        return m

    def __repr__(self):
        return f"{self.name or 'Module'}{list(self.dims)}"

    def to_dict(self) -> dict:
        f = self.field
        return {
            "kind": "module",
            "name": self.name,
            "algebra": getattr(self.algebra, "name", None),
            "dims": {v: d for v, d in zip(self.algebra.vertices, self.dims)},
            "action": {a: f.to_list(m) for a, m in self.action.items() if m.size},
        }


class Morphism:
    def __init__(self, source: Module, target: Module, maps: dict, check: bool = True):
        if source.algebra is not target.algebra:
            raise ValueError("morphism between modules over different algebras")
        self.source, self.target = source, target
        f = source.field
        self.maps: Dict[str, np.ndarray] = {}
        for v in source.algebra.vertices:
            shape = (target.dim(v), source.dim(v))
            m = maps.get(v)
            if m is None or (isinstance(m, np.ndarray) and m.size == 0):
                m = f.zeros(*shape)
            elif not isinstance(m, np.ndarray):
                m = f.array(m)
            if m.shape != shape:
                raise ValueError(f"vertex {v}: map shape {m.shape}, expected {shape}")
            self.maps[v] = m
        if check:
            for a in source.algebra.arrows:
                lhs = f.matmul(self.maps[a.target], source.action[a.name])
                rhs = f.matmul(target.action[a.name], self.maps[a.source])
                if not np.array_equal(lhs, rhs):
                    raise ValueError(f"maps do not commute with arrow {a.name}")

    @property
    def field(self) -> Field:
        return self.source.field

    @property
    def algebra(self):
        return self.source.algebra

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r})"

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """``self @ other`` is the composite "other, then self"."""
        if other.target.dims != self.source.dims:
            raise ValueError("morphisms are not composable")
        f = self.field
        return Morphism(other.source, self.target,
                        {v: f.matmul(self.maps[v], other.maps[v]) for v in self.maps}, check=False)

    def _combine(self, other, op) -> "Morphism":
        return Morphism(self.source, self.target, {v: op(self.maps[v], other.maps[v]) for v in self.maps},
                        check=False)

    def __add__(self, other):
        return self._combine(other, self.field.add)

    def __sub__(self, other):
        return self._combine(other, self.field.sub)

    def __neg__(self):
        return Morphism(self.source, self.target, {v: self.field.neg(m) for v, m in self.maps.items()},
                        check=False)

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, {v: self.field.scale(c, m) for v, m in self.maps.items()},
                        check=False)

    def flatten(self) -> np.ndarray:
        parts = [m.reshape(-1) for m in self.maps.values()]
        if not parts:
            return self.field.zeros(0, 1).reshape(-1)
        return np.concatenate([p.astype(self.field.dtype) for p in parts])

    def total_matrix(self) -> np.ndarray:
        return self.field.block_diag([self.maps[v] for v in self.algebra.vertices])

    def ranks(self) -> dict:
        return {v: la.rank(self.field, m) if m.size else 0 for v, m in self.maps.items()}

    def is_zero(self) -> bool:
        return all(la.is_zero(m) for m in self.maps.values())

    def is_mono(self) -> bool:
        r = self.ranks()
        return all(r[v] == self.source.dim(v) for v in self.maps)

    def is_epi(self) -> bool:
        r = self.ranks()
        return all(r[v] == self.target.dim(v) for v in self.maps)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_mono()

    def inverse(self) -> "Morphism":
        if not self.is_iso():
            raise ValueError("morphism is not an isomorphism")
        f = self.field
        return Morphism(self.target, self.source,
                        {v: la.inverse(f, m) if m.size else m.T.copy() for v, m in self.maps.items()},
                        check=False)

    def to_dict(self) -> dict:
        return {v: self.field.to_list(m) for v, m in self.maps.items()}


# -- basic constructions -------------------------------------------------------

def zero_module(algebra) -> Module:
    return Module(algebra, tuple(0 for _ in algebra.vertices), {}, name="0", check=False)


def identity(m: Module) -> Morphism:
    f = m.field
    return Morphism(m, m, {v: f.eye(m.dim(v)) for v in m.algebra.vertices}, check=False)


def zero_morphism(m: Module, n: Module) -> Morphism:
    return Morphism(m, n, {}, check=False)


def _hom_system(m: Module, n: Module) -> np.ndarray:
    f = m.field
    alg = m.algebra
    offs, o = {}, 0
    for v in alg.vertices:
        offs[v] = o
        o += n.dim(v) * m.dim(v)
    nvars = o
    blocks = []
    for a in alg.arrows:
        u, w = a.source, a.target
        rows = n.dim(w) * m.dim(u)
        if rows == 0:
            continue
        eq = f.zeros(rows, nvars)
        if n.dim(w) * m.dim(w):
            eq[:, offs[w]:offs[w] + n.dim(w) * m.dim(w)] = f.kron(f.eye(n.dim(w)), m.action[a.name].T)
        if n.dim(u) * m.dim(u):
            blk = f.kron(n.action[a.name], f.eye(m.dim(u)))
            sl = slice(offs[u], offs[u] + n.dim(u) * m.dim(u))
            eq[:, sl] = f.sub(eq[:, sl], blk)
        blocks.append(eq)
    return f.vstack(blocks, nvars), nvars


def _unflatten(m: Module, n: Module, vec: np.ndarray) -> dict:
    maps, o = {}, 0
    for v in m.algebra.vertices:
        k = n.dim(v) * m.dim(v)
        maps[v] = vec[o:o + k].reshape(n.dim(v), m.dim(v)).copy()
        o += k
    return maps


def hom_space(m: Module, n: Module) -> List[Morphism]:
    """A basis of Hom(m, n) (free-variable order of the commutation system)."""
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    eqs, nvars = _hom_system(m, n)
    if nvars == 0:
        return []
    basis = la.kernel_basis(m.field, eqs)
    return [Morphism(m, n, _unflatten(m, n, basis[:, j]), check=False) for j in range(basis.shape[1])]


def hom_dim(m: Module, n: Module) -> int:
    eqs, nvars = _hom_system(m, n)
    return nvars - la.rank(m.field, eqs) if nvars else 0


def combine(basis: Sequence[Morphism], coeffs, source: Module = None, target: Module = None) -> Morphism:
    if not basis:
        return zero_morphism(source, target)
    f = basis[0].field
    out = zero_morphism(basis[0].source, basis[0].target)
    for c, b in zip(coeffs, basis):
        c = f.scalar(c)
        if c:
            out = out + b.scale(c)
    return out


def coordinates(g: Morphism, basis: Sequence[Morphism]) -> Optional[np.ndarray]:
    """Coefficients of ``g`` in ``basis`` (None if ``g`` is not in their span)."""
    f = g.field
    vec = g.flatten()
    if not basis:
        return f.zeros(0, 1).reshape(-1) if la.is_zero(vec) else None
    mat = f.hstack([b.flatten().reshape(-1, 1) for b in basis], len(vec))
    x = la.solve(f, mat, vec.reshape(-1, 1))
    return None if x is None else x.reshape(-1)


def factor_through(g: Morphism, h: Morphism) -> Optional[Morphism]:
    """A morphism ``x`` with ``h @ x == g`` (g: X->Z, h: Y->Z), or None."""
    basis = hom_space(g.source, h.source)
    if not basis:
        return zero_morphism(g.source, h.source) if g.is_zero() else None
    c = coordinates(g, [h @ b for b in basis])
    return None if c is None else combine(basis, c)


def extend_along(g: Morphism, h: Morphism) -> Optional[Morphism]:
    """A morphism ``x`` with ``x @ h == g`` (g: X->Z, h: X->Y), or None."""
    basis = hom_space(h.target, g.target)
    if not basis:
        return zero_morphism(h.target, g.target) if g.is_zero() else None
    c = coordinates(g, [b @ h for b in basis])
    return None if c is None else combine(basis, c)


# -- kernels, cokernels, images ---------------------------------------------------

def submodule(m: Module, spans: dict, name: Optional[str] = None) -> Tuple[Module, Morphism]:
    """Submodule spanned per vertex by the (independent) columns of ``spans[v]``."""
    f = m.field
    alg = m.algebra
    bases = {}
    for v in alg.vertices:
        b = spans.get(v)
        if b is None or b.size == 0:
            b = f.zeros(m.dim(v), 0)
        bases[v] = b
    action = {}
    for a in alg.arrows:
        src, tgt = bases[a.source], bases[a.target]
        img = f.matmul(m.action[a.name], src)
        if src.shape[1] == 0:
            action[a.name] = f.zeros(tgt.shape[1], 0)
            continue
        if tgt.shape[1] == 0:
            if not la.is_zero(img):
                raise ValueError("subspaces are not closed under the action")
            action[a.name] = f.zeros(0, src.shape[1])
            continue
        x = la.solve(f, tgt, img)
        if x is None:
            raise ValueError("subspaces are not closed under the action")
        action[a.name] = x
    sub = Module(alg, tuple(bases[v].shape[1] for v in alg.vertices), action, name=name, check=False)
    return sub, Morphism(sub, m, bases, check=False)


def quotient(m: Module, spans: dict, name: Optional[str] = None) -> Tuple[Module, Morphism]:
    """Quotient of ``m`` by the submodule spanned by ``spans`` (columns per vertex)."""
    f = m.field
    alg = m.algebra
    proj = {}
    for v in alg.vertices:
        b = spans.get(v)
        if b is None or b.size == 0:
            proj[v] = f.eye(m.dim(v))
        else:
            proj[v] = la.left_kernel(f, b)
    sections = {v: (la.right_inverse(f, q) if q.shape[0] else f.zeros(q.shape[1], 0)) for v, q in proj.items()}
    action = {}
    for a in alg.arrows:
        action[a.name] = f.mul(proj[a.target], m.action[a.name], sections[a.source]) \
            if proj[a.target].shape[0] and sections[a.source].shape[1] else \
            f.zeros(proj[a.target].shape[0], sections[a.source].shape[1])
    q = Module(alg, tuple(proj[v].shape[0] for v in alg.vertices), action, name=name, check=False)
    return q, Morphism(m, q, proj, check=False)


def kernel(g: Morphism) -> Tuple[Module, Morphism]:
    f = g.field
    return submodule(g.source, {v: la.kernel_basis(f, mat) if mat.shape[1] else f.zeros(0, 0)
                                for v, mat in g.maps.items()})


def cokernel(g: Morphism) -> Tuple[Module, Morphism]:
    f = g.field
    return quotient(g.target, {v: la.image_basis(f, mat) if mat.size else f.zeros(mat.shape[0], 0)
                               for v, mat in g.maps.items()})


def image(g: Morphism) -> Tuple[Module, Morphism, Morphism]:
    """``(I, epi: source->I, mono: I->target)``."""
    f = g.field
    img, mono = submodule(g.target, {v: la.image_basis(f, mat) if mat.size else f.zeros(mat.shape[0], 0)
                                     for v, mat in g.maps.items()})
    epi = {}
    for v, mat in g.maps.items():
        if img.dim(v) == 0:
            epi[v] = f.zeros(0, mat.shape[1])
        else:
            epi[v] = la.solve(f, mono.maps[v], mat)
    return img, Morphism(g.source, img, epi, check=False), mono


@dataclass
class Factorization:
    kernel: Module
    inclusion: Morphism
    image: Module
    coimage_map: Morphism
    image_inclusion: Morphism
    cokernel: Module
    projection: Morphism


def factorize(g: Morphism) -> Factorization:
    k, inc = kernel(g)
    i, e, mono = image(g)
    c, proj = cokernel(g)
    return Factorization(k, inc, i, e, mono, c, proj)


def induced_from_cokernel(proj: Morphism, h: Morphism) -> Morphism:
    """Given ``proj: X->C`` epi and ``h: X->Y`` killing ``ker proj``, the map ``C->Y``."""
    f = h.field
    maps = {}
    for v, q in proj.maps.items():
        if q.shape[0] == 0:
            maps[v] = f.zeros(h.target.dim(v), 0)
        else:
            maps[v] = f.matmul(h.maps[v], la.right_inverse(f, q))
    return Morphism(proj.target, h.target, maps)


def induced_into_kernel(inc: Morphism, h: Morphism) -> Morphism:
    """Given ``inc: K->X`` mono and ``h: Y->X`` landing in its image, the map ``Y->K``."""
    f = h.field
    maps = {}
    for v, i in inc.maps.items():
        if i.shape[1] == 0:
            maps[v] = f.zeros(0, h.source.dim(v))
        else:
            x = la.solve(f, i, h.maps[v])
            if x is None:
                raise ValueError("map does not land in the submodule")
            maps[v] = x
    return Morphism(h.source, inc.source, maps)


# -- direct sums -------------------------------------------------------------------

@dataclass
class DirectSum:
    module: Module
    inclusions: List[Morphism]
    projections: List[Morphism]

    def __iter__(self):
        return iter((self.module, self.inclusions, self.projections))

    def __getitem__(self, i):
        return (self.module, self.inclusions, self.projections)[i]


def direct_sum(mods: Sequence[Module], algebra=None, name: Optional[str] = None) -> DirectSum:
    if not mods:
        if algebra is None:
            raise ValueError("empty direct sum needs the algebra")
        return DirectSum(zero_module(algebra), [], [])
    alg = mods[0].algebra
    f = alg.field
    dims = tuple(sum(m.dim(v) for m in mods) for v in alg.vertices)
    action = {a.name: f.block_diag([m.action[a.name] for m in mods]) for a in alg.arrows}
    total = Module(alg, dims, action, name=name or " ⊕ ".join(str(m.name or "?") for m in mods), check=False)
    incs, projs = [], []
    offs = {v: 0 for v in alg.vertices}
    for m in mods:
        inc, proj = {}, {}
        for v in alg.vertices:
            e = f.zeros(total.dim(v), m.dim(v))
            for i in range(m.dim(v)):
                e[offs[v] + i, i] = f.scalar(1)
            inc[v] = e
            proj[v] = e.T.copy()
            offs[v] += m.dim(v)
        incs.append(Morphism(m, total, inc, check=False))
        projs.append(Morphism(total, m, proj, check=False))
    return DirectSum(total, incs, projs)


def hstack_morphisms(maps: Sequence[Morphism], source: Optional[DirectSum] = None) -> Morphism:
    """``[f_1 ... f_n]: ⊕ M_i -> N``."""
    ds = source or direct_sum([g.source for g in maps])
    out = zero_morphism(ds.module, maps[0].target)
    for g, p in zip(maps, ds.projections):
        out = out + g @ p
    return out


def vstack_morphisms(maps: Sequence[Morphism], target: Optional[DirectSum] = None) -> Morphism:
    """``[f_1; ...; f_n]: M -> ⊕ N_i``."""
    ds = target or direct_sum([g.target for g in maps])
    out = zero_morphism(maps[0].source, ds.module)
    for g, i in zip(maps, ds.inclusions):
        out = out + i @ g
    return out


def diag_morphisms(maps: Sequence[Morphism], source: Optional[DirectSum] = None,
                   target: Optional[DirectSum] = None) -> Morphism:
    ds_s = source or direct_sum([g.source for g in maps])
    ds_t = target or direct_sum([g.target for g in maps])
    out = zero_morphism(ds_s.module, ds_t.module)
    for g, p, i in zip(maps, ds_s.projections, ds_t.inclusions):
        out = out + i @ g @ p
    return out


def pushout(g1: Morphism, g2: Morphism) -> Tuple[Module, Morphism, Morphism]:
    """Pushout of ``B <-g1- A -g2-> C``: returns ``(P, B->P, C->P)``."""
    ds = direct_sum([g1.target, g2.target])
    both = vstack_morphisms([g1, -g2], ds)
    p, proj = cokernel(both)
    return p, proj @ ds.inclusions[0], proj @ ds.inclusions[1]


def pullback(g1: Morphism, g2: Morphism) -> Tuple[Module, Morphism, Morphism]:
    """Pullback of ``B -g1-> D <-g2- C``: returns ``(Q, Q->B, Q->C)``."""
    ds = direct_sum([g1.source, g2.source])
    both = hstack_morphisms([g1, -g2], ds)
    q, inc = kernel(both)
    return q, ds.projections[0] @ inc, ds.projections[1] @ inc


# -- radical, top, projective covers --------------------------------------------------

def radical(m: Module) -> Tuple[Module, Morphism]:
    f = m.field
    spans = {}
    for v in m.algebra.vertices:
        imgs = [m.action[a.name] for a in m.algebra.arrows if a.target == v and m.action[a.name].size]
        spans[v] = la.image_basis(f, f.hstack(imgs, m.dim(v))) if imgs else f.zeros(m.dim(v), 0)
    return submodule(m, spans)


def top_dims(m: Module) -> tuple:
    r, _ = radical(m)
    return tuple(a - b for a, b in zip(m.dims, r.dims))


def socle_dims(m: Module) -> tuple:
    f = m.field
    out = []
    for v in m.algebra.vertices:
        outs = [m.action[a.name] for a in m.algebra.arrows if a.source == v]
        stacked = f.vstack(outs, m.dim(v)) if outs else f.zeros(0, m.dim(v))
        out.append(m.dim(v) - la.rank(f, stacked) if stacked.size else m.dim(v))
    return tuple(out)


def map_from_projective(v: str, target: Module, x: np.ndarray) -> Morphism:
    """The morphism ``P(v) -> target`` sending the generator to ``x``."""
    alg = target.algebra
    if hasattr(alg, "projective_map"):
        return alg.projective_map(v, target, x)
    return _generic_projective_map(v, target, x)


def _generic_projective_map(v, target, x):
    f = target.field
    p = alg_projective(target.algebra, v)
    g = target.algebra.projective_generator(v)
    basis = hom_space(p, target)
    if not basis:
        return zero_morphism(p, target)
    ev = f.hstack([b.maps[v][:, g:g + 1] for b in basis], target.dim(v))
    c = la.solve(f, ev, x.reshape(-1, 1))
    if c is None:
        raise ValueError("vector is not reachable from the projective (bad presentation)")
    return combine(basis, c.reshape(-1))


def alg_projective(alg, v):
    return alg.projective(v)


@dataclass
class ProjectiveCover:
    module: Module
    epi: Morphism
    vertices: List[str]  # indecomposable summand P(v) for each listed v, in order
    summands: DirectSum


def projective_cover(m: Module) -> ProjectiveCover:
    f = m.field
    alg = m.algebra
    rad, inc = radical(m)
    maps, verts = [], []
    for v in alg.vertices:
        comp = la.complement_basis(f, inc.maps[v], m.dim(v))
        for j in range(comp.shape[1]):
            maps.append(map_from_projective(v, m, comp[:, j]))
            verts.append(v)
    ds = direct_sum([alg.projective(v) for v in verts], algebra=alg,
                    name=" ⊕ ".join(f"P({v})" for v in verts) or "0")
    if maps:
        epi = hstack_morphisms(maps, ds)
    else:
        epi = zero_morphism(ds.module, m)
    return ProjectiveCover(ds.module, epi, verts, ds)


def is_projective(m: Module) -> bool:
    return projective_cover(m).module.total_dim == m.total_dim


# -- duality -------------------------------------------------------------------------

def dual(m: Module) -> Module:
    """``Hom_k(m, k)``: a module over the opposite algebra with transposed actions."""
    op = m.algebra.opposite()
    name = None
    if m.name:
        name = f"D{m.name}"
    return Module(op, m.dims, {a: mat.T.copy() for a, mat in m.action.items()}, name=name, check=False)


def dual_morphism(g: Morphism) -> Morphism:
    return Morphism(dual(g.target), dual(g.source), {v: mat.T.copy() for v, mat in g.maps.items()},
                    check=False)


# -- endomorphism rings, decomposition ------------------------------------------------

def _power(f: Field, x: np.ndarray, n: int) -> np.ndarray:
    result = f.eye(x.shape[0])
    base = x
    while n:
        if n & 1:
            result = f.matmul(result, base)
        base = f.matmul(base, base)
        n >>= 1
    return result


def _is_nilpotent(f: Field, x: np.ndarray) -> bool:
    return la.is_zero(_power(f, x, x.shape[0]))


def _is_invertible(f: Field, x: np.ndarray) -> bool:
    return la.rank(f, x) == x.shape[0]


def _splits(f: Field, x: np.ndarray) -> bool:
    """``x`` neither nilpotent nor invertible: its Fitting decomposition is proper."""
    return not _is_invertible(f, x) and not _is_nilpotent(f, x)


def _local_certificate(f: Field, basis: List[np.ndarray]) -> bool:
    """Exact test that the algebra spanned by ``basis`` (containing 1) is local
    with residue field k: every element has the form λ + n with the n spanning
    a nilpotent two-sided ideal of codimension one."""
    n = basis[0].shape[0]
    one = f.eye(n)
    nils = []
    for b in basis:
        found = None
        # the only candidate eigenvalue is the trace divided by n when p ∤ n;
        # otherwise try the diagonal entries (b - λ nilpotent forces λ to be one)
        cands = {f.scalar(b[i, i]) for i in range(n)}
        for lam in sorted(cands, key=lambda c: (str(type(c)), c)):
            cand = f.sub(b, f.scale(lam, one))
            if _is_nilpotent(f, cand):
                found = cand
                break
        if found is None:
            return False
        nils.append(found)
    flat = f.hstack([x.reshape(-1, 1) for x in nils], n * n)
    span = la.image_basis(f, flat)
    if span.shape[1] != len(basis) - 1:
        return False
    # closed under products and nilpotent as an ideal: N^k = 0 for some k <= n
    mats = [span[:, j].reshape(n, n) for j in range(span.shape[1])]
    current = mats
    for _ in range(n + 1):
        prods = [f.matmul(x, y) for x in current for y in mats]
        if not prods:
            return True
        pflat = f.hstack([x.reshape(-1, 1) for x in prods], n * n)
        if not la.span_contains(f, span, pflat):
            return False
        basis_p = la.image_basis(f, pflat)
        if basis_p.shape[1] == 0:
            return True
        current = [basis_p[:, j].reshape(n, n) for j in range(basis_p.shape[1])]
    return False


@dataclass
class EndomorphismData:
    basis: List[Morphism]
    totals: List[np.ndarray]


def _endomorphisms(m: Module) -> EndomorphismData:
    basis = hom_space(m, m)
    return EndomorphismData(basis, [b.total_matrix() for b in basis])


def _total_to_morphism(m: Module, x: np.ndarray) -> Morphism:
    maps = {}
    offs = m.offsets
    for v in m.algebra.vertices:
        o, d = offs[v], m.dim(v)
        maps[v] = x[o:o + d, o:o + d].copy()
    return Morphism(m, m, maps, check=False)


DECOMPOSE_EXHAUSTIVE_LIMIT = 2 ** 16
DECOMPOSE_RANDOM_TRIALS = 4000
DECOMPOSE_SEED = 20240611


def find_splitting_endomorphism(m: Module) -> Optional[Morphism]:
    """A non-nilpotent, non-invertible endomorphism, or None when ``End(m)`` is local.

    Exact whenever it returns: None is only returned with a proof of locality
    (one-dimensional End, the local certificate, or exhaustive enumeration).
    """
    f = m.field
    if not f.is_finite:
        raise FieldNotFinite("decomposition needs a finite field")
    if m.is_zero():
        return None
    end = _endomorphisms(m)
    tots = end.totals
    e = len(tots)
    if e == 1:
        return None
    one = f.eye(m.total_dim)
    p = f.characteristic
    lams = range(p) if p <= 64 else range(0)
    for t in tots:
        if _splits(f, t):
            return _total_to_morphism(m, t)
        for lam in lams:
            c = f.sub(t, f.scale(lam, one))
            if _splits(f, c):
                return _total_to_morphism(m, c)
    for a, b in itertools.combinations(tots, 2):
        s = f.add(a, b)
        if _splits(f, s):
            return _total_to_morphism(m, s)
    if _local_certificate(f, [one] + tots):
        return None
    if p ** e <= DECOMPOSE_EXHAUSTIVE_LIMIT:
        stack = np.stack(tots)
        for coeffs in itertools.product(range(p), repeat=e):
            x = f.reduce(np.tensordot(np.array(coeffs, dtype=np.int64), stack, axes=1))
            if _splits(f, x):
                return _total_to_morphism(m, x)
        return None
    rng = random.Random(DECOMPOSE_SEED)
    for _ in range(DECOMPOSE_RANDOM_TRIALS):
        coeffs = [rng.randrange(p) for _ in range(e)]
        x = f.reduce(sum(c * t for c, t in zip(coeffs, tots)))
        if _splits(f, x):
            return _total_to_morphism(m, x)
    raise DecompositionBudgetExceeded(
        f"could not decide indecomposability of {m!r} (End has dimension {e})")


def is_indecomposable(m: Module) -> bool:
    return not m.is_zero() and find_splitting_endomorphism(m) is None


@dataclass
class Decomposition:
    """Indecomposable summands with multiplicities and a verified witness.

    ``parts`` lists the summands in witness order (each repeated according to
    its multiplicity) and ``witness: ⊕ parts -> module`` is an isomorphism.
    """

    module: Module
    summands: List[Tuple[Module, int]]
    parts: List[Module]
    witness: Morphism

    def inclusions(self) -> List[Morphism]:
        ds = direct_sum(self.parts, algebra=self.module.algebra)
        return [self.witness @ i for i in ds.inclusions]

    def projections(self) -> List[Morphism]:
        ds = direct_sum(self.parts, algebra=self.module.algebra)
        inv = self.witness.inverse()
        return [p @ inv for p in ds.projections]


def _split_pieces(m: Module) -> List[Tuple[Module, Morphism]]:
    """Indecomposable pieces with inclusions into ``m`` (a direct-sum decomposition)."""
    if m.is_zero():
        return []
    x = find_splitting_endomorphism(m)
    if x is None:
        return [(m, identity(m))]
    f = m.field
    xn = _power(f, x.total_matrix(), m.total_dim)
    xn_m = _total_to_morphism(m, xn)
    img, _, img_inc = image(xn_m)
    ker, ker_inc = kernel(xn_m)
    pieces = []
    for sub, inc in ((img, img_inc), (ker, ker_inc)):
        for piece, pinc in _split_pieces(sub):
            pieces.append((piece, inc @ pinc))
    return pieces


def decompose(m: Module) -> Decomposition:
    if not m.field.is_finite:
        raise FieldNotFinite("decomposition over Q is not supported")
    pieces = _split_pieces(m)
    groups: List[List[Tuple[Module, Morphism]]] = []
    for piece, inc in pieces:
        for g in groups:
            iso = find_isomorphism_indecomposable(g[0][0], piece)
            if iso is not None:
                # re-express the piece through the group's representative
                g.append((g[0][0], inc @ iso))
                break
        else:
            groups.append([(piece, inc)])
    groups.sort(key=lambda g: (g[0][0].total_dim, g[0][0].dims))
    parts, incs, summands = [], [], []
    for g in groups:
        summands.append((g[0][0], len(g)))
        for piece, inc in g:
            parts.append(piece)
            incs.append(inc)
    if parts:
        ds = direct_sum(parts)
        witness = hstack_morphisms(incs, ds)
    else:
        witness = identity(m)
    if not witness.is_iso():
        raise AssertionError("decomposition witness is not an isomorphism")
    return Decomposition(m, summands, parts, witness)


# -- isomorphism -------------------------------------------------------------------------

ISO_RANDOM_TRIALS = 2000
ISO_SEED = 7


def find_isomorphism_indecomposable(m: Module, n: Module) -> Optional[Morphism]:
    """For ``m`` with local endomorphism ring: ``m ≅ n`` iff some element of a
    basis of Hom(m, n) is an isomorphism (non-units of a local ring form an ideal)."""
    if m.dims != n.dims:
        return None
    if m.is_zero():
        return zero_morphism(m, n)
    for b in hom_space(m, n):
        if b.is_iso():
            return b
    return None


def _invariants(m: Module) -> tuple:
    return (m.dims, top_dims(m), socle_dims(m), hom_dim(m, m))


def find_isomorphism(m: Module, n: Module) -> Optional[Morphism]:
    """An isomorphism ``m -> n`` or None (never a silent None when undecided)."""
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    if m.dims != n.dims:
        return None
    if m.is_zero():
        return zero_morphism(m, n)
    f = m.field
    if f.is_finite:
        dm, dn = decompose(m), decompose(n)
        if len(dm.parts) == 1:
            return find_isomorphism_indecomposable(m, n)
        if len(dm.parts) != len(dn.parts):
            return None
        used = [False] * len(dn.parts)
        isos = []
        for pm in dm.parts:
            for j, pn in enumerate(dn.parts):
                if not used[j]:
                    iso = find_isomorphism_indecomposable(pm, pn)
                    if iso is not None:
                        used[j] = True
                        isos.append((j, iso))
                        break
            else:
                return None
        order = [j for j, _ in isos]
        src = direct_sum(dm.parts)
        tgt_parts = [dn.parts[j] for j in order]
        tgt = direct_sum(tgt_parts)
        d = diag_morphisms([iso for _, iso in isos], src, tgt)
        # reorder the target parts back to dn's witness order
        dn_incs = dn.inclusions()
        into_n = hstack_morphisms([dn_incs[j] for j in order], tgt)
        return into_n @ d @ dm.witness.inverse()
    # over Q: search, backed by cheap invariants for definite negatives
    if _invariants(m) != _invariants(n):
        return None
    basis = hom_space(m, n)
    if len(basis) != hom_dim(m, m):
        return None
    for b in basis:
        if b.is_iso():
            return b
    rng = random.Random(ISO_SEED)
    for _ in range(ISO_RANDOM_TRIALS):
        g = combine(basis, [rng.randint(-3, 3) for _ in basis])
        if g.is_iso():
            return g
    raise IsoUndecided(f"could not decide whether {m!r} ≅ {n!r} over Q")


def is_isomorphic(m: Module, n: Module) -> bool:
    return find_isomorphism(m, n) is not None


def index_of_iso(m: Module, mods: Sequence[Module]) -> Optional[int]:
    for i, c in enumerate(mods):
        if c.dims == m.dims and find_isomorphism_indecomposable(c, m) is not None:
            return i
    return None


# -- enumeration of indecomposables ----------------------------------------------------

def _subspaces(f: Field, k: int, n: int):
    """All k-dimensional subspaces of F^n as k×n RREF matrices."""
    p = f.characteristic
    for pivots in itertools.combinations(range(n), k):
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, n) if j not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            mat = f.zeros(k, n)
            for i, c in enumerate(pivots):
                mat[i, c] = 1
            for (i, j), val in zip(free, vals):
                mat[i, j] = val
            yield mat


def _multisets(items: List[Tuple[int, int, int]], total: int, start: int = 0):
    """Multisets of (index, dim, max multiplicity) items with exact total dimension."""
    if total == 0:
        yield []
        return
    for i in range(start, len(items)):
        idx, d, cap = items[i]
        for mult in range(1, cap + 1):
            if mult * d > total:
                break
            for rest in _multisets(items, total - mult * d, i + 1):
                yield [(idx, mult)] + rest


def enumerate_indecomposables(category, dim_cap: int, budget: int = 200000) -> List[Module]:
    """Every indecomposable (up to iso) of total dimension ≤ ``dim_cap``.

    An indecomposable ``X`` of dimension ≥ 2 with a simple submodule ``S`` is a
    non-split extension of ``X/S`` by ``S``.  Writing ``X/S = ⊕ E_i^{m_i}``,
    the class can be normalised to have no zero block and, within each
    isotypic block, linearly independent components; up to ``Aut`` it is then
    determined by an ``m_i``-dimensional subspace of ``Ext¹(E_i, S)`` per
    block.  Realising all such classes, dimension by dimension, is complete.
    """
    from .homology import ext_group, realize_sum_extension

    f = category.field
    if not f.is_finite:
        raise FieldNotFinite("enumeration needs a finite field")
    if dim_cap < 1:
        raise ValueError("dim_cap must be at least 1")
    found: List[Module] = list(category.simples())
    ext_cache: Dict[Tuple[int, int], object] = {}

    def ext1(i, s):
        key = (i, s)
        if key not in ext_cache:
            ext_cache[key] = ext_group(found[i], found[s], 1)
        return ext_cache[key]

    n_simple = len(found)
    work = 0
    for d in range(2, dim_cap + 1):
        new: List[Module] = []
        for s in range(n_simple):
            items = []
            for i, mod in enumerate(found):
                if mod.total_dim <= d - 1:
                    e = ext1(i, s).dim
                    if e:
                        items.append((i, mod.total_dim, e))
            for ms in _multisets(items, d - 1):
                groups = [ext1(i, s) for i, _ in ms]
                choices = [list(_subspaces(f, mult, g.dim)) for (i, mult), g in zip(ms, groups)]
                for combo in itertools.product(*choices):
                    work += 1
                    if work > budget:
                        raise EnumerationBudgetExceeded(f"more than {budget} extensions at dim {d}")
                    comps = []
                    for (i, mult), g, sub in zip(ms, groups, combo):
                        for r in range(mult):
                            comps.append((g, sub[r]))
                    mid = realize_sum_extension(comps).middle
                    if not is_indecomposable(mid):
                        continue
                    if index_of_iso(mid, new) is None:
                        new.append(mid)
        found.extend(new)
    order = sorted(range(len(found)), key=lambda i: (found[i].total_dim, found[i].dims, i))
    return [found[i] for i in order]


def enumerate_bruteforce(algebra, dim_cap: int, max_matrices: int = 1 << 20) -> List[Module]:
    """Oracle: enumerate every representation matrix-by-matrix (tiny cases only)."""
    f = algebra.field
    p = f.characteristic
    found: List[Module] = []
    nv = len(algebra.vertices)
    for total in range(1, dim_cap + 1):
        vecs = [v for v in itertools.product(range(total + 1), repeat=nv) if sum(v) == total]
        vecs.sort()
        for dims in vecs:
            dim = dict(zip(algebra.vertices, dims))
            shapes = [(dim[a.target], dim[a.source]) for a in algebra.arrows]
            nentries = sum(r * c for r, c in shapes)
            if p ** nentries > max_matrices:
                raise EnumerationBudgetExceeded(f"{p ** nentries} representations of {dims}")
            for vals in itertools.product(range(p), repeat=nentries):
                action, o = {}, 0
                for a, (r, c) in zip(algebra.arrows, shapes):
                    action[a.name] = np.array(vals[o:o + r * c], dtype=np.int64).reshape(r, c)
                    o += r * c
                try:
                    m = Module(algebra, dims, action)
                except ValueError:
                    continue
                if is_indecomposable(m) and index_of_iso(m, found) is None:
                    found.append(m)
    return found
