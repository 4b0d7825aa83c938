"""Bimodules, the tensor functor T = M ⊗_S −, and the comma category (T↓mod R).

An object of the comma category is a triple ``(A, B, φ: T(B) -> A)``.  Such
triples are exactly the representations of a quiver with vertices ``A:i``
(for R), ``B:j`` (for S), the arrows of R and S, and one arrow
``M:<label>: B:j -> A:i`` per basis element of ``e_i M e_j``, subject to the
relations of R and S and to the bimodule compatibilities.  Presenting the
category this way lets every generic algorithm of :mod:`commalg.modules` run
on triples unchanged; :class:`Triple` is the componentwise view.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .algebra import Arrow, MonomialAlgebra, field_algebra
from .homology import ShortExactSequence, resolution, tor_dims
from .modules import (
    Module,
    Morphism,
    cokernel,
    direct_sum,
    hom_space,
    is_projective,
    zero_module,
)


class NotTriangular(ValueError):
    pass


# -- bimodules -------------------------------------------------------------------------

class Bimodule:
    """An R-S-bimodule graded by pairs (R-vertex i, S-vertex j): ``M_ij = e_i M e_j``.

    ``left[r][j]`` is the action of the R-arrow ``r: u -> v`` as a map
    ``M_uj -> M_vj``; ``right[a][i]`` is the action of the S-arrow ``a: x -> y``
    as a map ``M_iy -> M_ix`` (``m ↦ m·a``).
    """

    def __init__(self, left_algebra, right_algebra, dims: Dict[Tuple[str, str], int],
                 left: Optional[dict] = None, right: Optional[dict] = None,
                 labels: Optional[Dict[Tuple[str, str], List[str]]] = None, name: Optional[str] = None,
                 check: bool = True):
        if left_algebra.field != right_algebra.field:
            raise ValueError("R and S must share the ground field")
        self.R, self.S = left_algebra, right_algebra
        self.field = left_algebra.field
        self.name = name or "M"
        f = self.field
        self.dims = {(i, j): int(dims.get((i, j), 0)) for i in self.R.vertices for j in self.S.vertices}
        left, right = left or {}, right or {}
        self.left: Dict[str, Dict[str, np.ndarray]] = {}
        for r in self.R.arrows:
            given = left.get(r.name, {})
            self.left[r.name] = {}
            for j in self.S.vertices:
                shape = (self.dims[(r.target, j)], self.dims[(r.source, j)])
                m = given.get(j)
                m = f.zeros(*shape) if m is None or np.size(m) == 0 else f.array(m)
                if m.shape != shape:
                    raise ValueError(f"left action of {r.name} at {j}: shape {m.shape}, expected {shape}")
                self.left[r.name][j] = m
        self.right: Dict[str, Dict[str, np.ndarray]] = {}
        for a in self.S.arrows:
            given = right.get(a.name, {})
            self.right[a.name] = {}
            for i in self.R.vertices:
                shape = (self.dims[(i, a.source)], self.dims[(i, a.target)])
                m = given.get(i)
                m = f.zeros(*shape) if m is None or np.size(m) == 0 else f.array(m)
                if m.shape != shape:
                    raise ValueError(f"right action of {a.name} at {i}: shape {m.shape}, expected {shape}")
                self.right[a.name][i] = m
        self.labels = {}
        for key, d in self.dims.items():
            given = (labels or {}).get(key)
            self.labels[key] = list(given) if given else [f"{key[0]}{key[1]}.{s}" for s in range(d)]
        if check:
            self.validate()

    def validate(self) -> None:
        f = self.field
        for r in self.R.arrows:
            for a in self.S.arrows:
                # both sides map M_{r.source, a.target} -> M_{r.target, a.source}
                lhs = f.matmul(self.left[r.name][a.source], self.right[a.name][r.source])
                rhs = f.matmul(self.right[a.name][r.target], self.left[r.name][a.target])
                if not np.array_equal(lhs, rhs):
                    raise ValueError(f"left action of {r.name} and right action of {a.name} do not commute")
        for rel in getattr(self.R, "relations", ()):
            for j in self.S.vertices:
                if np.any(self.left_path(rel, j)):
                    raise ValueError(f"R-relation {rel} does not annihilate M")
        for rel in getattr(self.S, "relations", ()):
            for i in self.R.vertices:
                if np.any(self.right_path(rel, i)):
                    raise ValueError(f"S-relation {rel} does not annihilate M")

    def left_path(self, arrows: Sequence[str], j: str) -> np.ndarray:
        f = self.field
        out = self.left[arrows[0]][j]
        for r in arrows[1:]:
            out = f.matmul(self.left[r][j], out)
        return out

    def right_path(self, arrows: Sequence[str], i: str) -> np.ndarray:
        """Right action of the path (traversal order): the last arrow acts first."""
        f = self.field
        out = self.right[arrows[-1]][i]
        for a in reversed(arrows[:-1]):
            out = f.matmul(self.right[a][i], out)
        return out

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def __repr__(self):
        return f"Bimodule({self.name}: {self.R.name}-{self.S.name}, dim {self.total_dim})"

    # -- constructors ------------------------------------------------------------------
    @classmethod
    def regular(cls, algebra: MonomialAlgebra, name: Optional[str] = None) -> "Bimodule":
        """``_S S_S``: tensoring with it is the identity functor."""
        return cls._paths(algebra, algebra, algebra, name=name or algebra.name)

    @classmethod
    def _paths(cls, lam: MonomialAlgebra, R: MonomialAlgebra, S: MonomialAlgebra, name: str) -> "Bimodule":
        """``e_R Λ e_S`` with basis the paths from S-vertices to R-vertices."""
        f = lam.field
        basis = {(i, j): lam.paths_between(j, i) for i in R.vertices for j in S.vertices}
        dims = {k: len(v) for k, v in basis.items()}
        index = {k: {p.arrows: n for n, p in enumerate(v)} for k, v in basis.items()}
        left = {}
        for r in R.arrows:
            left[r.name] = {}
            for j in S.vertices:
                src, tgt = basis[(r.source, j)], basis[(r.target, j)]
                m = f.zeros(len(tgt), len(src))
                for c, p in enumerate(src):
                    q = p.arrows + (r.name,)
                    if lam.is_nonzero(q):
                        m[index[(r.target, j)][q], c] = 1
                left[r.name][j] = m
        right = {}
        for a in S.arrows:
            right[a.name] = {}
            for i in R.vertices:
                src, tgt = basis[(i, a.target)], basis[(i, a.source)]
                m = f.zeros(len(tgt), len(src))
                for c, p in enumerate(src):
                    q = (a.name,) + p.arrows
                    if lam.is_nonzero(q):
                        m[index[(i, a.source)][q], c] = 1
                right[a.name][i] = m
        labels = {k: [str(p) for p in v] for k, v in basis.items()}
        return cls(R, S, dims, left, right, labels=labels, name=name)

    @classmethod
    def from_right_module(cls, m_right: Module, name: Optional[str] = None) -> "Bimodule":
        """A right S-module (module over ``opposite(S)``) as a k-S-bimodule."""
        S = m_right.algebra.opposite()
        k = field_algebra(S.field.characteristic, vertex="*")
        dims = {("*", j): m_right.dim(j) for j in S.vertices}
        right = {a.name: {"*": m_right.action[a.name]} for a in S.arrows}
        return cls(k, S, dims, {}, right, name=name or (m_right.name or "M"), check=False)

    @classmethod
    def zero(cls, R, S) -> "Bimodule":
        return cls(R, S, {}, name="0")

    # -- one-sided views -------------------------------------------------------------------
    def as_left_module(self) -> Module:
        """``_R M`` (forgetting the right structure)."""
        f = self.field
        dims = tuple(sum(self.dims[(i, j)] for j in self.S.vertices) for i in self.R.vertices)
        action = {r.name: f.block_diag([self.left[r.name][j] for j in self.S.vertices]) for r in self.R.arrows}
        return Module(self.R, dims, action, name=f"{self.name}_R", check=False)

    def as_right_module(self) -> Module:
        """``M_S`` as a module over ``opposite(S)``."""
        f = self.field
        op = self.S.opposite()
        dims = tuple(sum(self.dims[(i, j)] for i in self.R.vertices) for j in self.S.vertices)
        action = {a.name: f.block_diag([self.right[a.name][i] for i in self.R.vertices]) for a in self.S.arrows}
        return Module(op, dims, action, name=f"{self.name}_S", check=False)

    def to_dict(self) -> dict:
        f = self.field
        return {
            "kind": "bimodule",
            "name": self.name,
            "left_algebra": self.R.name,
            "right_algebra": self.S.name,
            "dims": [[i, j, d] for (i, j), d in self.dims.items() if d],
            "left": {r: {j: f.to_list(m) for j, m in d.items() if m.size} for r, d in self.left.items()},
            "right": {a: {i: f.to_list(m) for i, m in d.items() if m.size} for a, d in self.right.items()},
        }


# -- the tensor functor -------------------------------------------------------------------

@dataclass
class _TensorData:
    module: Module
    offsets: Dict[Tuple[str, str], int]  # column offset of M_ij ⊗ B_j inside F_i
    proj: Dict[str, np.ndarray]  # q_i: F_i ->> T(B)_i
    section: Dict[str, np.ndarray]  # right inverse of q_i


class TensorFunctor:
    """``T = M ⊗_S −: mod S -> mod R``."""

    def __init__(self, bimodule: Bimodule, name: Optional[str] = None):
        self.bimodule = bimodule
        self.R, self.S = bimodule.R, bimodule.S
        self.field = bimodule.field
        self.name = name or f"{bimodule.name}⊗-"

    def __repr__(self):
        return f"TensorFunctor({self.name})"

    def _data(self, b: Module) -> _TensorData:
        cache = b.__dict__.setdefault("_tensor_cache", {})
        key = id(self)
        if key in cache:
            return cache[key][1]
        f = self.field
        M = self.bimodule
        offsets, proj, section = {}, {}, {}
        for i in self.R.vertices:
            o = 0
            for j in self.S.vertices:
                offsets[(i, j)] = o
                o += M.dims[(i, j)] * b.dim(j)
            n = o
            rels = []
            for a in self.S.arrows:
                x, y = a.source, a.target
                rows_m = M.dims[(i, y)]
                cols = rows_m * b.dim(x)
                if cols == 0:
                    continue
                g = f.zeros(n, cols)
                mx = M.dims[(i, x)] * b.dim(x)
                if mx:
                    g[offsets[(i, x)]:offsets[(i, x)] + mx] = f.kron(M.right[a.name][i], f.eye(b.dim(x)))
                my = M.dims[(i, y)] * b.dim(y)
                if my:
                    blk = f.kron(f.eye(rows_m), b.action[a.name])
                    sl = slice(offsets[(i, y)], offsets[(i, y)] + my)
                    g[sl] = f.sub(g[sl], blk)
                rels.append(g)
            relmat = f.hstack(rels, n)
            if relmat.shape[1] and not la.is_zero(relmat):
                q = la.left_kernel(f, relmat)
            else:
                q = f.eye(n)
            proj[i] = q
            section[i] = la.right_inverse(f, q) if q.shape[0] else f.zeros(n, 0)
        dims = tuple(proj[i].shape[0] for i in self.R.vertices)
        action = {}
        for r in self.R.arrows:
            u, v = r.source, r.target
            lift = f.block_diag([f.kron(M.left[r.name][j], f.eye(b.dim(j))) for j in self.S.vertices])
            action[r.name] = f.mul(proj[v], lift, section[u]) if dims[self.R.vertex_index[v]] and \
                dims[self.R.vertex_index[u]] else f.zeros(proj[v].shape[0], proj[u].shape[0])
        tb = Module(self.R, dims, action, name=f"T({b.name})" if b.name else None, check=False)
        data = _TensorData(tb, offsets, proj, section)
        cache[key] = (self, data)
        return data

    def __call__(self, b: Module) -> Module:
        return self._data(b).module

    def universal_map(self, b: Module, i: str, j: str, s: int) -> np.ndarray:
        """``ι_m: B_j -> T(B)_i``, ``x ↦ m ⊗ x`` for the s-th basis element m of M_ij."""
        d = self._data(b)
        start = d.offsets[(i, j)] + s * b.dim(j)
        return d.proj[i][:, start:start + b.dim(j)].copy()

    def on_morphism(self, g: Morphism) -> Morphism:
        f = self.field
        src, tgt = self._data(g.source), self._data(g.target)
        M = self.bimodule
        maps = {}
        for i in self.R.vertices:
            big = f.block_diag([f.kron(f.eye(M.dims[(i, j)]), g.maps[j]) for j in self.S.vertices])
            if tgt.proj[i].shape[0] and src.section[i].shape[1]:
                maps[i] = f.mul(tgt.proj[i], big, src.section[i])
            else:
                maps[i] = f.zeros(tgt.proj[i].shape[0], src.section[i].shape[1])
        return Morphism(src.module, tgt.module, maps, check=False)

    def is_exact(self) -> bool:
        """Exact iff ``Tor_1(M, S_j) = 0`` for every simple S-module (M_S flat)."""
        return all(tor_dims(self, s, 1) == 0 for s in self.S.simples())

    def preserves_projectives(self) -> bool:
        return all(is_projective(self(self.S.projective(j))) for j in self.S.vertices)


def identity_functor(algebra: MonomialAlgebra) -> TensorFunctor:
    return TensorFunctor(Bimodule.regular(algebra), name=f"id_{algebra.name}")


# -- triples -------------------------------------------------------------------------------

@dataclass
class Triple:
    a: Module
    b: Module
    phi: Morphism

    def __repr__(self):
        return f"Triple(A={list(self.a.dims)}, B={list(self.b.dims)})"


def _av(i):
    return f"A:{i}"


def _bv(j):
    return f"B:{j}"


class CommaCategory:
    """``(T↓mod R)`` for ``T = M ⊗_S −``, presented as a bound quiver (see module doc)."""

    def __init__(self, functor: TensorFunctor, name: Optional[str] = None):
        self.functor = functor
        self.R, self.S = functor.R, functor.S
        self.bimodule = functor.bimodule
        self.field = functor.field
        self.name = name or f"({functor.name}↓{self.R.name})"
        M = self.bimodule
        self.vertices = tuple([_av(i) for i in self.R.vertices] + [_bv(j) for j in self.S.vertices])
        self.vertex_index = {v: n for n, v in enumerate(self.vertices)}
        arrows = [Arrow(f"A:{r.name}", _av(r.source), _av(r.target)) for r in self.R.arrows]
        arrows += [Arrow(f"B:{a.name}", _bv(a.source), _bv(a.target)) for a in self.S.arrows]
        self.m_arrows: Dict[Tuple[str, str, int], str] = {}
        seen = set()
        for i in self.R.vertices:
            for j in self.S.vertices:
                for s in range(M.dims[(i, j)]):
                    label = f"M:{M.labels[(i, j)][s]}"
                    if label in seen:
                        label = f"M:{i},{j},{s}"
                    seen.add(label)
                    self.m_arrows[(i, j, s)] = label
                    arrows.append(Arrow(label, _bv(j), _av(i)))
        self.arrows = tuple(arrows)

    def __repr__(self):
        return f"CommaCategory({self.name})"

    # -- presentation interface -------------------------------------------------------------
    def check_relations(self, m: Module) -> None:
        f = self.field
        M = self.bimodule
        for rel in getattr(self.R, "relations", ()):
            if np.any(_path(f, m, ["A:" + x for x in rel])):
                raise ValueError(f"R-relation {rel} does not hold")
        for rel in getattr(self.S, "relations", ()):
            if np.any(_path(f, m, ["B:" + x for x in rel])):
                raise ValueError(f"S-relation {rel} does not hold")
        for a in self.S.arrows:
            x, y = a.source, a.target
            for i in self.R.vertices:
                ra = M.right[a.name][i]
                for s in range(M.dims[(i, y)]):
                    lhs = f.matmul(m.action[self.m_arrows[(i, y, s)]], m.action["B:" + a.name])
                    rhs = f.zeros(*lhs.shape)
                    for t in range(M.dims[(i, x)]):
                        if ra[t, s]:
                            rhs = f.add(rhs, f.scale(ra[t, s], m.action[self.m_arrows[(i, x, t)]]))
                    if not np.array_equal(lhs, rhs):
                        raise ValueError(f"φ is not balanced for the S-arrow {a.name}")
        for r in self.R.arrows:
            u, v = r.source, r.target
            for j in self.S.vertices:
                lr = M.left[r.name][j]
                for s in range(M.dims[(u, j)]):
                    lhs = f.matmul(m.action["A:" + r.name], m.action[self.m_arrows[(u, j, s)]])
                    rhs = f.zeros(*lhs.shape)
                    for t in range(M.dims[(v, j)]):
                        if lr[t, s]:
                            rhs = f.add(rhs, f.scale(lr[t, s], m.action[self.m_arrows[(v, j, t)]]))
                    if not np.array_equal(lhs, rhs):
                        raise ValueError(f"φ is not R-linear for the R-arrow {r.name}")

    def projective(self, v: str) -> Module:
        cache = self.__dict__.setdefault("_projectives", {})
        if v not in cache:
            side, x = v.split(":", 1)
            if side == "A":
                t = self.p(self.R.projective(x), zero_module(self.S))
                t.name = f"p(P{x},0)"
            else:
                t = self.p(zero_module(self.R), self.S.projective(x))
                t.name = f"p(0,Q{x})"
            cache[v] = t
        return cache[v]

    def projective_generator(self, v: str) -> int:
        return 0

    def projective_map(self, v: str, target: Module, x: np.ndarray) -> Morphism:
        side, name = v.split(":", 1)
        t = self.components(target)
        src = self.projective(v)
        f = self.field
        if side == "A":
            g = _proj_map(self.R, name, t.a, x)
            return self.morphism(src, target, g.maps, {})
        g = _proj_map(self.S, name, t.b, x)
        st = self.components(src)
        tg = self.functor.on_morphism(g)
        amap = t.phi @ Morphism(st.a, t.phi.source, tg.maps, check=False)
        return self.morphism(src, target, amap.maps, g.maps)

    def simple(self, v: str) -> Module:
        dims = tuple(1 if w == v else 0 for w in self.vertices)
        return Module(self, dims, {}, name=f"S({v})", check=False)

    def simples(self) -> List[Module]:
        return [self.simple(v) for v in self.vertices]

    def projectives(self) -> List[Module]:
        return [self.projective(v) for v in self.vertices]

    def opposite(self):
        raise NotImplementedError("comma categories have no opposite presentation here")

    # -- triples ------------------------------------------------------------------------------
    def triple(self, a: Module, b: Module, phi: Optional[Morphism] = None, name: Optional[str] = None) -> Module:
        T = self.functor
        f = self.field
        tb = T(b)
        if phi is None:
            phi = Morphism(tb, a, {}, check=False)
        if phi.source.dims != tb.dims or phi.target.dims != a.dims:
            raise ValueError("φ must map T(B) to A")
        dims = tuple([a.dim(i) for i in self.R.vertices] + [b.dim(j) for j in self.S.vertices])
        action = {f"A:{r.name}": a.action[r.name] for r in self.R.arrows}
        action.update({f"B:{s.name}": b.action[s.name] for s in self.S.arrows})
        for (i, j, s), label in self.m_arrows.items():
            action[label] = f.matmul(phi.maps[i], T.universal_map(b, i, j, s)) if a.dim(i) and b.dim(j) \
                else f.zeros(a.dim(i), b.dim(j))
        return Module(self, dims, action, name=name)

    def components(self, m: Module) -> Triple:
        cache = m.__dict__.get("_triple")
        if cache is not None:
            return cache
        if m.algebra is not self:
            raise ValueError("module does not live in this comma category")
        f = self.field
        a = Module(self.R, tuple(m.dim(_av(i)) for i in self.R.vertices),
                   {r.name: m.action[f"A:{r.name}"] for r in self.R.arrows}, check=False)
        b = Module(self.S, tuple(m.dim(_bv(j)) for j in self.S.vertices),
                   {s.name: m.action[f"B:{s.name}"] for s in self.S.arrows}, check=False)
        T = self.functor
        data = T._data(b)
        maps = {}
        for i in self.R.vertices:
            blocks = []
            for j in self.S.vertices:
                for s in range(self.bimodule.dims[(i, j)]):
                    blocks.append(m.action[self.m_arrows[(i, j, s)]])
            big = f.hstack(blocks, a.dim(i))
            sec = data.section[i]
            maps[i] = f.matmul(big, sec) if big.size and sec.size else f.zeros(a.dim(i), sec.shape[1])
        t = Triple(a, b, Morphism(data.module, a, maps))
        m._triple = t
        return t

    def morphism(self, source: Module, target: Module, a_maps: dict, b_maps: dict) -> Morphism:
        maps = {_av(i): mat for i, mat in a_maps.items()}
        maps.update({_bv(j): mat for j, mat in b_maps.items()})
        return Morphism(source, target, maps)

    def morphism_components(self, g: Morphism) -> Tuple[Morphism, Morphism]:
        s, t = self.components(g.source), self.components(g.target)
        a = Morphism(s.a, t.a, {i: g.maps[_av(i)] for i in self.R.vertices}, check=False)
        b = Morphism(s.b, t.b, {j: g.maps[_bv(j)] for j in self.S.vertices}, check=False)
        return a, b

    # -- the functors p and q ------------------------------------------------------------------
    def p(self, a: Module, b: Module) -> Module:
        """``p(A, B) = (A ⊕ T(B), B, (0 1)ᵀ)``."""
        tb = self.functor(b)
        ds = direct_sum([a, tb], algebra=self.R)
        return self.triple(ds.module, b, ds.inclusions[1],
                           name=f"p({a.name or '?'},{b.name or '?'})")

    def p_morphism(self, g_a: Morphism, g_b: Morphism) -> Morphism:
        src, tgt = self.p(g_a.source, g_b.source), self.p(g_a.target, g_b.target)
        f = self.field
        tg = self.functor.on_morphism(g_b)
        amaps = {i: f.block_diag([g_a.maps[i], tg.maps[i]]) for i in self.R.vertices}
        return self.morphism(src, tgt, amaps, g_b.maps)

    def q(self, m: Module) -> Tuple[Module, Module]:
        t = self.components(m)
        return t.a, t.b


def _path(f, m: Module, arrows: Sequence[str]) -> np.ndarray:
    out = m.action[arrows[0]]
    for a in arrows[1:]:
        out = f.matmul(m.action[a], out)
    return out


def _proj_map(alg, v, target, x):
    return alg.projective_map(v, target, x)


# -- triangular matrix algebras ------------------------------------------------------------------

class TriangularSplit:
    """``Λ = (R M; 0 S)`` read off a vertex partition of a monomial algebra.

    R lives on ``r_vertices`` and must be "downstream": no arrow may run
    from an R-vertex to an S-vertex, so ``e_S Λ e_R = 0``.
    """

    def __init__(self, lam: MonomialAlgebra, r_vertices, name: Optional[str] = None):
        r = [v for v in lam.vertices if v in set(r_vertices)]
        s = [v for v in lam.vertices if v not in set(r_vertices)]
        unknown = set(r_vertices) - set(lam.vertices)
        if unknown:
            raise ValueError(f"unknown vertices {sorted(unknown)}")
        if not r or not s:
            raise ValueError("both sides of the split must be nonempty")
        for a in lam.arrows:
            if a.source in r and a.target in s:
                raise NotTriangular(f"arrow {a.name}: {a.source} -> {a.target} runs from the R-side to the S-side")
        self.lam = lam
        self.name = name or f"{lam.name}|{','.join(r)}"
        self.r_vertices, self.s_vertices = tuple(r), tuple(s)
        self.R = lam.induced(r, name=f"{lam.name}_R")
        self.S = lam.induced(s, name=f"{lam.name}_S")
        self.bimodule = Bimodule._paths(lam, self.R, self.S, name="M")
        self.functor = TensorFunctor(self.bimodule, name=f"M⊗_{self.S.name}-")
        self.comma = CommaCategory(self.functor, name=self.name)
        self.crossing = [a for a in lam.arrows if a.source in s and a.target in r]

    def __repr__(self):
        return f"TriangularSplit({self.lam.name}, R={list(self.r_vertices)}, S={list(self.s_vertices)})"

    def module_to_triple(self, m: Module) -> Module:
        if m.algebra is not self.lam:
            raise ValueError("module is not over the split algebra")
        c = self.comma
        action = {f"A:{a.name}": m.action[a.name] for a in self.R.arrows}
        action.update({f"B:{a.name}": m.action[a.name] for a in self.S.arrows})
        M = self.bimodule
        for i in self.r_vertices:
            for j in self.s_vertices:
                for s, p in enumerate(self.lam.paths_between(j, i)):
                    action[c.m_arrows[(i, j, s)]] = self.lam.path_action(m, p.arrows)
        dims = tuple([m.dim(i) for i in self.r_vertices] + [m.dim(j) for j in self.s_vertices])
        return Module(c, dims, action, name=m.name)

    def triple_to_module(self, t: Module) -> Module:
        c = self.comma
        action = {a.name: t.action[f"A:{a.name}"] for a in self.R.arrows}
        action.update({a.name: t.action[f"B:{a.name}"] for a in self.S.arrows})
        for a in self.crossing:
            s = [p.arrows for p in self.lam.paths_between(a.source, a.target)].index((a.name,))
            action[a.name] = t.action[c.m_arrows[(a.target, a.source, s)]]
        dims = {v: t.dim(_av(v)) for v in self.r_vertices}
        dims.update({v: t.dim(_bv(v)) for v in self.s_vertices})
        return Module(self.lam, dims, action, name=t.name)

    def morphism_to_triple(self, g: Morphism) -> Morphism:
        src, tgt = self.module_to_triple(g.source), self.module_to_triple(g.target)
        maps = {_av(i): g.maps[i] for i in self.r_vertices}
        maps.update({_bv(j): g.maps[j] for j in self.s_vertices})
        return Morphism(src, tgt, maps)

    def morphism_to_module(self, g: Morphism) -> Morphism:
        src, tgt = self.triple_to_module(g.source), self.triple_to_module(g.target)
        maps = {i: g.maps[_av(i)] for i in self.r_vertices}
        maps.update({j: g.maps[_bv(j)] for j in self.s_vertices})
        return Morphism(src, tgt, maps)

    def to_dict(self) -> dict:
        return {"kind": "split", "algebra": self.lam.name, "left": list(self.r_vertices)}


def split_triangular(lam: MonomialAlgebra, r_vertices) -> TriangularSplit:
    return TriangularSplit(lam, r_vertices)


# -- structure checks ----------------------------------------------------------------------------

@dataclass
class ProjectiveTripleVerdict:
    projective: bool
    b_projective: bool
    phi_monic: bool
    coker_projective: bool

    def __bool__(self):
        return self.projective


def is_projective_triple(comma: CommaCategory, t: Module) -> ProjectiveTripleVerdict:
    """``(A, B, φ)`` is projective iff B is projective, φ is monic and coker φ is projective."""
    tr = comma.components(t)
    bp = is_projective(tr.b)
    mono = tr.phi.is_mono()
    cp = is_projective(cokernel(tr.phi)[0])
    return ProjectiveTripleVerdict(bp and mono and cp, bp, mono, cp)


@dataclass
class YExactReport:
    exact: bool
    tor1: Dict[str, int]
    witness: Optional[ShortExactSequence] = None
    witness_name: Optional[str] = None
    tensored_left_map_rank: Optional[int] = None

    def __bool__(self):
        return self.exact


def check_Y_exact(functor: TensorFunctor, members: Sequence[Module], names: Optional[Sequence[str]] = None
                  ) -> YExactReport:
    """T is 𝒴-exact iff ``Tor_1(M, Y) = 0`` for every listed Y.

    On failure the witness is ``0 -> Ω¹Y -> P_0 -> Y -> 0``; applying T to it
    leaves the first map non-injective.
    """
    names = list(names) if names is not None else [m.name or f"Y{n}" for n, m in enumerate(members)]
    tors = {}
    witness = None
    wname = None
    wrank = None
    for y, nm in zip(members, names):
        t1 = tor_dims(functor, y, 1)
        tors[nm] = t1
        if t1 and witness is None:
            res = resolution(y)
            res.extend(1)
            omega, inc = res.syzygies[0]
            cover = res.covers[0]
            witness = ShortExactSequence(omega, cover.module, y, inc, cover.epi)
            wname = nm
            tmono = functor.on_morphism(inc)
            wrank = sum(tmono.ranks().values())
            assert wrank < functor(omega).total_dim, "Tor₁ ≠ 0 but T(Ω) -> T(P) is injective"
    return YExactReport(witness is None, tors, witness, wname, wrank)


def membership_BXY(comma: CommaCategory, t: Module, x_class, y_class) -> bool:
    """``t ∈ 𝔅^𝒳_𝒴``: B ∈ 𝒴, φ monic and coker φ ∈ 𝒳."""
    tr = comma.components(t)
    if not tr.phi.is_mono():
        return False
    if not y_class.contains(tr.b):
        return False
    return x_class.contains(cokernel(tr.phi)[0])
