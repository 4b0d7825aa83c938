"""Path algebras of quivers modulo monomial relations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .linalg import Field


class NotFiniteDimensional(Exception):
    pass


class NotMonomial(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A path in traversal order: ``arrows[0]`` is applied first."""

    start: str
    end: str
    arrows: tuple = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e{self.start}"
        # composition notation: last arrow written first
        return "".join(reversed(self.arrows)) if all(len(a) == 1 for a in self.arrows) else "*".join(reversed(self.arrows))


class Quiver:
    def __init__(self, vertices: Sequence[str], arrows: Iterable):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex names must be unique")
        arrs = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(str(a[0]), str(a[1]), str(a[2]))
            if a.source not in self.vertices or a.target not in self.vertices:
                raise ValueError(f"arrow {a.name} has an unknown endpoint")
            arrs.append(a)
        self.arrows = tuple(arrs)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        if set(names) & set(self.vertices):
            raise ValueError("arrow and vertex names must differ")
        self.arrow = {a.name: a for a in self.arrows}
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}

    def arrows_from(self, v: str) -> list:
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v: str) -> list:
        return [a for a in self.arrows if a.target == v]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def induced(self, vertices: Iterable[str]) -> "Quiver":
        keep = [v for v in self.vertices if v in set(vertices)]
        return Quiver(keep, [a for a in self.arrows if a.source in keep and a.target in keep])


class MonomialAlgebra:
    """kQ/I with I generated by paths (each of length at least 2).

    Relations are arrow-name sequences in traversal order, so the composition
    ``βα`` ("α then β") is written ``["α", "β"]``.
    """

    def __init__(self, quiver: Quiver, field: Field, relations: Iterable[Sequence[str]] = (),
                 name: Optional[str] = None, dim_cap: int = 256):
        self.quiver = quiver
        self.field = field if isinstance(field, Field) else Field(int(field))
        self.name = name or "A"
        self.dim_cap = dim_cap
        rels = []
        for r in relations:
            if isinstance(r, str) or any(not isinstance(x, str) for x in r):
                raise NotMonomial(f"relation {r!r} is not a list of arrow names")
            r = tuple(r)
            if len(r) < 2:
                raise ValueError(f"relation {r} must have length at least 2")
            for x in r:
                if x not in quiver.arrow:
                    raise ValueError(f"relation {r} uses unknown arrow {x}")
            for x, y in zip(r, r[1:]):
                if quiver.arrow[x].target != quiver.arrow[y].source:
                    raise ValueError(f"relation {r} is not a composable path")
            rels.append(r)
        self.relations = tuple(rels)
        self.path_basis  # forces the finite-dimensionality check

    # -- presentation interface used by modules ------------------------------
    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    @property
    def vertex_index(self):
        return self.quiver.vertex_index

    def __repr__(self):
        return f"MonomialAlgebra({self.name}, dim={self.dimension}, {self.field})"

    # -- paths ---------------------------------------------------------------
    def is_nonzero(self, arrows: Sequence[str]) -> bool:
        n = len(arrows)
        for r in self.relations:
            k = len(r)
            for i in range(n - k + 1):
                if tuple(arrows[i:i + k]) == r:
                    return False
        return True

    def _ends_with_relation(self, arrows: tuple) -> bool:
        return any(len(arrows) >= len(r) and arrows[-len(r):] == r for r in self.relations)

    @cached_property
    def path_basis(self) -> tuple:
        trivial = [Path(v, v, ()) for v in self.vertices]
        current = [(v, ()) for v in self.vertices]
        max_len = max(1, len(self.arrows)) * self.dim_cap
        length = 0
        longer = []
        while True:
            nxt = []
            for start, arrows in current:
                end = self.quiver.arrow[arrows[-1]].target if arrows else start
                for a in self.quiver.arrows_from(end):
                    cand = arrows + (a.name,)
                    if not self._ends_with_relation(cand):
                        nxt.append((start, cand))
            if not nxt:
                break
            length += 1
            if length > max_len:
                raise NotFiniteDimensional(
                    f"{self.name}: nonzero paths of length > {max_len}; the algebra is not finite dimensional")
            nxt.sort(key=lambda sa: (self.vertex_index[sa[0]], sa[1]))
            longer.extend(Path(s, self.quiver.arrow[a[-1]].target, a) for s, a in nxt)
            current = nxt
        longer.sort(key=lambda p: (p.length, p.arrows, self.vertex_index[p.start]))
        return tuple(trivial + longer)

    @property
    def dimension(self) -> int:
        return len(self.path_basis)

    def paths_from(self, v: str) -> list:
        return [p for p in self.path_basis if p.start == v]

    def paths_to(self, v: str) -> list:
        return [p for p in self.path_basis if p.end == v]

    def paths_between(self, u: str, v: str) -> list:
        return [p for p in self.path_basis if p.start == u and p.end == v]

    def concat(self, p: Path, q: Path) -> Optional[Path]:
        """``p`` then ``q``; None when the product is zero."""
        if p.end != q.start:
            return None
        arrows = p.arrows + q.arrows
        if not self.is_nonzero(arrows):
            return None
        return Path(p.start, q.end, arrows)

    def path_action(self, module, arrows: Sequence[str]) -> np.ndarray:
        """Matrix by which a path acts on ``module`` (from start to end vertex)."""
        f = self.field
        if not arrows:
            raise ValueError("use the identity for trivial paths")
        out = module.action[arrows[0]]
        for a in arrows[1:]:
            out = f.matmul(module.action[a], out)
        return out

    def check_relations(self, module) -> None:
        for r in self.relations:
            m = self.path_action(module, r)
            if np.any(m):
                raise ValueError(f"relation {'.'.join(r)} does not act as zero on the module")

    # -- derived algebras ------------------------------------------------------
    def opposite(self) -> "MonomialAlgebra":
        """Cached, so that ``a.opposite().opposite() is a``."""
        op = self.__dict__.get("_opposite")
        if op is None:
            name = self.name[:-3] if self.name.endswith("^op") else self.name + "^op"
            op = MonomialAlgebra(self.quiver.opposite(), self.field,
                                 [tuple(reversed(r)) for r in self.relations], name=name,
                                 dim_cap=self.dim_cap)
            op._opposite = self
            self._opposite = op
        return op

    def induced(self, vertices: Iterable[str], name: Optional[str] = None) -> "MonomialAlgebra":
        q = self.quiver.induced(vertices)
        names = set(q.arrow)
        rels = [r for r in self.relations if set(r) <= names]
        return MonomialAlgebra(q, self.field, rels, name=name or f"{self.name}|{','.join(q.vertices)}",
                               dim_cap=self.dim_cap)

    # -- standard modules --------------------------------------------------------
    def projective(self, v: str):
        """P(v) = paths starting at v; the trivial path is the generator."""
        cache = self.__dict__.setdefault("_projectives", {})
        if v not in cache:
            cache[v] = _projective_module(self, v)
        return cache[v]

    def projective_map(self, v: str, target, x: np.ndarray):
        """The morphism P(v) -> target sending the generator e_v to ``x``."""
        from .modules import Morphism

        f = self.field
        x = x.reshape(-1, 1)
        maps = {}
        for w in self.vertices:
            cols = []
            for p in self.paths_between(v, w):
                cols.append(x if not p.arrows else f.matmul(self.path_action(target, p.arrows), x))
            maps[w] = f.hstack(cols, target.dim(w))
        return Morphism(self.projective(v), target, maps)

    def projective_generator(self, v: str) -> int:
        return 0

    def injective(self, v: str):
        from .modules import dual

        return dual(self.opposite().projective(v))

    def simple(self, v: str):
        from .modules import Module

        dims = tuple(1 if w == v else 0 for w in self.vertices)
        return Module(self, dims, {}, name=f"S({v})")

    def simples(self) -> list:
        return [self.simple(v) for v in self.vertices]

    def projectives(self) -> list:
        return [self.projective(v) for v in self.vertices]

    def injectives(self) -> list:
        return [self.injective(v) for v in self.vertices]

    def regular(self):
        from .modules import direct_sum

        return direct_sum(self.projectives())[0]

    def to_dict(self) -> dict:
        return {
            "kind": "algebra",
            "name": self.name,
            "field": self.field.characteristic,
            "vertices": list(self.vertices),
            "arrows": [[a.name, a.source, a.target] for a in self.arrows],
            "relations": [list(r) for r in self.relations],
        }


def _projective_module(alg: MonomialAlgebra, v: str):
    from .modules import Module

    f = alg.field
    basis = {w: [p for p in alg.paths_from(v) if p.end == w] for w in alg.vertices}
    dims = tuple(len(basis[w]) for w in alg.vertices)
    action = {}
    for a in alg.arrows:
        src, tgt = basis[a.source], basis[a.target]
        m = f.zeros(len(tgt), len(src))
        index = {p.arrows: i for i, p in enumerate(tgt)}
        for j, p in enumerate(src):
            arrows = p.arrows + (a.name,)
            if alg.is_nonzero(arrows):
                m[index[arrows], j] = 1
        action[a.name] = m
    mod = Module(alg, dims, action, name=f"P({v})")
    mod.path_labels = {w: [str(p) for p in basis[w]] for w in alg.vertices}
    return mod


def monomial_algebra(vertices, arrows, relations=(), p: int = 2, name: Optional[str] = None) -> MonomialAlgebra:
    return MonomialAlgebra(Quiver(vertices, arrows), Field(p), relations, name=name)


# Small algebras used throughout the tests, scripts and the bundled workspaces.

def kA2(p: int = 2) -> MonomialAlgebra:
    """2 -α-> 1, no relations."""
    return monomial_algebra(["1", "2"], [("α", "2", "1")], p=p, name="kA2")


def L3(p: int = 2) -> MonomialAlgebra:
    """3 -α-> 2 -β-> 1 with βα = 0."""
    return monomial_algebra(["1", "2", "3"], [("α", "3", "2"), ("β", "2", "1")], [("α", "β")],
                            p=p, name="L3")


def N2(p: int = 2) -> MonomialAlgebra:
    """k[x]/(x²)."""
    return monomial_algebra(["1"], [("x", "1", "1")], [("x", "x")], p=p, name="N2")


def field_algebra(p: int = 2, vertex: str = "1", name: str = "k") -> MonomialAlgebra:
    return monomial_algebra([vertex], [], p=p, name=name)


def cm_free_example(p: int = 2) -> MonomialAlgebra:
    """3 -β-> 2 -α-> 1 with a loop x at 2 and I = <x², αx, αβ, xβ>."""
    return monomial_algebra(
        ["1", "2", "3"],
        [("β", "3", "2"), ("x", "2", "2"), ("α", "2", "1")],
        [("x", "x"), ("x", "α"), ("β", "α"), ("β", "x")],
        p=p, name="Lambda4",
    )
