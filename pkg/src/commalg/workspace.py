"""JSON workspaces: named algebras, splits, bimodules, functors, modules, triples, classes and pairs.

Every document is a UTF-8 JSON object with a ``kind`` and a ``name``.
Matrices are arrays of rows (integers over F_p, "a/b" strings over Q);
relations are arrays of arrow names in traversal order.  Besides the
documents, a few names are always available:

* algebras ``kA2``, ``L3``, ``N2``, ``Lambda4``, ``k`` (over the workspace field);
* ``id:<algebra>`` — the identity functor, i.e. the morphism category of the algebra;
* classes ``all:<category>``, ``proj:<category>``, ``inj:<category>`` and
  ``gp:<category>``;
* modules ``<category>/<tag>`` where the tag names an enumerated
  indecomposable, e.g. ``L3/S(2)`` or ``id:N2/P(A:1)``.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Dict, Optional

from . import algebra as alg_mod
from .algebra import MonomialAlgebra, Quiver
from .approximation import Ambient, CotorsionPair, ObjectClass, perp_left, perp_right
from .comma import Bimodule, CommaCategory, TensorFunctor, TriangularSplit, identity_functor, membership_BXY
from .linalg import Field
from .modules import Module, Morphism, direct_sum

WORKSPACE_ENV = "COMMALG_WORKSPACE"

BUILTIN_ALGEBRAS = {
    "kA2": alg_mod.kA2,
    "L3": alg_mod.L3,
    "N2": alg_mod.N2,
    "Lambda4": alg_mod.cm_free_example,
    "k": lambda p: alg_mod.field_algebra(p, name="k"),
}


class WorkspaceError(ValueError):
    pass


def _key(s: str):
    return tuple(x.strip() for x in s.split(","))


class Workspace:
    def __init__(self, root: Optional[str] = None, field: int = 2, cap: int = 6):
        self.root = Path(root) if root else None
        self.p = field
        self.cap = cap
        self.docs: Dict[str, dict] = {}
        self.algebras: Dict[str, MonomialAlgebra] = {}
        self.splits: Dict[str, TriangularSplit] = {}
        self.bimodules: Dict[str, Bimodule] = {}
        self.functors: Dict[str, TensorFunctor] = {}
        self.commas: Dict[str, CommaCategory] = {}
        self.modules: Dict[str, Module] = {}
        self.classes: Dict[str, ObjectClass] = {}
        self.pairs: Dict[str, CotorsionPair] = {}
        self._ambients: Dict[str, Ambient] = {}
        if self.root is not None:
            self.load(self.root)

    @classmethod
    def from_env(cls, root: Optional[str] = None, **kw) -> "Workspace":
        return cls(root or os.environ.get(WORKSPACE_ENV), **kw)

    # -- loading ---------------------------------------------------------------------------------
    def load(self, root: Path) -> None:
        if not root.is_dir():
            raise WorkspaceError(f"workspace {root} is not a directory")
        cfg = root / "workspace.json"
        if cfg.exists():
            meta = json.loads(cfg.read_text(encoding="utf-8"))
            self.p = int(meta.get("field", self.p))
            self.cap = int(meta.get("cap", self.cap))
        pending = []
        for path in sorted(root.glob("*.json")):
            if path.name == "workspace.json":
                continue
            doc = json.loads(path.read_text(encoding="utf-8"))
            pending.extend(doc if isinstance(doc, list) else [doc])
        # documents may reference each other in any order: retry until no progress
        while pending:
            left, errors = [], []
            for doc in pending:
                try:
                    self.define(doc)
                except KeyError as exc:
                    left.append(doc)
                    errors.append(f"{doc.get('name')}: unresolved {exc}")
            if len(left) == len(pending):
                raise WorkspaceError("; ".join(errors))
            pending = left

    def define(self, doc: dict):
        kind = doc.get("kind")
        name = doc.get("name")
        if not kind or not name:
            raise WorkspaceError("documents need a kind and a name")
        if name in self.docs:
            raise WorkspaceError(f"duplicate name {name}")
        handler = getattr(self, f"_define_{kind}", None)
        if handler is None:
            raise WorkspaceError(f"unknown document kind {kind!r}")
        obj = handler(doc)
        self.docs[name] = doc
        return obj

    def _define_algebra(self, doc):
        p = int(doc.get("field", self.p))
        if "builtin" in doc:
            a = BUILTIN_ALGEBRAS[doc["builtin"]](p)
            a.name = doc["name"]
        else:
            q = Quiver(doc["vertices"], [tuple(x) for x in doc.get("arrows", [])])
            a = MonomialAlgebra(q, Field(p), [list(r) for r in doc.get("relations", [])], name=doc["name"])
        self.algebras[doc["name"]] = a
        return a

    def _define_split(self, doc):
        lam = self.algebra(doc["algebra"])
        sp = TriangularSplit(lam, [str(v) for v in doc["left"]], name=doc["name"])
        sp.R.name, sp.S.name = f"{doc['name']}.R", f"{doc['name']}.S"
        self.splits[doc["name"]] = sp
        self.functors[doc["name"]] = sp.functor
        self.commas[doc["name"]] = sp.comma
        self.algebras[sp.R.name] = sp.R
        self.algebras[sp.S.name] = sp.S
        return sp

    def _define_bimodule(self, doc):
        if "regular" in doc:
            b = Bimodule.regular(self.algebra(doc["regular"]), name=doc["name"])
        else:
            R, S = self.algebra(doc["left_algebra"]), self.algebra(doc["right_algebra"])
            dims = {_key(k): v for k, v in doc.get("dims", {}).items()}
            b = Bimodule(R, S, dims, doc.get("left", {}), doc.get("right", {}), name=doc["name"])
        self.bimodules[doc["name"]] = b
        return b

    def _define_functor(self, doc):
        b = self.bimodules[doc["bimodule"]]
        t = TensorFunctor(b, name=doc["name"])
        self.functors[doc["name"]] = t
        self.commas[doc["name"]] = CommaCategory(t, name=doc["name"])
        return t

    def _define_module(self, doc):
        cat = self.category(doc["algebra"])
        if "builtin" in doc:
            m = self.ambient(doc["algebra"]).module(doc["builtin"])
            m = Module(cat, m.dims, m.action, name=doc["name"], check=False)
        else:
            dims = doc["dims"]
            m = Module(cat, {str(k): v for k, v in dims.items()} if isinstance(dims, dict) else dims,
                       doc.get("action", {}), name=doc["name"])
        self.modules[doc["name"]] = m
        return m

    def _define_triple(self, doc):
        comma = self.category(doc["category"])
        if not isinstance(comma, CommaCategory):
            raise WorkspaceError(f"{doc['category']} is not a comma category")
        if "module" in doc:
            sp = self.split_for(comma)
            if sp is None:
                raise WorkspaceError("building a triple from a module needs a split")
            t = sp.module_to_triple(self.module(doc["module"]))
            t.name = doc["name"]
        else:
            a = self._inline(doc["a"], comma.R)
            b = self._inline(doc["b"], comma.S)
            tb = comma.functor(b)
            phi = Morphism(tb, a, doc.get("phi", {}))
            t = comma.triple(a, b, phi, name=doc["name"])
        self.modules[doc["name"]] = t
        return t

    def _inline(self, spec, algebra):
        if isinstance(spec, str):
            m = self.module(spec)
            if m.algebra is not algebra:
                raise WorkspaceError(f"{spec} is not a module over {algebra.name}")
            return m
        dims = spec["dims"]
        return Module(algebra, {str(k): v for k, v in dims.items()} if isinstance(dims, dict) else dims,
                      spec.get("action", {}), name=spec.get("name"))

    def _define_class(self, doc):
        amb = self.ambient(doc["ambient"])
        flags = {k: bool(doc.get(k, False)) for k in ("asserted_extension_closed", "asserted_smd_closed")}
        special = doc.get("special")
        if special == "pXY":
            comma = amb.category
            x, y = self.cls(doc["x"]), self.cls(doc["y"])
            idx = [n for n, m in enumerate(amb.members) if membership_BXY(comma, m, x, y)]
            c = ObjectClass.of_indices(amb, idx, doc["name"], **flags)
        elif special:
            c = self.cls(f"{special}:{doc['ambient']}")
            c = ObjectClass(amb, c.generators, doc["name"], everything=c.everything, **flags)
        elif "generators" in doc:
            mods = []
            for g in doc["generators"]:
                parts = [amb.module(t) for t in g] if isinstance(g, list) else [self.module(g)]
                mods.append(direct_sum(parts).module if len(parts) > 1 else parts[0])
            c = ObjectClass.of_modules(amb, mods, doc["name"], **flags)
        else:
            c = ObjectClass.of_names(amb, doc.get("members", []), doc["name"], **flags)
        self.classes[doc["name"]] = c
        return c

    def _define_pair(self, doc):
        left = self.cls(doc["left"]) if "left" in doc else None
        right = self.cls(doc["right"]) if "right" in doc else None
        if left is None and right is None:
            raise WorkspaceError("a pair needs a left or a right class")
        pair = CotorsionPair(left or perp_left(right), right or perp_right(left))
        self.pairs[doc["name"]] = pair
        return pair

    def _define_report(self, doc):
        return doc

    # -- resolution ------------------------------------------------------------------------------
    def algebra(self, name: str) -> MonomialAlgebra:
        if name in self.algebras:
            return self.algebras[name]
        if name in BUILTIN_ALGEBRAS:
            a = BUILTIN_ALGEBRAS[name](self.p)
            self.algebras[name] = a
            return a
        raise KeyError(name)

    def category(self, name: str):
        if name in self.commas:
            return self.commas[name]
        if name.startswith("id:"):
            a = self.algebra(name[3:])
            t = identity_functor(a)
            t.name = name
            self.functors[name] = t
            self.commas[name] = CommaCategory(t, name=name)
            return self.commas[name]
        return self.algebra(name)

    def functor(self, name: str) -> TensorFunctor:
        if name not in self.functors:
            self.category(name)
        if name not in self.functors:
            raise KeyError(name)
        return self.functors[name]

    def split_for(self, category) -> Optional[TriangularSplit]:
        for sp in self.splits.values():
            if sp.comma is category or sp.lam is category:
                return sp
        return None

    def ambient(self, name: str, cap: Optional[int] = None) -> Ambient:
        cap = cap or self.cap
        key = f"{name}@{cap}"
        if key not in self._ambients:
            cat = self.category(name)
            sp = self.split_for(cat) if isinstance(cat, CommaCategory) else None
            if sp is not None:
                lam_amb = self.ambient(sp.lam.name, cap)
                self._ambients[key] = Ambient(
                    cat, cap, members=[sp.module_to_triple(m) for m in lam_amb.members], names=lam_amb.names,
                    injectives=[sp.module_to_triple(i) for i in sp.lam.injectives()], name=name)
            else:
                self._ambients[key] = Ambient(cat, cap, name=name)
        return self._ambients[key]

    def module(self, ref: str) -> Module:
        if ref in self.modules:
            return self.modules[ref]
        if "/" in ref:
            cat, tag = ref.split("/", 1)
            return self.ambient(cat).module(tag)
        raise KeyError(ref)

    def cls(self, ref: str) -> ObjectClass:
        if ref in self.classes:
            return self.classes[ref]
        if ":" in ref:
            kind, cat = ref.split(":", 1)
            amb = self.ambient(cat)
            if kind == "all":
                c = ObjectClass.everything_in(amb, f"mod {cat}")
            elif kind == "proj":
                c = ObjectClass.projectives(amb)
            elif kind == "inj":
                c = ObjectClass.injectives(amb)
            elif kind == "gp":
                from .gorenstein import gp_class

                c = gp_class(amb).cls
            else:
                raise KeyError(ref)
            self.classes[ref] = c
            return c
        raise KeyError(ref)

    def pair(self, ref: str) -> CotorsionPair:
        if ref in self.pairs:
            return self.pairs[ref]
        # a bare class stands for the pair it generates on the left
        c = self.cls(ref)
        return CotorsionPair(c, perp_right(c))

    def to_triple(self, m: Module, comma: Optional[CommaCategory] = None) -> Module:
        """Move a Λ-module into the comma category of its split (identity on triples)."""
        if isinstance(m.algebra, CommaCategory) and (comma is None or m.algebra is comma):
            return m
        for sp in self.splits.values():
            if sp.lam is m.algebra and (comma is None or sp.comma is comma):
                t = sp.module_to_triple(m)
                t.name = m.name
                return t
        raise WorkspaceError(f"{m.name} is not an object of the required comma category")

    def summary(self) -> dict:
        return {
            "root": str(self.root) if self.root else None,
            "field": self.p,
            "cap": self.cap,
            "documents": {k: v.get("kind") for k, v in self.docs.items()},
        }
