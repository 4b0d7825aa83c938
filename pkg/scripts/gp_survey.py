#!/usr/bin/env python3
"""Survey Gorenstein projectives over the bundled algebras and morphism categories.

For every category prints the number of enumerated indecomposables, of
projectives and of Gorenstein projectives, whether GP = proj (CM-free), and
how many verdicts stayed undecided within the bound.  Then prints the
compatibility report of the split of Lambda4 at vertex 1 and of id:N2.
"""

from __future__ import annotations

import argparse
import json

from commalg import algebra as alg
from commalg.approximation import Ambient, ObjectClass
from commalg.comma import CommaCategory, TriangularSplit, identity_functor
from commalg.gorenstein import check_compatibility, gp_class

ALGEBRAS = {"kA2": alg.kA2, "L3": alg.L3, "N2": alg.N2, "Lambda4": alg.cm_free_example}


def ambients(p, cap, comma_cap):
    for name, make in ALGEBRAS.items():
        yield Ambient(make(p), cap, name=name)
    for name in ("kA2", "N2"):
        comma = CommaCategory(identity_functor(ALGEBRAS[name](p)), name=f"id:{name}")
        yield Ambient(comma, comma_cap, name=f"id:{name}")


def survey_row(amb, bound):
    rep = gp_class(amb, bound=bound)
    proj = ObjectClass.projectives(amb)
    return {"category": amb.name, "indecomposables": len(amb.members), "projectives": len(proj.support),
            "gp": len(rep.cls.support), "cm_free": rep.cls.support == proj.support,
            "undecided": list(rep.undecided), "gp_members": rep.cls.member_names()}


def compat_rows(p, cap, bound):
    lam = alg.cm_free_example(p)
    sp = TriangularSplit(lam, ["1"], name="Lambda4|1")
    n2 = alg.N2(p)
    cases = [(sp.name, sp.functor, sp.R, sp.S), ("id:N2", identity_functor(n2), n2, n2)]
    for name, functor, r, s in cases:
        rep = check_compatibility(functor, Ambient(r, cap, name=f"{name}.R"), Ambient(s, cap, name=f"{name}.S"),
                                  bound=bound)
        yield name, rep


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--field", type=int, default=2)
    ap.add_argument("--cap", type=int, default=6)
    ap.add_argument("--comma-cap", type=int, default=4)
    ap.add_argument("--bound", type=int, default=8)
    ap.add_argument("--format", choices=["text", "json"], default="text")
    return ap.parse_args()


def main() -> int:
    a = parse_args()
    rows = [survey_row(amb, a.bound) for amb in ambients(a.field, a.cap, a.comma_cap)]
    compat = list(compat_rows(a.field, a.cap, a.bound))
    if a.format == "json":
        print(json.dumps({"gp": rows, "compatibility": {name: rep.to_dict() for name, rep in compat}}, indent=2, ensure_ascii=False, default=str))
        return 0
    print(f"{'category':<10} {'indec':>5} {'proj':>5} {'GP':>4}  CM-free  undecided")
    for r in rows:
        print(f"{r['category']:<10} {r['indecomposables']:>5} {r['projectives']:>5} {r['gp']:>4}  "
              f"{str(r['cm_free']):<7}  {len(r['undecided'])}")
    for name, rep in compat:
        print(f"\n{name}: compatible {rep.compatible}, weak compatible {rep.weak_compatible}")
        for key in ("c1", "c2", "w1"):
            cond = getattr(rep, key)
            print(f"  {key.upper()}: {cond.holds} ({cond.method})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
