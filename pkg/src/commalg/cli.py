"""Command line workbench over a JSON workspace.

Exit codes: 0 success, 1 mathematical negative (with certificate),
2 precondition failure, 3 budget exceeded, 4 input or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from .algebra import NotFiniteDimensional, NotMonomial
from .approximation import (
    ApproximationUndecided,
    ClosureBudgetExceeded,
    IterationCapExceeded,
    NoSpecialApproximation,
    ObjectClass,
    PreconditionFailed,
    PreconditionYExact,
    check_cotorsion_pair,
    check_frobenius,
    extension_closure,
    perp_left,
    perp_right,
    special_precover,
    special_preenvelope,
    transfer_precover_comma,
    transfer_preenvelope_comma,
)
from .comma import CommaCategory, NotTriangular, TriangularSplit, check_Y_exact
from .gorenstein import (
    NotCompatible,
    check_compatibility,
    gp_class,
    gp_precover_comma,
    is_gorenstein_projective,
)
from .homology import ext_group
from .modules import DecompositionBudgetExceeded, EnumerationBudgetExceeded, FieldNotFinite, IsoUndecided
from .workspace import Workspace, WorkspaceError

EXIT_OK, EXIT_NEGATIVE, EXIT_PRECONDITION, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3, 4
STATUS = {0: "ok", 1: "negative", 2: "precondition", 3: "budget", 4: "input-error"}


class Outcome:
    """A command result: exit code, JSON-able payload and text lines."""

    def __init__(self, code: int, result: dict, lines: List[str]):
        self.code, self.result, self.lines = code, result, lines


def _names(c: ObjectClass) -> str:
    return "{" + ", ".join(c.member_names()) + "}"


def _seq(ses) -> str:
    return f"0 -> {ses.left.name or list(ses.left.dims)} -> {ses.middle.name or list(ses.middle.dims)} " \
           f"-> {ses.right.name or list(ses.right.dims)} -> 0"


def _dims(m) -> list:
    return list(m.dims)


# -- commands -----------------------------------------------------------------------------------

def cmd_define(ws: Workspace, a) -> Outcome:
    doc = json.loads(Path(a.file).read_text(encoding="utf-8"))
    if isinstance(doc, dict) and doc.get("kind") == "report":
        return _replay(ws, doc, a)
    docs = doc if isinstance(doc, list) else [doc]
    out = []
    for d in docs:
        obj = ws.define(d)
        out.append({"name": d["name"], "kind": d["kind"], "object": repr(obj)})
    return Outcome(EXIT_OK, {"defined": out}, [f"defined {d['kind']} {d['name']}: {d['object']}" for d in out])


def _replay(ws: Workspace, doc: dict, a) -> Outcome:
    argv = list(doc["argv"]) + ["--format", "json"]
    ns = build_parser().parse_args(argv)
    again = _execute(ws, ns)
    report = make_report(ns, again)
    same = report["result"] == doc["result"] and report["exit_code"] == doc["exit_code"]
    lines = [f"replayed `{' '.join(doc['argv'])}`: " + ("identical certificates" if same else "MISMATCH")]
    return Outcome(EXIT_OK if same else EXIT_INPUT, {"replayed": doc["argv"], "identical": same}, lines)


def cmd_indec(ws, a) -> Outcome:
    amb = ws.ambient(a.category, a.cap)
    rows = [{"name": n, "dims": _dims(m)} for n, m in zip(amb.names, amb.members)]
    lines = [f"{len(rows)} indecomposables of {a.category} up to dimension {amb.cap}:"]
    lines += [f"  {r['name']:<16} {r['dims']}" for r in rows]
    return Outcome(EXIT_OK, {"category": a.category, "cap": amb.cap, "indecomposables": rows}, lines)


def cmd_ext(ws, a) -> Outcome:
    m, n = ws.module(a.m), ws.module(a.n)
    if m.algebra is not n.algebra:
        n = ws.to_triple(n, m.algebra) if isinstance(m.algebra, CommaCategory) else n
        m = ws.to_triple(m, n.algebra) if isinstance(n.algebra, CommaCategory) else m
    g = ext_group(m, n, a.degree)
    res = {"source": a.m, "target": a.n, "degree": a.degree, "dimension": g.dim,
           "cocycles": [g.cocycle([1 if i == j else 0 for i in range(g.dim)]).to_dict() for j in range(g.dim)]}
    return Outcome(EXIT_OK, res, [f"dim Ext^{a.degree}({a.m}, {a.n}) = {g.dim}"])


def cmd_perp(ws, a) -> Outcome:
    c = ws.cls(a.cls)
    p = perp_left(c) if a.left else perp_right(c)
    label = f"^⊥{a.cls}" if a.left else f"{a.cls}^⊥"
    res = {"class": a.cls, "side": "left" if a.left else "right", "members": p.member_names(),
           "scope": f"indecomposables of {c.ambient.name} up to dimension {c.ambient.cap}"}
    return Outcome(EXIT_OK, res, [f"{label} = {_names(p)}"])


def cmd_closure(ws, a) -> Outcome:
    c = ws.cls(a.cls)
    cl = extension_closure(c, budget=a.budget)
    res = {"class": a.cls, "members": cl.member_names(), "cap": c.ambient.cap}
    return Outcome(EXIT_OK, res, [f"extension closure of {a.cls} = {_names(cl)} (objects up to dimension {c.ambient.cap})"])


def cmd_split(ws, a) -> Outcome:
    lam = ws.algebra(a.algebra)
    sp = TriangularSplit(lam, [v.strip() for v in a.left.split(",")])
    m = sp.bimodule
    res = {"algebra": a.algebra, "R": sp.R.to_dict(), "S": sp.S.to_dict(),
           "M": {f"{i},{j}": m.labels[(i, j)] for (i, j), d in m.dims.items() if d},
           "M_dim": m.total_dim}
    lines = [f"{a.algebra} = (R M; 0 S) with R on {list(sp.r_vertices)} (dim {sp.R.dimension}), "
             f"S on {list(sp.s_vertices)} (dim {sp.S.dimension}), dim M = {m.total_dim}",
             "M basis: " + ", ".join(f"{lbl} in e{i}Me{j}" for (i, j), ls in m.labels.items() for lbl in ls)]
    return Outcome(EXIT_OK, res, lines)


def _split_named(ws, name: Optional[str], m) -> TriangularSplit:
    if name:
        return ws.splits[name]
    sp = ws.split_for(m.algebra)
    if sp is None:
        raise WorkspaceError("no split applies; pass --split")
    return sp


def cmd_to_triple(ws, a) -> Outcome:
    m = ws.module(a.module)
    sp = _split_named(ws, a.split, m)
    t = sp.module_to_triple(m)
    tr = sp.comma.components(t)
    res = {"A": tr.a.to_dict(), "B": tr.b.to_dict(), "phi": tr.phi.to_dict(), "phi_monic": tr.phi.is_mono()}
    return Outcome(EXIT_OK, res, [f"{a.module} -> (A {_dims(tr.a)}, B {_dims(tr.b)}, φ {'monic' if tr.phi.is_mono() else 'not monic'})"])


def cmd_to_module(ws, a) -> Outcome:
    t = ws.module(a.triple)
    sp = _split_named(ws, a.split, t)
    m = sp.triple_to_module(t)
    return Outcome(EXIT_OK, {"module": m.to_dict()}, [f"{a.triple} -> {sp.lam.name}-module with dims {_dims(m)}"])


def cmd_yexact(ws, a) -> Outcome:
    T = ws.functor(a.functor)
    c = ws.cls(a.cls)
    rep = check_Y_exact(T, c.support_modules(), [c.ambient.names[i] for i in c.support])
    res = {"functor": a.functor, "class": a.cls, "exact": rep.exact, "tor1": rep.tor1}
    lines = [f"T = {a.functor} is {'' if rep.exact else 'NOT '}{a.cls}-exact",
             "Tor_1: " + ", ".join(f"{k}: {v}" for k, v in rep.tor1.items())]
    if not rep.exact:
        w = rep.witness
        res["witness"] = {"module": rep.witness_name, "left": _dims(w.left), "middle": _dims(w.middle),
                          "right": _dims(w.right), "mono": w.mono.to_dict(),
                          "tensored_left_map_rank": rep.tensored_left_map_rank}
        lines.append(f"witness: {_seq(w)}; T of the first map has rank {rep.tensored_left_map_rank}")
    return Outcome(EXIT_OK if rep.exact else EXIT_NEGATIVE, res, lines)


def cmd_pair_check(ws, a) -> Outcome:
    from .approximation import CotorsionPair

    pair = CotorsionPair(ws.cls(a.left), ws.cls(a.right))
    rep = check_cotorsion_pair(pair, bound=a.bound, completeness=a.complete, iter_cap=a.iter)
    lines = [f"cotorsion pair: {'yes' if rep.is_pair else 'NO'} ({rep.scope})",
             f"  {a.right} = {a.left}^⊥: {rep.right_is_perp}" +
             (f" (missing {rep.right_missing}, extra {rep.right_extra})" if not rep.right_is_perp else ""),
             f"  {a.left} = ^⊥{a.right}: {rep.left_is_perp}" +
             (f" (missing {rep.left_missing}, extra {rep.left_extra})" if not rep.left_is_perp else ""),
             f"  hereditary (Ext^1..{a.bound}): {rep.hereditary}",
             f"  resolving: {rep.resolving}; coresolving: {rep.coresolving}"]
    if a.complete:
        lines.append(f"  complete: {rep.complete} {rep.completeness_failures or ''}")
    return Outcome(EXIT_OK if rep.is_pair else EXIT_NEGATIVE, rep.to_dict(), lines)


def _approx_lines(r) -> List[str]:
    return [f"special {r.kind} ({r.route}): {_seq(r.ses)}",
            "certificates: " + ", ".join(f"{k}={v}" for k, v in r.certificates.items())]


def _target_in(ws, ref, c):
    m = ws.module(ref)
    cat = c.ambient.category
    if m.algebra is not cat and isinstance(cat, CommaCategory):
        m = ws.to_triple(m, cat)
    return m


def cmd_precover(ws, a) -> Outcome:
    c = ws.cls(a.cls)
    r = special_precover(_target_in(ws, a.target, c), c, iter_cap=a.iter)
    return Outcome(EXIT_OK, r.to_dict(), _approx_lines(r))


def cmd_preenvelope(ws, a) -> Outcome:
    c = ws.cls(a.cls)
    r = special_preenvelope(_target_in(ws, a.target, c), c, iter_cap=a.iter)
    return Outcome(EXIT_OK, r.to_dict(), _approx_lines(r))


def cmd_transfer(ws, a) -> Outcome:
    comma = ws.category(a.functor)
    t = ws.to_triple(ws.module(a.triple), comma)
    if a.mode == "precover":
        r = transfer_precover_comma(t, comma, ws.pair(a.x).left, ws.pair(a.y).left, iter_cap=a.iter)
    else:
        r = transfer_preenvelope_comma(t, comma, ws.pair(a.x), ws.pair(a.y), iter_cap=a.iter)
    return Outcome(EXIT_OK, r.to_dict(), _approx_lines(r))


def cmd_gp(ws, a) -> Outcome:
    m = ws.module(a.module)
    v = is_gorenstein_projective(m, a.bound)
    lines = [f"{a.module}: {v.label()}", f"certificate: {json.dumps(v.certificate, ensure_ascii=False)}"]
    return Outcome(EXIT_NEGATIVE if v.refuted else EXIT_OK, v.to_dict(), lines)


def cmd_gp_class(ws, a) -> Outcome:
    rep = gp_class(ws.ambient(a.category, a.cap), a.bound)
    lines = [f"GP({a.category}) = {_names(rep.cls)}"]
    lines += [f"  {k:<16} {v.label()}" for k, v in rep.verdicts.items()]
    if rep.undecided:
        lines.append(f"undecided (not included): {rep.undecided}")
    return Outcome(EXIT_OK, rep.to_dict(), lines)


def _side_ambient(ws, algebra):
    for nm, x in ws.algebras.items():
        if x is algebra:
            return ws.ambient(nm)
    ws.algebras[algebra.name] = algebra
    return ws.ambient(algebra.name)


def cmd_compat(ws, a) -> Outcome:
    T = ws.functor(a.functor)
    rep = check_compatibility(T, _side_ambient(ws, T.R), _side_ambient(ws, T.S), a.bound)
    lines = [f"C1: {rep.c1.holds} ({rep.c1.method})", f"C2: {rep.c2.holds} ({rep.c2.method})",
             f"W1: {rep.w1.holds} ({rep.w1.method})",
             f"compatible: {rep.compatible}; weak compatible: {rep.weak_compatible}"]
    w = rep.c1.detail.get("witness")
    if w:
        lines.append(f"C1 witness: complex from {w['module']}, T(Q•) = {w['tensored']['text']}")
    return Outcome(EXIT_OK if rep.compatible else EXIT_NEGATIVE, rep.to_dict(), lines)


def cmd_gp_precover(ws, a) -> Outcome:
    comma = ws.category(a.functor)
    T = comma.functor
    ra, sa = _side_ambient(ws, T.R), _side_ambient(ws, T.S)
    rep = check_compatibility(T, ra, sa, a.bound)
    gr, gs = gp_class(ra, a.bound).cls, gp_class(sa, a.bound).cls
    t = ws.to_triple(ws.module(a.triple), comma)
    r = gp_precover_comma(comma, t, gr, gs, rep, iter_cap=a.iter)
    return Outcome(EXIT_OK, r.to_dict(), _approx_lines(r))


def cmd_frobenius(ws, a) -> Outcome:
    rep = check_frobenius(ws.ambient(a.functor, a.cap))
    lines = [f"left side (⟨p(mod R, mod S)⟩ Frobenius): {rep.left_side}",
             f"right side (R, S self-injective, T preserves projectives): {rep.right_side}",
             f"agree: {rep.agree}"]
    return Outcome(EXIT_OK if rep.agree else EXIT_NEGATIVE, rep.to_dict(), lines)


COMMANDS: Dict[str, Callable] = {
    "define": cmd_define, "indec": cmd_indec, "ext": cmd_ext, "perp": cmd_perp, "closure": cmd_closure,
    "split": cmd_split, "to-triple": cmd_to_triple, "to-module": cmd_to_module, "yexact": cmd_yexact,
    "pair-check": cmd_pair_check, "precover": cmd_precover, "preenvelope": cmd_preenvelope,
    "transfer": cmd_transfer, "gp": cmd_gp, "gp-class": cmd_gp_class, "compat": cmd_compat,
    "gp-precover": cmd_gp_precover, "frobenius": cmd_frobenius,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workspace", "-w", help="workspace directory (default: $COMMALG_WORKSPACE)")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--cap", type=int, default=None, help="enumeration dimension cap (default 6)")
    common.add_argument("--bound", type=int, default=8, help="homological degree bound (default 8)")
    common.add_argument("--iter", type=int, default=16, help="iteration cap for approximations (default 16)")
    p = argparse.ArgumentParser(prog="commalg", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, *args, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        for arg in args:
            sp.add_argument(arg)
        return sp

    add("define", "file", help="validate and register a document (or replay a report)")
    add("indec", "category", help="list indecomposables")
    add("ext", "m", "n", help="Ext group dimension").add_argument("--degree", type=int, default=1)
    add("perp", "cls", help="Ext¹-orthogonal class").add_argument("--left", action="store_true")
    add("closure", "cls", help="extension closure").add_argument("--budget", type=int, default=20000)
    add("split", "algebra", help="triangular split").add_argument("--left", required=True)
    add("to-triple", "module").add_argument("--split")
    add("to-module", "triple").add_argument("--split")
    add("yexact", "functor", "cls", help="𝒴-exactness with witness")
    pc = add("pair-check", "left", "right", help="cotorsion pair report")
    pc.add_argument("--complete", action="store_true")
    add("precover", "target", "cls")
    add("preenvelope", "target", "cls")
    tr = add("transfer", "triple", help="two-pushout transfer")
    tr.add_argument("--x", required=True)
    tr.add_argument("--y", required=True)
    tr.add_argument("--functor", required=True)
    tr.add_argument("--mode", choices=["precover", "preenvelope"], default="precover")
    add("gp", "module", help="Gorenstein projective verdict")
    add("gp-class", "category")
    add("compat", "functor", help="compatibility report (C1, C2, W1)")
    add("gp-precover", "triple").add_argument("--functor", required=True)
    add("frobenius", "functor")
    return p


def _execute(ws: Workspace, a) -> Outcome:
    try:
        return COMMANDS[a.command](ws, a)
    except NoSpecialApproximation as exc:
        return Outcome(EXIT_NEGATIVE, {"error": type(exc).__name__, "message": str(exc),
                                       "certificate": _jsonable(exc.certificate)},
                       [f"{type(exc).__name__}: {exc}", f"certificate: {json.dumps(_jsonable(exc.certificate), ensure_ascii=False)}"])
    except PreconditionYExact as exc:
        w = exc.report.witness
        res = {"error": "PreconditionYExact", "message": str(exc), "tor1": exc.report.tor1,
               "witness": {"module": exc.report.witness_name, "left": _dims(w.left), "middle": _dims(w.middle),
                           "right": _dims(w.right)}}
        return Outcome(EXIT_PRECONDITION, res, [f"PreconditionYExact: {exc}", f"witness: {_seq(w)}"])
    except (PreconditionFailed, NotCompatible) as exc:
        return Outcome(EXIT_PRECONDITION, {"error": type(exc).__name__, "message": str(exc)},
                       [f"{type(exc).__name__}: {exc}"])
    except (ClosureBudgetExceeded, IterationCapExceeded, EnumerationBudgetExceeded, DecompositionBudgetExceeded,
            ApproximationUndecided, IsoUndecided, NotFiniteDimensional) as exc:
        return Outcome(EXIT_BUDGET, {"error": type(exc).__name__, "message": str(exc)},
                       [f"{type(exc).__name__}: {exc}"])
    except (WorkspaceError, KeyError, ValueError, NotTriangular, NotMonomial, FieldNotFinite,
            json.JSONDecodeError, OSError) as exc:
        return Outcome(EXIT_INPUT, {"error": type(exc).__name__, "message": str(exc)},
                       [f"{type(exc).__name__}: {exc}"])


def _jsonable(x):
    return json.loads(json.dumps(x, default=str))


def make_report(a, out: Outcome) -> dict:
    argv = [a.command] + [v for k, v in vars(a).items() if k in _POSITIONAL.get(a.command, ())]
    for k, v in sorted(vars(a).items()):
        if k in ("command", "format", "workspace") or k in _POSITIONAL.get(a.command, ()):
            continue
        if v is None or v is False:
            continue
        flag = "--" + k
        argv += [flag] if v is True else [flag, str(v)]
    return {"kind": "report", "name": f"report-{a.command}", "argv": argv, "exit_code": out.code,
            "status": STATUS[out.code], "result": _jsonable(out.result)}


_POSITIONAL = {
    "define": ("file",), "indec": ("category",), "ext": ("m", "n"), "perp": ("cls",), "closure": ("cls",),
    "split": ("algebra",), "to-triple": ("module",), "to-module": ("triple",), "yexact": ("functor", "cls"),
    "pair-check": ("left", "right"), "precover": ("target", "cls"), "preenvelope": ("target", "cls"),
    "transfer": ("triple",), "gp": ("module",), "gp-class": ("category",), "compat": ("functor",),
    "gp-precover": ("triple",), "frobenius": ("functor",),
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        ws = Workspace.from_env(a.workspace, **({"cap": a.cap} if a.cap else {}))
    except (WorkspaceError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"workspace error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = _execute(ws, a)
    if a.format == "json":
        print(json.dumps(make_report(a, out), ensure_ascii=False, indent=2))
    else:
        for line in out.lines:
            print(line)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
