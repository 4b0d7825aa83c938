#!/usr/bin/env python3
"""Walk through the kA3/(βα) counterexample with the CLI and print every step.

The bundled ``workspaces/remark35`` holds Λ = kA3/(βα), the split at vertex 1
and the class 𝔅 = ⟨p(mod k, mod kA2)⟩.  Each step prints the command, its text
report and its exit code; ``--format json`` prints the JSON reports instead.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
from pathlib import Path

from commalg.cli import main

WORKSPACE = Path(__file__).resolve().parent.parent / "workspaces" / "remark35"

STEPS = [
    ("triangular split", ["split", "L3", "--left", "1"]),
    ("Y-exactness of T = M ⊗ -", ["yexact", "Lambda", "all:Lambda.S"]),
    ("the class ⟨p(mod k, mod kA2)⟩", ["closure", "pXY-class"]),
    ("its right perp", ["perp", "pXY-class"]),
    ("a special precover of S(2)", ["precover", "S2", "pXY-class"]),
    ("is (𝔅, injectives) a cotorsion pair?", ["pair-check", "pXY-class", "injectives"]),
]


def run(argv, fmt):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main([*argv, "--workspace", str(WORKSPACE), "--format", fmt])
    return code, buf.getvalue()


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=["text", "json"], default="text")
    return ap.parse_args()


def main_() -> int:
    args = parse_args()
    reports = []
    for title, argv in STEPS:
        code, out = run(argv, args.format)
        if args.format == "json":
            reports.append(json.loads(out))
            continue
        print(f"## {title}\n$ commalg {' '.join(argv)}\n{out.rstrip()}\n(exit {code})\n")
    if args.format == "json":
        print(json.dumps(reports, indent=2, ensure_ascii=False))
    return 0


if __name__ == "__main__":
    raise SystemExit(main_())
