#!/usr/bin/env python3
"""Run the acceptance criteria and collect their verdict lines.

Runs ``tests/test_acceptance.py`` under pytest, echoes the ``criterion N:``
lines and, with ``--out``, writes them with the pytest exit code to a JSON
summary.  The exit code is pytest's.
"""

from __future__ import annotations

import argparse
import json
import re
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
LINE = re.compile(r"^criterion (\d+): (.*?) — (.*)$")


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, help="write a JSON summary here")
    return ap.parse_args()


def main() -> int:
    a = parse_args()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                           str(ROOT / "tests" / "test_acceptance.py")],
                          cwd=ROOT, capture_output=True, text=True)
    verdicts = []
    for line in proc.stdout.splitlines():
        m = LINE.match(line.strip())
        if m:
            print(line.strip())
            verdicts.append({"criterion": int(m.group(1)), "status": m.group(2), "detail": m.group(3)})
    print(proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr)
    if a.out:
        a.out.write_text(json.dumps({"pytest_exit": proc.returncode, "verdicts": verdicts}, indent=2,
                                    ensure_ascii=False) + "\n", encoding="utf-8")
    return proc.returncode


if __name__ == "__main__":
    raise SystemExit(main())
