"""Regenerate tests/golden/*.out from tests/golden/cases.json.

Run after an intentional output change, then review the diff.
"""
import contextlib
import io
import json
import os
from pathlib import Path

from nawelch.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run_case(argv):
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(GOLDEN / "inputs")
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(argv)
    finally:
        os.chdir(cwd)
    return code, out.getvalue(), err.getvalue()


def render(code, out, err):
    return f"exit {code}\n--- stdout\n{out}--- stderr\n{err}"


if __name__ == "__main__":
    for name, case in json.loads((GOLDEN / "cases.json").read_text()).items():
        code, out, err = run_case(case["argv"])
        if code != case["exit"]:
            raise SystemExit(f"{name}: exit {code}, expected {case['exit']}")
        (GOLDEN / f"{name}.out").write_text(render(code, out, err))
        print(name, code)
