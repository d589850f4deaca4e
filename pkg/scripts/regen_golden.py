"""Rewrite tests/data matrix files and tests/golden CLI outputs.

Run after an intentional change to the report format:
    python3 scripts/regen_golden.py
"""
import io
import pathlib

import numpy as np

from nhresponse.cli import main
from nhresponse.fixtures import FIXTURES
from nhresponse.io import dumps, matrix_document

ROOT = pathlib.Path(__file__).resolve().parent.parent / "tests"
DATA, GOLDEN = ROOT / "data", ROOT / "golden"


def unit(n, i, j):
    m = np.zeros((n, n))
    m[i, j] = 1
    return m


EXTRA = {
    "unit-2-1": unit(3, 1, 0),
    "unit-4-1": unit(4, 3, 0),
    "identity-2": np.eye(2),
    "scalar-5": np.array([[5.0]]),
}


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    if code:
        raise SystemExit(f"{argv} exited with {code}")
    return out.getvalue()


def main_():
    DATA.mkdir(exist_ok=True)
    GOLDEN.mkdir(exist_ok=True)
    for name, m in {**FIXTURES, **EXTRA}.items():
        (DATA / f"{name}.json").write_text(dumps(matrix_document(m)))
    for name in FIXTURES:
        path = str(DATA / f"{name}.json")
        (GOLDEN / f"analyze-{name}.json").write_text(run("analyze", path))
        (GOLDEN / f"modes-{name}.json").write_text(run("modes", path))


if __name__ == "__main__":
    main_()
