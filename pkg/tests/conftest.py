import sys
import json
from fractions import Fraction
from pathlib import Path

import pytest
from flint import arb

from zfr.mp_core import endpoints, num, precision

ORACLE = json.loads((Path(__file__).parent / "oracles" / "values.json").read_text())


@pytest.fixture(scope="session")
def oracle():
    return ORACLE


def near(x: arb, ref, tol) -> bool:
    """The ball x meets [ref - tol, ref + tol]."""
    r = num(ref) if not isinstance(ref, arb) else ref
    return x.overlaps(r + arb(0, num(tol)))


def width_of(x: arb) -> Fraction:
    lo, hi = endpoints(x)
    return hi - lo


@pytest.fixture(autouse=True)
def _working_precision():
    # flint's ambient default is 53 bits; tests build their own balls at 256
    with precision(256):
        yield


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LINES, key=lambda l: int(l.split()[1])):
        terminalreporter.write_line(line)
