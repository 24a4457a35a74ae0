import random

import pytest

from classalg.algebra import FiniteModel, SampledModel
from classalg.numbers import zmod
from classalg.theories import MONOID_SIG, SEMIRING_SIG


def nat_model(bound=50):
    """(ℕ, +, ·, 0, 1) with small random draws."""
    return SampledModel(
        SEMIRING_SIG, {"num": lambda rng: rng.randint(0, bound)},
        {"plus": lambda a, b: a + b, "mult": lambda a, b: a * b, "zero": lambda: 0, "one": lambda: 1},
        name="N")


def additive(n):
    return zmod(n, "monoid")


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def z4():
    return additive(4)


@pytest.fixture
def z2():
    return additive(2)


def finite_monoid(elements, op, unit, eq=None, name=""):
    return FiniteModel(MONOID_SIG, {"num": list(elements)}, {"op": op, "unit": lambda: unit},
                       eq={"num": eq} if eq else None, name=name)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one ``criterion N: PASS|FAIL`` line; printed in the terminal summary."""

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
