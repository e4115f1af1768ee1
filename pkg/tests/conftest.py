import math
import random
from fractions import Fraction
from functools import reduce

import mpmath as mp
from hypothesis import assume
from hypothesis import strategies as st

from lgverify.weights import WeightSystem, family, parse_family

NAMED_FAMILIES = ["A:3", "A:5", "DT:4", "DT:5", "E6", "E7", "E8", "Fermat:7,3"]


def named(tag: str) -> WeightSystem:
    return family(parse_family(tag))


@st.composite
def weight_systems(draw, max_d: int = 60, max_n: int = 4) -> WeightSystem:
    """Weight systems of general type: gcd of weights 1 and nu > 0."""
    d = draw(st.integers(min_value=2, max_value=max_d))
    n = draw(st.integers(min_value=1, max_value=min(max_n, d - 1)))
    weights = draw(st.lists(st.integers(min_value=1, max_value=max(1, (d - 1) // n)), min_size=n, max_size=n))
    assume(sum(weights) < d)
    assume(reduce(math.gcd, weights) == 1)
    return WeightSystem(d, tuple(weights))


def random_weight_systems(count: int, seed: int, max_d: int = 60, max_n: int = 4) -> list[WeightSystem]:
    """A reproducible list of general-type weight systems with d <= max_d."""
    rng = random.Random(seed)
    out: list[WeightSystem] = []
    while len(out) < count:
        d = rng.randint(2, max_d)
        n = rng.randint(1, min(max_n, d - 1))
        weights = tuple(rng.randint(1, max(1, (d - 1) // n)) for _ in range(n))
        if sum(weights) < d and reduce(math.gcd, weights) == 1:
            out.append(WeightSystem(d, weights))
    return out


def _mpc(x) -> mp.mpc:
    if isinstance(x, Fraction):
        return mp.mpc(mp.mpf(x.numerator) / x.denominator)
    return mp.mpc(x)


def close(a, b, bits: int) -> bool:
    """|a - b| <= 2^-bits * max(1, |b|)."""
    with mp.workprec(bits + 64):
        a, b = _mpc(a), _mpc(b)
        return abs(a - b) <= mp.ldexp(1, -bits) * max(1, abs(b))


ACCEPTANCE_LINES: list[str] = []


def acceptance_line(criterion: int, ok: bool, detail: str) -> None:
    """Print and record the single pass/fail line of an acceptance check."""
    line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter) -> None:
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
