"""Weight systems (d; w_1, ..., w_N) and their narrow-sector combinatorics."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce

import mpmath as mp

from .errors import (
    EmptyWeights,
    GcdViolation,
    InvalidParameter,
    NotGeneralType,
    NotNarrow,
    ParseError,
)
from .exact import rising_factorial

_WS_RE = re.compile(r"^(\d+);(\d+(?:,\d+)*)$")
_FAMILY_RE = re.compile(r"^(A|DT|E6|E7|E8|Fermat)(?::(\d+(?:,\d+)*))?$")


@dataclass(frozen=True)
class WeightSystem:
    d: int
    weights: tuple[int, ...]
    # set by family(); custom systems are combinatorics-only (W itself is unknown)
    family: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.weights:
            raise EmptyWeights("a weight system needs at least one weight")
        if self.d < 1 or any(w < 1 for w in self.weights):
            raise ParseError("degree and weights must be positive integers")
        if reduce(math.gcd, self.weights) != 1:
            raise GcdViolation(f"gcd of weights {self.weights} is not 1")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def nu(self) -> int:
        return self.d - sum(self.weights)

    @cached_property
    def c_hat(self) -> Fraction:
        return sum((1 - Fraction(2 * w, self.d) for w in self.weights), Fraction(0))

    @property
    def combinatorics_only(self) -> bool:
        return self.family is None

    @cached_property
    def nar(self) -> tuple[int, ...]:
        return narrow_indices(self)

    @cached_property
    def mir(self) -> tuple[int, ...]:
        return mir_set(self)

    @property
    def label(self) -> str:
        return f"{self.d};{','.join(map(str, self.weights))}"

    def __str__(self):
        return f"({self.d}; {', '.join(map(str, self.weights))})"

    def require_general_type(self):
        if self.nu <= 0:
            raise NotGeneralType(f"{self} has index {self.nu} <= 0")


@dataclass(frozen=True)
class SectorData:
    m: int
    thetas: tuple[Fraction, ...]
    mu: Fraction
    deg: Fraction


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    params: tuple[int, ...] = ()

    def __str__(self):
        if not self.params:
            return self.tag
        return f"{self.tag}:{','.join(map(str, self.params))}"


def parse_weight_system(text: str) -> WeightSystem:
    """Parse ``d;w1,...,wN``; whitespace is ignored."""
    cleaned = re.sub(r"\s+", "", text)
    if cleaned.endswith(";") or cleaned.endswith(";,"):
        raise EmptyWeights(f"no weights in {text!r}")
    match = _WS_RE.match(cleaned)
    if not match:
        raise ParseError(f"cannot parse weight system {text!r}; expected d;w1,...,wN")
    d = int(match.group(1))
    weights = tuple(int(w) for w in match.group(2).split(","))
    return WeightSystem(d, weights)


def parse_family(text: str) -> FamilySpec:
    cleaned = re.sub(r"\s+", "", text)
    match = _FAMILY_RE.match(cleaned)
    if not match:
        raise ParseError(f"cannot parse family {text!r}")
    tag, rest = match.group(1), match.group(2)
    params = tuple(int(x) for x in rest.split(",")) if rest else ()
    expected = {"A": 1, "DT": 1, "E6": 0, "E7": 0, "E8": 0, "Fermat": 2}[tag]
    if len(params) != expected:
        raise ParseError(f"family {tag} takes {expected} parameter(s), got {len(params)}")
    return FamilySpec(tag, params)


def family(spec: FamilySpec) -> WeightSystem:
    """Weight system of a named family.

    ``A:n`` is W = x^n, weight system (n; 1), n >= 2.  ``DT:n`` is
    W = x^n y + y^2, weight system (2n; 1, n), n >= 3.
    """
    tag, params = spec.tag, spec.params
    if tag == "A":
        (n,) = params
        if n < 2:
            raise InvalidParameter("A:n needs n >= 2 (W = x^n)")
        return WeightSystem(n, (1,), family=str(spec))
    if tag == "DT":
        (n,) = params
        if n < 3:
            raise InvalidParameter("DT:n needs n >= 3")
        return WeightSystem(2 * n, (1, n), family=str(spec))
    if tag == "E6":
        return WeightSystem(12, (4, 3), family="E6")
    if tag == "E7":
        return WeightSystem(9, (2, 3), family="E7")
    if tag == "E8":
        return WeightSystem(15, (5, 3), family="E8")
    if tag == "Fermat":
        d, n = params
        if n < 1 or d - n < 1:
            raise InvalidParameter("Fermat:d,N needs N >= 1 and d - N >= 1")
        return WeightSystem(d, (1,) * n, family=str(spec))
    raise InvalidParameter(f"unknown family tag {tag!r}")


def parse_input(text: str) -> WeightSystem:
    """Accept either a weight system or a family name."""
    if ";" in text:
        return parse_weight_system(text)
    return family(parse_family(text))


def narrow_indices(ws: WeightSystem) -> tuple[int, ...]:
    return tuple(m for m in range(1, ws.d) if all((w * m) % ws.d for w in ws.weights))


def sector_data(ws: WeightSystem, m: int) -> SectorData:
    if m not in ws.nar:
        raise NotNarrow(f"{m} is not a narrow index of {ws}")
    d = ws.d
    thetas = tuple(Fraction((w * m) % d, d) for w in ws.weights)
    mu = -Fraction(ws.n, 2) + sum(thetas)
    deg = ws.c_hat / 2 + mu
    if ws.nu > 0 and m > 1 and _mir_condition(ws, m):
        assert 1 - deg == Fraction(ws.nu * (m - 1), d)
    return SectorData(m, thetas, mu, deg)


def _mir_condition(ws: WeightSystem, m: int) -> bool:
    return m - 1 - sum((w * m) // ws.d for w in ws.weights) == 1


def mir_set(ws: WeightSystem) -> tuple[int, ...]:
    ws.require_general_type()
    ge2 = [m for m in ws.nar if m >= 2 and _mir_condition(ws, m)]
    return tuple(([1] if ws.nu == 1 else []) + ge2)


def tau_coefficients(ws: WeightSystem) -> dict[int, Fraction]:
    """Coefficients tau_m of tau = tau(1); tau_m(t) = tau_m t^(m-1), or tau_1 t^d."""
    ws.require_general_type()
    d = ws.d
    out: dict[int, Fraction] = {}
    for m in ws.mir:
        if m == 1:
            val = Fraction(1, math.factorial(d))
            for w in ws.weights:
                val *= rising_factorial(Fraction(w, d), w)
        else:
            val = Fraction(1, math.factorial(m - 1))
            for w in ws.weights:
                val *= rising_factorial(Fraction((w * m) % d, d), (w * m) // d)
        assert val > 0
        out[m] = val
    return out


def tau_t_exponent(ws: WeightSystem, m: int) -> int:
    return ws.d if m == 1 else m - 1


def principal_T(ws: WeightSystem, precision: int) -> mp.mpf:
    """T = nu (d^-d prod w^w)^(1/nu)."""
    ws.require_general_type()
    nu = ws.nu
    with mp.workprec(precision + 32):
        inner = mp.mpf(math.prod(w**w for w in ws.weights)) / mp.mpf(ws.d) ** ws.d
        val = nu * mp.exp(mp.log(inner) / nu)
    with mp.workprec(precision):
        return +val
