"""Exact and arbitrary-precision arithmetic.

Rationals are :class:`fractions.Fraction`. The cyclotomic field Q(zeta_d) is
modelled as Q[x]/(Phi_d) with a dense power-basis representation, and
:class:`ApComplex` wraps an mpmath complex together with the precision (in
bits) it is trustworthy to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

import mpmath as mp

from .errors import DivisionByZero, NonPositiveArgument, OrderMismatch

Rational = Fraction

DEFAULT_GUARD_BITS = 64
MIN_PRECISION = 32


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rising_factorial(r, k: int) -> Fraction:
    """Pochhammer symbol (r)_k = r (r+1) ... (r+k-1), exactly."""
    r = as_fraction(r)
    a, b = r.numerator, r.denominator
    num = 1
    for i in range(k):
        num *= a + i * b
    return Fraction(num, b**k)


# ---------------------------------------------------------------------------
# dense polynomials over Q, coefficient lists from low to high degree


def poly_trim(a: Sequence) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_sub(a: Sequence, b: Sequence) -> list:
    return poly_add(a, [-c for c in b])


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim(out)


def poly_scale(a: Sequence, c) -> list:
    return poly_trim([c * x for x in a])


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    b = poly_trim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    rem = [as_fraction(x) for x in poly_trim(a)]
    lead = as_fraction(b[-1])
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    quot = [Fraction(0)] * (len(rem) - db)
    for shift in range(len(rem) - 1 - db, -1, -1):
        c = rem[shift + db] / lead
        quot[shift] = c
        if c:
            for i, y in enumerate(b):
                rem[shift + i] -= c * y
    return poly_trim(quot), poly_trim(rem[:db])


def poly_monic(a: Sequence) -> list:
    a = poly_trim(a)
    if not a:
        return []
    lead = as_fraction(a[-1])
    return [as_fraction(x) / lead for x in a]


def poly_gcd(a: Sequence, b: Sequence) -> list:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def poly_deriv(a: Sequence) -> list:
    return poly_trim([i * a[i] for i in range(1, len(a))])


def poly_ext_gcd(a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = poly_trim(a), poly_trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    if not r0:
        return [], s0, t0
    lead = as_fraction(r0[-1])
    return poly_scale(r0, 1 / lead), poly_scale(s0, 1 / lead), poly_scale(t0, 1 / lead)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and the field Q(zeta_d)


@lru_cache(maxsize=None)
def _cyclotomic_tuple(d: int) -> tuple[int, ...]:
    num: list = [-1] + [0] * (d - 1) + [1]  # x^d - 1
    for e in range(1, d):
        if d % e == 0:
            num, rem = poly_divmod(num, _cyclotomic_tuple(e))
            assert not rem
    coeffs = tuple(int(c) for c in num)
    assert all(Fraction(c) == x for c, x in zip(coeffs, num))
    return coeffs


def cyclotomic_polynomial(d: int) -> list[int]:
    """Coefficients of Phi_d, low degree first."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    return list(_cyclotomic_tuple(d))


def euler_phi(d: int) -> int:
    return len(_cyclotomic_tuple(d)) - 1


@lru_cache(maxsize=None)
def _power_table(d: int) -> tuple[tuple[int, ...], ...]:
    """Rows are x^k mod Phi_d for k = 0..d-1 (integer coefficients)."""
    phi = _cyclotomic_tuple(d)
    n = len(phi) - 1
    rows = []
    cur = [0] * n
    cur[0] = 1
    for _ in range(d):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


def _reduce_mod_phi(coeffs: Sequence, d: int) -> tuple[Fraction, ...]:
    phi = _cyclotomic_tuple(d)
    n = len(phi) - 1
    work = [as_fraction(c) for c in coeffs]
    for top in range(len(work) - 1, n - 1, -1):
        c = work[top]
        if c:
            for i in range(n + 1):
                work[top - n + i] -= c * phi[i]
    work = work[:n] + [Fraction(0)] * max(0, n - len(work))
    return tuple(work)


def _integer_form(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _mul_mod_phi(a: Sequence[Fraction], b: Sequence[Fraction], d: int) -> tuple[Fraction, ...]:
    """Product in Q[x]/(Phi_d) with the convolution and reduction done over the integers."""
    na, da = _integer_form(a)
    nb, db = _integer_form(b)
    n = len(a)
    work = [0] * (2 * n - 1 if n else 0)
    for i, x in enumerate(na):
        if x:
            for j, y in enumerate(nb):
                if y:
                    work[i + j] += x * y
    phi = _cyclotomic_tuple(d)
    for top in range(len(work) - 1, n - 1, -1):
        c = work[top]
        if c:
            for i in range(n + 1):
                work[top - n + i] -= c * phi[i]
    den = da * db
    return tuple(Fraction(c, den) for c in work[:n]) + (Fraction(0),) * max(0, n - len(work))


class Cyclotomic:
    """An element of Q(zeta_d) in the power basis 1, x, ..., x^(phi(d)-1)."""

    __slots__ = ("_order", "_coeffs")

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "_order", int(order))
        object.__setattr__(self, "_coeffs", _reduce_mod_phi(list(coeffs), order))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @classmethod
    def zero(cls, order: int) -> "Cyclotomic":
        return cls(order, [])

    @classmethod
    def one(cls, order: int) -> "Cyclotomic":
        return cls(order, [1])

    @classmethod
    def from_group_ring(cls, order: int, coeffs: Sequence[int], scale=1) -> "Cyclotomic":
        """Image of sum_k coeffs[k] x^k (k mod order) under Z[x]/(x^d-1) -> Q(zeta_d)."""
        table = _power_table(order)
        n = euler_phi(order)
        acc = [0] * n
        for k, c in enumerate(coeffs):
            if c:
                row = table[k % order]
                for i in range(n):
                    if row[i]:
                        acc[i] += c * row[i]
        scale = as_fraction(scale)
        return cls._raw(order, tuple(Fraction(c) * scale for c in acc))

    @classmethod
    def _raw(cls, order: int, coeffs: tuple[Fraction, ...]) -> "Cyclotomic":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "_order", order)
        object.__setattr__(obj, "_coeffs", coeffs)
        return obj

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other._order != self._order:
                raise OrderMismatch(f"orders {self._order} and {other._order} differ")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self._order, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic._raw(self._order, tuple(a + b for a, b in zip(self._coeffs, other._coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self._order, tuple(-a for a in self._coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic._raw(self._order, tuple(a - b for a, b in zip(self._coeffs, other._coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic._raw(self._order, _mul_mod_phi(self._coeffs, other._coeffs, self._order))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(zeta_d)")
        g, s, _ = poly_ext_gcd(poly_trim(self._coeffs), _cyclotomic_tuple(self._order))
        assert g == [1], "Phi_d is irreducible, so the gcd must be 1"
        return Cyclotomic(self._order, s)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.one(self._order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self._coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._order, self._coeffs))

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def is_rational(self) -> bool:
        return not any(self._coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self._coeffs[0]

    def __repr__(self):
        return f"Cyclotomic({self._order}, {[str(c) for c in self._coeffs]})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self._coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return " + ".join(terms) if terms else "0"


def root_of_unity(d: int, k: int) -> Cyclotomic:
    """zeta_d^k as an element of Q(zeta_d)."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    return Cyclotomic._raw(d, tuple(Fraction(c) for c in _power_table(d)[k % d]))


def cyc_arith(a: Cyclotomic, b: Cyclotomic, op: str) -> Cyclotomic:
    if a.order != b.order:
        raise OrderMismatch(f"orders {a.order} and {b.order} differ")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# arbitrary-precision complex numbers


def _to_mpc(value) -> mp.mpc:
    if isinstance(value, ApComplex):
        return value.value
    if isinstance(value, Fraction):
        return mp.mpc(mp.mpf(value.numerator) / value.denominator)
    return mp.mpc(value)


@dataclass(frozen=True)
class ApComplex:
    """A complex number with an explicit binary precision."""

    value: mp.mpc
    precision: int

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise ValueError(f"precision must be at least {MIN_PRECISION} bits")
        if not isinstance(self.value, mp.mpc):
            with mp.workprec(self.precision):
                object.__setattr__(self, "value", _to_mpc(self.value))

    @classmethod
    def from_value(cls, value, precision: int) -> "ApComplex":
        with mp.workprec(precision):
            return cls(+_to_mpc(value), precision)

    @property
    def real(self) -> mp.mpf:
        return self.value.real

    @property
    def imag(self) -> mp.mpf:
        return self.value.imag

    def __abs__(self) -> mp.mpf:
        with mp.workprec(self.precision):
            return abs(self.value)

    def _binary(self, other, fn, swap=False):
        if isinstance(other, ApComplex):
            prec = min(self.precision, other.precision)
        elif isinstance(other, (int, float, complex, Fraction, mp.mpf, mp.mpc)):
            prec = self.precision
        else:
            return NotImplemented
        with mp.workprec(prec):
            a, b = self.value, _to_mpc(other)
            if swap:
                a, b = b, a
            return ApComplex(fn(a, b), prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binary(other, lambda a, b: a + b, swap=True)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: a - b, swap=True)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._binary(other, lambda a, b: a * b, swap=True)

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: a / b, swap=True)

    def __neg__(self):
        return ApComplex(-self.value, self.precision)

    def conjugate(self) -> "ApComplex":
        return ApComplex(mp.conj(self.value), self.precision)

    def __complex__(self):
        return complex(self.value)

    def with_precision(self, precision: int) -> "ApComplex":
        with mp.workprec(precision):
            return ApComplex(+self.value, precision)

    def __repr__(self):
        digits = max(5, int(self.precision * math.log10(2)))
        return f"ApComplex({mp.nstr(self.value, digits)}, prec={self.precision})"


def embed(a: Cyclotomic, precision: int) -> ApComplex:
    """Numerical value of a under zeta_d -> exp(2 pi i / d)."""
    with mp.workprec(precision + 16):
        acc = mp.mpc(0)
        for k, c in enumerate(a.coeffs):
            if c:
                acc += (mp.mpf(c.numerator) / c.denominator) * mp.expjpi(mp.mpf(2 * k) / a.order)
    return ApComplex.from_value(acc, precision)


# ---------------------------------------------------------------------------
# Gamma at rational arguments


def _mpf_of(r: Fraction) -> mp.mpf:
    return mp.mpf(r.numerator) / r.denominator


@lru_cache(maxsize=4096)
def _stirling_log_gamma(s: Fraction, wp: int) -> mp.mpf:
    """log Gamma(s) for rational s large enough that the Stirling series reaches 2^-wp.

    For real s > 0 the error after truncating the Stirling series is bounded in
    absolute value by the first omitted term, so the loop stops at the first
    term below the target and that term is the error bound.
    """
    with mp.workprec(wp):
        z = _mpf_of(s)
        eps = mp.ldexp(mp.mpf(1), -wp)
        acc = (z - mp.mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
        zinv = 1 / z
        zinv2 = zinv * zinv
        power = zinv
        prev = mp.inf
        k = 1
        while True:
            num, den = mp.bernfrac(2 * k)
            term = mp.mpf(num) / (den * (2 * k) * (2 * k - 1)) * power
            size = abs(term)
            if size <= eps:
                return acc
            if size >= prev:
                raise ArithmeticError("Stirling series diverged before reaching the target")
            acc += term
            prev = size
            power *= zinv2
            k += 1


@lru_cache(maxsize=8192)
def _gamma_positive(r: Fraction, wp: int) -> mp.mpf:
    """Gamma(r) for rational r > 0 at working precision wp (no rounding to caller)."""
    target = math.ceil(0.15 * wp) + 8
    shift = max(0, math.ceil(target - r))
    s = r + shift
    extra = max(4, int(math.log2(float(s) * math.log(float(s)) + 2)) + 4)
    log_g = _stirling_log_gamma(s, wp + extra)
    with mp.workprec(wp + extra):
        poch = rising_factorial(r, shift)
        val = mp.exp(log_g) * poch.denominator / poch.numerator
    with mp.workprec(wp):
        return +val


def gamma_eval(r, precision: int) -> ApComplex:
    """Gamma(r) for a positive rational r, relative error at most 2^(8-precision)."""
    r = as_fraction(r)
    if r <= 0:
        raise NonPositiveArgument(f"gamma_eval needs a positive argument, got {r}")
    val = _gamma_positive(r, precision + 24)
    return ApComplex.from_value(val, precision)


def gamma_real(r, wp: int) -> mp.mpf:
    """Gamma at any rational that is not a non-positive integer, as an mpf at wp bits.

    Negative arguments go through Euler reflection
    Gamma(r) = pi / (sin(pi r) Gamma(1 - r)).
    """
    r = as_fraction(r)
    if r > 0:
        return _gamma_positive(r, wp + 8)
    if r.denominator == 1:
        raise NonPositiveArgument(f"Gamma has a pole at {r}")
    g = _gamma_positive(1 - r, wp + 8)
    with mp.workprec(wp + 8):
        return mp.pi / (mp.sinpi(_mpf_of(r)) * g)
