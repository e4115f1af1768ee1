"""Narrow-sector classes: Chern characters, the Gamma map, asymptotic classes, pairings.

Vectors are sparse maps m -> coefficient over the narrow indices of a weight
system.  Exact vectors carry :class:`Cyclotomic` coefficients in Q(zeta_d);
numeric vectors carry :class:`ApComplex` coefficients.

The sign (-1)^x for non-integer x is read as exp(i pi x) throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

import mpmath as mp

from .errors import FlavorMismatch, UnsupportedBroad
from .exact import (
    DEFAULT_GUARD_BITS,
    ApComplex,
    Cyclotomic,
    embed,
    gamma_real,
)
from .weights import WeightSystem, sector_data


def _check_support(ws: WeightSystem, keys) -> None:
    bad = [m for m in keys if m not in ws.nar]
    if bad:
        raise UnsupportedBroad(f"indices {bad} are not narrow for {ws}")


@dataclass(frozen=True)
class NarrowVectorExact:
    ws: WeightSystem
    coeffs: Mapping[int, Cyclotomic]

    def __post_init__(self):
        _check_support(self.ws, self.coeffs)
        for c in self.coeffs.values():
            if c.order != self.ws.d:
                raise ValueError("coefficients must live in Q(zeta_d)")

    def __getitem__(self, m: int) -> Cyclotomic:
        return self.coeffs.get(m, Cyclotomic.zero(self.ws.d))

    def __add__(self, other: "NarrowVectorExact") -> "NarrowVectorExact":
        keys = set(self.coeffs) | set(other.coeffs)
        return NarrowVectorExact(self.ws, {m: self[m] + other[m] for m in sorted(keys)})

    def scale(self, c) -> "NarrowVectorExact":
        return NarrowVectorExact(self.ws, {m: v * c for m, v in self.coeffs.items()})


@dataclass(frozen=True)
class NarrowVectorNumeric:
    ws: WeightSystem
    coeffs: Mapping[int, ApComplex]
    precision: int

    def __post_init__(self):
        _check_support(self.ws, self.coeffs)
        if any(c.precision != self.precision for c in self.coeffs.values()):
            raise ValueError("all coefficients must share the vector precision")

    def __getitem__(self, m: int) -> ApComplex:
        c = self.coeffs.get(m)
        return c if c is not None else ApComplex.from_value(0, self.precision)

    def max_distance(self, other: "NarrowVectorNumeric") -> mp.mpf:
        keys = set(self.coeffs) | set(other.coeffs)
        prec = min(self.precision, other.precision)
        with mp.workprec(prec):
            return max((abs(self[m].value - other[m].value) for m in keys), default=mp.mpf(0))


NarrowVector = Union[NarrowVectorExact, NarrowVectorNumeric]


def basis_vector(ws: WeightSystem, m: int) -> NarrowVectorExact:
    return NarrowVectorExact(ws, {m: Cyclotomic.one(ws.d)})


def _chern_group_ring(d: int, weights: tuple[int, ...], ell: int, m: int) -> list[int]:
    """Coefficients of x^(-ell m) prod_j (1 - x^(w_j m)) in Z[x]/(x^d - 1)."""
    poly = [0] * d
    poly[(-ell * m) % d] = 1
    for w in weights:
        shift = (w * m) % d
        poly = [poly[k] - poly[(k - shift) % d] for k in range(d)]
    return poly


def chern_stab(ws: WeightSystem, ell: int) -> NarrowVectorExact:
    """Chern character of the twisted stabilized residue field C(ell)^st."""
    d = ws.d
    coeffs = {
        m: Cyclotomic.from_group_ring(d, _chern_group_ring(d, ws.weights, ell, m))
        for m in ws.nar
    }
    return NarrowVectorExact(ws, coeffs)


@lru_cache(maxsize=None)
def _gamma_factor(d: int, weights: tuple[int, ...], m: int, wp: int) -> mp.mpc:
    """exp(-i pi mu(J^m)) prod_j Gamma(1 - theta_j) at wp bits."""
    sd = sector_data(WeightSystem(d, weights), m)
    with mp.workprec(wp):
        val = mp.expjpi(-_mpf(sd.mu))
        for th in sd.thetas:
            val *= gamma_real(1 - th, wp)
        return val


def _mpf(r: Fraction) -> mp.mpf:
    return mp.mpf(r.numerator) / r.denominator


def gamma_map(v: NarrowVectorExact, precision: int) -> NarrowVectorNumeric:
    ws = v.ws
    wp = precision + DEFAULT_GUARD_BITS
    out = {}
    for m, c in v.coeffs.items():
        factor = _gamma_factor(ws.d, ws.weights, m, wp)
        with mp.workprec(wp):
            val = embed(c, wp).value * factor
        out[m] = ApComplex.from_value(val, precision)
    return NarrowVectorNumeric(ws, out, precision)


def gamma_class(ws: WeightSystem, ell: int, precision: int) -> NarrowVectorNumeric:
    return gamma_map(chern_stab(ws, ell), precision)


def asymptotic_class(ws: WeightSystem, ell: int, precision: int) -> NarrowVectorNumeric:
    """sum_m omega^(-ell m) prod_j 2 pi / Gamma({w_j m / d}) e_m."""
    wp = precision + DEFAULT_GUARD_BITS
    d = ws.d
    out = {}
    for m in ws.nar:
        sd = sector_data(ws, m)
        with mp.workprec(wp):
            val = mp.expjpi(mp.mpf(-2 * ((ell * m) % d)) / d)
            for th in sd.thetas:
                val *= 2 * mp.pi / gamma_real(th, wp)
        out[m] = ApComplex.from_value(val, precision)
    return NarrowVectorNumeric(ws, out, precision)


def _same_ws(u, v) -> WeightSystem:
    if u.ws != v.ws:
        raise ValueError("vectors belong to different weight systems")
    return u.ws


def narrow_pairing(u: NarrowVector, v: NarrowVector):
    """sum_m u_m v_(d-m), the pairing with <e_m, e_(d-m)> = 1."""
    ws = _same_ws(u, v)
    if type(u) is not type(v):
        raise FlavorMismatch("cannot pair an exact vector with a numeric one")
    d = ws.d
    if isinstance(u, NarrowVectorExact):
        acc = Cyclotomic.zero(d)
        for m in ws.nar:
            acc = acc + u[m] * v[d - m]
        return acc
    prec = min(u.precision, v.precision)
    with mp.workprec(prec + 16):
        acc = mp.mpc(0)
        for m in ws.nar:
            acc += u[m].value * v[d - m].value
    return ApComplex.from_value(acc, prec)


@lru_cache(maxsize=None)
def _inverse_det(d: int, weights: tuple[int, ...], m: int) -> Cyclotomic:
    det = Cyclotomic.from_group_ring(d, _chern_group_ring(d, weights, 0, m))
    return det.inverse()


def pv_pairing(u: NarrowVectorExact, v: NarrowVectorExact) -> Cyclotomic:
    """(1/d) sum_m u_(d-m) v_m / prod_j (1 - omega^(w_j m))."""
    if not (isinstance(u, NarrowVectorExact) and isinstance(v, NarrowVectorExact)):
        raise FlavorMismatch("the PV pairing is defined on exact vectors")
    ws = _same_ws(u, v)
    d = ws.d
    acc = Cyclotomic.zero(d)
    for m in ws.nar:
        a, b = u[d - m], v[m]
        if a.is_zero() or b.is_zero():
            continue
        acc = acc + a * b * _inverse_det(d, ws.weights, m)
    return acc * Fraction(1, d)


def nonsym_pairing(u: NarrowVectorNumeric, v: NarrowVectorNumeric) -> ApComplex:
    """(1/d) sum_m exp(-i pi mu(J^m)) / (-2 pi)^N u_(d-m) v_m."""
    if not (isinstance(u, NarrowVectorNumeric) and isinstance(v, NarrowVectorNumeric)):
        raise FlavorMismatch("the non-symmetric pairing is defined on numeric vectors")
    ws = _same_ws(u, v)
    d = ws.d
    prec = min(u.precision, v.precision)
    wp = prec + 32
    phases = _nonsym_phases(ws, wp)
    with mp.workprec(wp):
        acc = mp.mpc(0)
        for m in ws.nar:
            acc += phases[m] * u[d - m].value * v[m].value
        acc /= d * (-2 * mp.pi) ** ws.n
    return ApComplex.from_value(acc, prec)


@lru_cache(maxsize=256)
def _nonsym_phases(ws: WeightSystem, wp: int) -> dict[int, mp.mpc]:
    with mp.workprec(wp):
        return {m: mp.expjpi(-_mpf(sector_data(ws, m).mu)) for m in ws.nar}


def chern_pairing_integer(ws: WeightSystem, i: int, j: int) -> int:
    """(ch C(i)^st, ch C(j)^st)^PV, asserted to be a rational integer."""
    val = pv_pairing(chern_stab(ws, i), chern_stab(ws, j))
    if not val.is_rational() or val.rational_value().denominator != 1:
        raise ArithmeticError(f"PV pairing of Chern characters is not an integer: {val}")
    return int(val.rational_value())


def hrr_residual(ws: WeightSystem, i: int, j: int, precision: int, sign: int = 1) -> mp.mpf:
    """|[Gamma ch C(i), Gamma ch C(j)) - sign * (ch C(i), ch C(j))^PV|."""
    left = nonsym_pairing(gamma_class(ws, i, precision), gamma_class(ws, j, precision))
    right = chern_pairing_integer(ws, i, j)
    with mp.workprec(precision):
        return abs(left.value - sign * right)
