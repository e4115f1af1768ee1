"""Hypergeometric index data, the small I-function, and Barnes Q-functions.

The I-function coefficients are exact rationals (Gamma ratios collapse to
rising factorials).  Barnes functions are evaluated as finite pFq sums at a
working precision planned ahead of time: the combination
sum_m omega^(l m) Q_m(x) is exponentially small while the individual Q_m are
exponentially large, so the caller-visible precision is only reached if the
cancellation is paid for in advance.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath as mp

from .errors import (
    CancellationFailure,
    InvalidParameter,
    NonPositiveArgument,
    NotNarrow,
    PoleInPrefactor,
    PrecisionBudgetExceeded,
)
from .exact import DEFAULT_GUARD_BITS, ApComplex, as_fraction, gamma_real, rising_factorial
from .weights import WeightSystem

MAX_WORKING_PRECISION = 1 << 16
MAX_SERIES_TERMS = 200_000
LOG2E = 1 / math.log(2)


@dataclass(frozen=True)
class HypergeomSystem:
    ws: WeightSystem
    nmap: dict[int, int]
    rho: tuple[Fraction, ...]
    alpha: tuple[Fraction, ...]
    p: int
    q: int

    def rho_of(self, m: int) -> Fraction:
        if m not in self.nmap:
            raise NotNarrow(f"{m} is not narrow for {self.ws}")
        return self.rho[self.nmap[m]]


def build_hg_system(ws: WeightSystem) -> HypergeomSystem:
    ws.require_general_type()
    d, nu = ws.d, ws.nu
    nar = ws.nar
    if len(nar) < nu:
        raise InvalidParameter(f"data error: |Nar| = {len(nar)} < nu = {nu} for {ws}")
    nmap = {m: i for i, m in enumerate(nar)}
    rho = tuple(Fraction(1, d) + 1 - Fraction(m, d) for m in nar)
    pool = Counter(Fraction(1, d) + Fraction(k, w) for w in ws.weights for k in range(w))
    for n in range(d):
        if n in nmap:
            continue
        common = Fraction(n + 1, d)
        if pool[common] <= 0:
            raise InvalidParameter(f"data error: {common} missing from the alpha pool of {ws}")
        pool[common] -= 1
    alpha = tuple(sorted(pool.elements()))
    p, q = len(alpha), len(nar) - 1
    hs = HypergeomSystem(ws, nmap, rho, alpha, p, q)
    _check_structure(hs)
    return hs


def _check_structure(hs: HypergeomSystem) -> None:
    ws = hs.ws
    nu, d, n = ws.nu, ws.d, ws.n
    assert hs.p == len(ws.nar) - nu and hs.q + 1 - hs.p == nu
    assert hs.rho[0] == 1
    assert all(a > b for a, b in zip(hs.rho, hs.rho[1:]))
    assert all(r.denominator != 1 for r in hs.rho[1:])
    for i, a in enumerate(hs.rho):
        for b in hs.rho[i + 1 :]:
            assert (a - b).denominator != 1
    assert not set(hs.rho) & set(hs.alpha)
    lhs = sum(hs.alpha, Fraction(0)) - sum(hs.rho[1:], Fraction(0))
    assert lhs == -nu * (Fraction(1, 2) + Fraction(1, d)) + Fraction(3 - n, 2)


def shifted_tuples(hs: HypergeomSystem, m: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """(alpha^(m), rho^(m)) = (1 + alpha - rho_N(m), 1 + rho_i - rho_N(m), unit entry dropped)."""
    r = hs.rho_of(m)
    idx = hs.nmap[m]
    alpha_m = tuple(1 + a - r for a in hs.alpha)
    rho_m = tuple(1 + x - r for i, x in enumerate(hs.rho) if i != idx)
    ws = hs.ws
    lhs = sum(alpha_m, Fraction(0)) - sum(rho_m, Fraction(0))
    assert lhs == -ws.nu * (Fraction(1, 2) + Fraction(m, ws.d)) + Fraction(3 - ws.n, 2)
    return alpha_m, rho_m


def theta_exponent(hs: HypergeomSystem) -> Fraction:
    ws = hs.ws
    nu = ws.nu
    total = Fraction(1 - nu, 2) + sum((1 - r for r in hs.rho), Fraction(0)) - sum(
        (1 - a for a in hs.alpha), Fraction(0)
    )
    theta = total / nu
    assert theta == Fraction(2 - ws.n, 2 * nu) - Fraction(1, ws.d)
    return theta


# ---------------------------------------------------------------------------
# the small I-function


@dataclass(frozen=True)
class SeriesTerm:
    m: int
    ell: int
    coeff: Fraction
    z_exp: int
    modified_z_exp: Fraction
    t_exp: int


def i_coefficient(ws: WeightSystem, m: int, ell: int) -> Fraction:
    d = ws.d
    n = d * ell + m
    val = Fraction(1, math.factorial(n - 1))
    for w in ws.weights:
        val *= rising_factorial(Fraction((w * m) % d, d), (w * n) // d)
    return val


def i_series(ws: WeightSystem, t_order: int) -> list[SeriesTerm]:
    """All terms t^(d l + m) with d l + m <= t_order, exact."""
    if t_order < 1:
        raise ValueError("t_order must be at least 1")
    d = ws.d
    out = []
    for m in ws.nar:
        ell = 0
        while d * ell + m <= t_order:
            n = d * ell + m
            z_exp = 2 - n + sum((w * n) // d for w in ws.weights)
            out.append(SeriesTerm(m, ell, i_coefficient(ws, m, ell), z_exp, Fraction(-ws.nu * (n - 1), d), n))
            ell += 1
    return out


def z0_layer(ws: WeightSystem, t_order: int) -> dict[int, tuple[int, Fraction]]:
    """Sector m -> (t exponent of tau_m(t), coefficient) read off the z^0 terms of t^-1 I."""
    out = {}
    for term in i_series(ws, t_order):
        if term.z_exp == 0:
            assert term.m not in out
            out[term.m] = (term.t_exp - 1, term.coeff)
    return out


@dataclass(frozen=True)
class OdeReport:
    ws: WeightSystem
    t_order: int
    reduced_monomials: int
    unreduced_monomials: int
    passed: bool


def _check_cancellation(contrib: dict, t_order: int, d: int, label: str) -> int:
    checked = 0
    for (m, tpow, zpow), val in sorted(contrib.items()):
        if tpow > t_order:
            continue
        checked += 1
        if val != 0:
            ell = (tpow - m) // d
            raise CancellationFailure(
                f"{label} operator leaves {val} at t^{tpow} z^{zpow} e_{m}", offending=(m, ell)
            )
    return checked


def verify_i_ode(ws: WeightSystem, t_order: int) -> OdeReport:
    """Apply both differential operators to the truncated I-function and check exact cancellation.

    t d/dt acts on t^n as multiplication by n.  Every monomial of t-degree
    at most t_order receives all of its contributions from the truncated
    series, so each such coefficient must vanish.
    """
    hs = build_hg_system(ws)
    d, p, q = ws.d, hs.p, hs.q
    sw = sum(ws.weights)
    K = Fraction(math.prod(w**w for w in ws.weights), d**sw)
    terms = i_series(ws, t_order)

    reduced: dict = defaultdict(Fraction)
    unreduced: dict = defaultdict(Fraction)
    for term in terms:
        n = term.t_exp
        c = term.coeff
        f1 = K * math.prod((n + a * d - 1 for a in hs.alpha), start=Fraction(1))
        f2 = math.prod((n + (r - 1) * d - 1 for r in hs.rho), start=Fraction(1))
        reduced[(term.m, n + d, term.z_exp + p)] += f1 * c
        reduced[(term.m, n, term.z_exp + q + 1)] -= f2 * c

        g1 = Fraction(1, n)
        for w in ws.weights:
            for k in range(w):
                g1 *= Fraction(w * n, d) + k
        g2 = math.prod(range(n - d + 1, n))  # prod_{c=1}^{d-1} (n - c)
        unreduced[(term.m, n + d, term.z_exp + sw - 1)] += g1 * c
        unreduced[(term.m, n, term.z_exp + d - 1)] -= g2 * c

    r_count = _check_cancellation(reduced, t_order, d, "reduced")
    u_count = _check_cancellation(unreduced, t_order, d, "unreduced")
    return OdeReport(ws, t_order, r_count, u_count, True)


def coefficient_ratio_matches(ws: WeightSystem, ell_max: int = 10) -> bool:
    """coeff(m, l+1)/coeff(m, l) equals K times the pFq term ratio, exactly."""
    hs = build_hg_system(ws)
    K = Fraction(math.prod(w**w for w in ws.weights), ws.d**ws.d)
    for m in ws.nar:
        alpha_m, rho_m = shifted_tuples(hs, m)
        for ell in range(ell_max + 1):
            lhs = i_coefficient(ws, m, ell + 1) / i_coefficient(ws, m, ell)
            num = math.prod((a + ell for a in alpha_m), start=Fraction(1))
            den = math.prod((r + ell for r in rho_m), start=Fraction(1)) * (ell + 1)
            if lhs != K * num / den:
                return False
    return True


# ---------------------------------------------------------------------------
# pFq


def _mpf(r: Fraction) -> mp.mpf:
    return mp.mpf(r.numerator) / r.denominator


def _series_budget(p: int, q: int, modulus) -> int:
    """Bits lost to the largest term of an entire pFq (p <= q) at |x| = modulus."""
    kappa = q + 1 - p
    size = float(modulus)
    if size <= 1:
        return 0
    return math.ceil(kappa * size ** (1 / kappa) * LOG2E)


def _pfq_sum(alphas: Sequence[Fraction], rhos: Sequence[Fraction], z: mp.mpc, wp: int, stop_bits: int) -> mp.mpc:
    """Sum the pFq series at wp bits until five consecutive terms drop below 2^-stop_bits of the running max."""
    for r in rhos:
        if r <= 0 and r.denominator == 1:
            raise NonPositiveArgument(f"lower parameter {r} is a non-positive integer")
    with mp.workprec(wp):
        eps = mp.ldexp(mp.mpf(1), -stop_bits)
        term = mp.mpc(1)
        total = mp.mpc(1)
        running_max = mp.mpf(1)
        quiet = 0
        k = 0
        while quiet < 5:
            ratio = Fraction(1)
            for a in alphas:
                ratio *= a + k
            for r in rhos:
                ratio /= r + k
            ratio /= k + 1
            k += 1
            term = term * _mpf(ratio) * z
            total += term
            size = abs(total)
            if size > running_max:
                running_max = size
            quiet = quiet + 1 if abs(term) < eps * running_max else 0
            if k > MAX_SERIES_TERMS:
                raise PrecisionBudgetExceeded("pFq series did not settle within the term budget")
        return total


def pfq(alphas, rhos, x: ApComplex, precision: int, guard: int = DEFAULT_GUARD_BITS) -> ApComplex:
    """Generalized hypergeometric series pFq(alphas; rhos; x) for p <= q."""
    alphas = [as_fraction(a) for a in alphas]
    rhos = [as_fraction(r) for r in rhos]
    if len(alphas) > len(rhos):
        raise ValueError("only the entire regime p <= q is supported")
    if not isinstance(x, ApComplex):
        x = ApComplex.from_value(x, precision)
    wp = precision + guard + _series_budget(len(alphas), len(rhos), abs(x))
    if wp > MAX_WORKING_PRECISION:
        raise PrecisionBudgetExceeded(f"working precision {wp} exceeds {MAX_WORKING_PRECISION}")
    with mp.workprec(wp):
        val = _pfq_sum(alphas, rhos, mp.mpc(x.value), wp, precision + guard)
    return ApComplex.from_value(val, precision)


# ---------------------------------------------------------------------------
# Barnes functions with explicit branches


@dataclass(frozen=True)
class BranchedPoint:
    """A point of the universal cover of C*: modulus and argument (in units of pi)."""

    modulus: Fraction
    arg_pi: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "modulus", as_fraction(self.modulus))
        object.__setattr__(self, "arg_pi", as_fraction(self.arg_pi))
        if self.modulus <= 0:
            raise ValueError("modulus must be positive")

    def rotate(self, k) -> "BranchedPoint":
        """Multiply by exp(2 pi i k) without reducing the argument."""
        return BranchedPoint(self.modulus, self.arg_pi + 2 * as_fraction(k))

    def value(self) -> mp.mpc:
        return _mpf(self.modulus) * mp.expjpi(_mpf(self.arg_pi))

    def power(self, r) -> mp.mpc:
        r = as_fraction(r)
        return mp.exp(_mpf(r) * mp.log(_mpf(self.modulus))) * mp.expjpi(_mpf(r * self.arg_pi))


def _as_point(x) -> BranchedPoint:
    if isinstance(x, BranchedPoint):
        return x
    if isinstance(x, ApComplex):
        if x.imag != 0 or x.real <= 0:
            raise ValueError("plain numeric x must be positive real; use BranchedPoint otherwise")
        return BranchedPoint(_fraction_of_mpf(x.real))
    return BranchedPoint(as_fraction(x))


def _fraction_of_mpf(v: mp.mpf) -> Fraction:
    man, exp = mp.mpf(v).man_exp
    return Fraction(man) * (Fraction(2) ** exp)


def _prefactor(hs: HypergeomSystem, m: int, wp: int) -> mp.mpf:
    r = hs.rho_of(m)
    idx = hs.nmap[m]
    with mp.workprec(wp):
        val = mp.mpf(1)
        try:
            for i, x in enumerate(hs.rho):
                if i != idx:
                    val *= gamma_real(r - x, wp)
            for a in hs.alpha:
                val /= gamma_real(r - a, wp)
        except NonPositiveArgument as exc:
            raise PoleInPrefactor(str(exc)) from exc
        return val


def _barnes_q_wp(hs: HypergeomSystem, m: int, x: BranchedPoint, wp: int) -> mp.mpc:
    alpha_m, rho_m = shifted_tuples(hs, m)
    r = hs.rho_of(m)
    with mp.workprec(wp):
        arg = BranchedPoint(x.modulus, x.arg_pi + hs.ws.nu).value()
        series = _pfq_sum(alpha_m, rho_m, arg, wp, wp)
        return _prefactor(hs, m, wp) * x.power(1 - r) * series


def barnes_q(hs: HypergeomSystem, m: int, x, precision: int) -> ApComplex:
    """Barnes function Q_N(m)(x) on the branch recorded in x."""
    x = _as_point(x)
    wp = precision + DEFAULT_GUARD_BITS + _series_budget(hs.p, hs.q, x.modulus)
    if wp > MAX_WORKING_PRECISION:
        raise PrecisionBudgetExceeded(f"working precision {wp} exceeds {MAX_WORKING_PRECISION}")
    return ApComplex.from_value(_barnes_q_wp(hs, m, x, wp), precision)


def _gamma_tuple(values: Sequence[Fraction], wp: int) -> mp.mpf:
    with mp.workprec(wp):
        out = mp.mpf(1)
        for v in values:
            out *= gamma_real(v, wp)
        return out


def hypergeometric_f(hs: HypergeomSystem, m: int, x: BranchedPoint, wp: int) -> mp.mpc:
    """f_N(m)(x) = x^(1 - rho_N(m)) pFq(alpha^(m); rho^(m); x)."""
    alpha_m, rho_m = shifted_tuples(hs, m)
    r = hs.rho_of(m)
    with mp.workprec(wp):
        return x.power(1 - r) * _pfq_sum(alpha_m, rho_m, x.value(), wp, wp)


def barnes_q_via_upsilon(hs: HypergeomSystem, m: int, x, precision: int) -> ApComplex:
    """Upsilon(m)^-1 Gamma(alpha^(m))/Gamma(rho^(m)) f((-1)^nu x), the second route to Q."""
    x = _as_point(x)
    wp = precision + DEFAULT_GUARD_BITS + _series_budget(hs.p, hs.q, x.modulus)
    alpha_m, rho_m = shifted_tuples(hs, m)
    with mp.workprec(wp):
        rotated = BranchedPoint(x.modulus, x.arg_pi + hs.ws.nu)
        f = hypergeometric_f(hs, m, rotated, wp)
        ups = _upsilon_gamma_product(hs, m, wp)
        val = f * _gamma_tuple(alpha_m, wp) / _gamma_tuple(rho_m, wp) / ups
    return ApComplex.from_value(val, precision)


def _upsilon_gamma_product(hs: HypergeomSystem, m: int, wp: int) -> mp.mpc:
    alpha_m, rho_m = shifted_tuples(hs, m)
    r = hs.rho_of(m)
    with mp.workprec(wp):
        phase = mp.expjpi(_mpf(hs.ws.nu * (1 - r)))
        num = _gamma_tuple(alpha_m, wp) * _gamma_tuple([1 - a for a in alpha_m], wp)
        den = _gamma_tuple(rho_m, wp) * _gamma_tuple([1 - x for x in rho_m], wp)
        return phase * num / den


def _upsilon_root_of_unity(hs: HypergeomSystem, m: int, wp: int) -> mp.mpc:
    ws = hs.ws
    d, nu, n = ws.d, ws.nu, ws.n
    with mp.workprec(wp):
        val = d * (2 * mp.pi) ** (1 - nu) * mp.expjpi(_mpf(Fraction(-nu, d) - 1 - Fraction(n, 2)))
        for w in ws.weights:
            val /= 1 - mp.expjpi(mp.mpf(2 * ((m * w) % d)) / d)
        return val


def upsilon(hs: HypergeomSystem, m: int, precision: int, method: str = "gamma_product") -> ApComplex:
    if m not in hs.nmap:
        raise NotNarrow(f"{m} is not narrow for {hs.ws}")
    wp = precision + DEFAULT_GUARD_BITS
    if method == "gamma_product":
        val = _upsilon_gamma_product(hs, m, wp)
    elif method == "root_of_unity":
        val = _upsilon_root_of_unity(hs, m, wp)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ApComplex.from_value(val, precision)


def barnes_working_precision(hs: HypergeomSystem, x, precision: int) -> int:
    """precision + ceil(2 nu x^(1/nu) log2 e) + 64."""
    nu = hs.ws.nu
    modulus = float(as_fraction(x) if not isinstance(x, BranchedPoint) else x.modulus)
    return precision + math.ceil(2 * nu * modulus ** (1 / nu) * LOG2E) + 64


def _check_ell(hs: HypergeomSystem, ell: int) -> None:
    if not 1 - hs.ws.nu <= ell <= 0:
        raise InvalidParameter(f"ell must lie in [{1 - hs.ws.nu}, 0], got {ell}")


def _combination_wp(hs: HypergeomSystem, ell: int, x: BranchedPoint, wp: int) -> mp.mpc:
    d = hs.ws.d
    with mp.workprec(wp):
        total = mp.mpc(0)
        for m in hs.ws.nar:
            total += mp.expjpi(mp.mpf(2 * ((ell * m) % d)) / d) * _barnes_q_wp(hs, m, x, wp)
        return total


def _ray_point(ell: int, x, arg_pi) -> BranchedPoint:
    if isinstance(x, BranchedPoint):
        return x
    modulus = _fraction_of_mpf(x.real) if isinstance(x, ApComplex) else as_fraction(x)
    if modulus <= 0:
        raise ValueError("x must be positive")
    # default ray: arg x = -2 pi l, so that x e^(2 pi i l) is positive real
    return BranchedPoint(modulus, Fraction(-2 * ell) if arg_pi is None else as_fraction(arg_pi))


def barnes_combination(hs: HypergeomSystem, ell: int, x, precision: int, arg_pi=None) -> ApComplex:
    """sum_m omega^(l m) Q_N(m)(x), x placed on the ray arg = -2 pi l unless arg_pi is given."""
    _check_ell(hs, ell)
    point = _ray_point(ell, x, arg_pi)
    wp = barnes_working_precision(hs, point, precision)
    if wp > MAX_WORKING_PRECISION:
        raise PrecisionBudgetExceeded(f"working precision {wp} exceeds {MAX_WORKING_PRECISION}")
    return ApComplex.from_value(_combination_wp(hs, ell, point, wp), precision)


def barnes_leading_term(hs: HypergeomSystem, ell: int, point: BranchedPoint, wp: int) -> mp.mpc:
    """e^((2-N) pi i l / nu) (2 pi)^((nu-1)/2) nu^(-1/2) exp(-nu (x e^(2 pi i l))^(1/nu)) x^theta."""
    ws = hs.ws
    nu, n = ws.nu, ws.n
    theta = theta_exponent(hs)
    with mp.workprec(wp):
        phase = mp.expjpi(_mpf(Fraction((2 - n) * ell, nu)))
        root = point.rotate(ell).power(Fraction(1, nu))
        return (
            phase
            * (2 * mp.pi) ** (mp.mpf(nu - 1) / 2)
            / mp.sqrt(nu)
            * mp.exp(-nu * root)
            * point.power(theta)
        )


def barnes_ratio(hs: HypergeomSystem, ell: int, x, precision: int, arg_pi=None) -> ApComplex:
    _check_ell(hs, ell)
    point = _ray_point(ell, x, arg_pi)
    wp = barnes_working_precision(hs, point, precision)
    if wp > MAX_WORKING_PRECISION:
        raise PrecisionBudgetExceeded(f"working precision {wp} exceeds {MAX_WORKING_PRECISION}")
    with mp.workprec(wp):
        val = _combination_wp(hs, ell, point, wp) / barnes_leading_term(hs, ell, point, wp)
    return ApComplex.from_value(val, precision)


# ---------------------------------------------------------------------------
# the modified I-function at t = 1, two ways


def i_tilde_series(ws: WeightSystem, m: int, z, precision: int) -> ApComplex:
    """sum_l coeff(m, l) z^(-nu (d l + m - 1)/d) for real z > 0."""
    z = as_fraction(z)
    wp = precision + DEFAULT_GUARD_BITS
    d, nu = ws.d, ws.nu
    with mp.workprec(wp):
        zf = _mpf(z)
        eps = mp.ldexp(mp.mpf(1), -wp)
        total = mp.mpf(0)
        running = mp.mpf(0)
        quiet = 0
        ell = 0
        while quiet < 5:
            n = d * ell + m
            term = _mpf(i_coefficient(ws, m, ell)) * mp.power(zf, -mp.mpf(nu * (n - 1)) / d)
            total += term
            running = max(running, abs(total))
            quiet = quiet + 1 if abs(term) < eps * running else 0
            ell += 1
    return ApComplex.from_value(total, precision)


def i_tilde_hypergeometric(ws: WeightSystem, m: int, z, precision: int) -> ApComplex:
    """The same coefficient through pFq at x = d^-d prod w^w z^-nu."""
    z = as_fraction(z)
    hs = build_hg_system(ws)
    d, nu, n = ws.d, ws.nu, ws.n
    alpha_m, rho_m = shifted_tuples(hs, m)
    wp = precision + DEFAULT_GUARD_BITS
    with mp.workprec(wp):
        x = mp.mpf(math.prod(w**w for w in ws.weights)) / mp.mpf(d) ** d * mp.power(_mpf(z), -nu)
        xf = _fraction_of_mpf(x)
        f = hypergeometric_f(hs, m, BranchedPoint(xf), wp)
        pref = (2 * mp.pi) ** (mp.mpf(n + nu - 1) / 2) / mp.sqrt(d)
        for w in ws.weights:
            pref *= mp.power(w, mp.mpf(w) / d - mp.mpf(1) / 2)
        denom = mp.mpf(1)
        for w in ws.weights:
            denom *= gamma_real(Fraction((w * m) % d, d), wp)
        val = pref * _gamma_tuple(alpha_m, wp) / _gamma_tuple(rho_m, wp) * f / denom
    return ApComplex.from_value(val, precision)
