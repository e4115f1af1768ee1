"""Command-line front end.

Exit codes: 0 when every verdict passes, 1 when any verdict fails, 2 on
input errors.
"""

from __future__ import annotations

import argparse
import contextlib
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Sequence

import mpmath as mp

from .classes import (
    asymptotic_class,
    chern_stab,
    gamma_class,
    nonsym_pairing,
    pv_pairing,
)
from .errors import InputError, LGError, UnsupportedFamily
from .gram import (
    aw_coefficients,
    cartan_check,
    euler_pairing_entries,
    gram_matrix,
    matmul_int,
    p_zero_identity_holds,
    partition_counts,
    stokes_coefficients,
    symmetry_holds,
    upper_unitriangular_inverse,
)
from .hyper import (
    barnes_ratio,
    barnes_working_precision,
    build_hg_system,
    coefficient_ratio_matches,
    shifted_tuples,
    theta_exponent,
    upsilon,
    verify_i_ode,
    z0_layer,
)
from .quantum import (
    build_quantum_algebra,
    char_poly,
    check_spectrum_conjecture,
    relation_report,
)
from .report import Report, emit_report, fmt_rational
from .weights import (
    WeightSystem,
    parse_family,
    parse_input,
    principal_T,
    sector_data,
    tau_coefficients,
    tau_t_exponent,
)

DEFAULT_PRECISION = 128
DEFAULT_TOL = 1e-9
DEFAULT_X_GRID = (25, 50, 100, 200)
# tolerances as bits below the working precision: 2^-104 and 2^-96 at 128 bits
GAMMA_SLACK_BITS = 24
PAIRING_SLACK_BITS = 32


class Checker:
    """Collects verdicts, turning internal assertion failures into failed verdicts."""

    def __init__(self, report: Report, prefix: str = ""):
        self.report = report
        self.prefix = prefix

    def __call__(self, name: str, fn: Callable[[], tuple[bool, str]]) -> bool:
        try:
            ok, detail = fn()
        except InputError:
            raise
        except (AssertionError, ArithmeticError, LGError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        self.report.add_verdict(self.prefix + name, bool(ok), detail)
        return bool(ok)


def _general(text: str) -> WeightSystem:
    ws = parse_input(text)
    ws.require_general_type()
    return ws


def _bits(x) -> str:
    with mp.workprec(64):
        if x == 0:
            return "0"
        return f"2^{mp.nstr(mp.log(x, 2), 5)}"


# ---------------------------------------------------------------------------
# report builders


def build_info(text: str, precision: int, tol: float, prefix: str = "") -> Report:
    ws = _general(text)
    r = Report(text, "info")
    check = Checker(r, prefix)
    sec = prefix
    r.add_section(sec + "weight_system", ws.label)
    r.add_section(sec + "family", ws.family or "custom (combinatorics only)")
    r.add_section(sec + "nu", ws.nu)
    r.add_section(sec + "c_hat", ws.c_hat)
    r.add_section(sec + "nar", list(ws.nar))
    r.add_section(sec + "mir", list(ws.mir))
    tau = tau_coefficients(ws)
    r.add_section(sec + "tau", {f"e{m}": c for m, c in sorted(tau.items())})
    r.add_section(sec + "tau_t_exponents", {f"e{m}": tau_t_exponent(ws, m) for m in sorted(tau)})
    r.add_section(sec + "T", principal_T(ws, precision), precision)

    check("nar_duality", lambda: (all((ws.d - m in ws.nar) for m in ws.nar), ""))
    check(
        "mu_antisymmetry",
        lambda: (all(sector_data(ws, m).mu + sector_data(ws, ws.d - m).mu == 0 for m in ws.nar), ""),
    )
    check(
        "degree_identity",
        lambda: (
            all(
                1 - sector_data(ws, m).deg == Fraction(ws.nu * (m - 1), ws.d) for m in ws.mir if m > 1
            ),
            "1 - deg(e_m) = nu (m-1)/d on Mir",
        ),
    )
    check("nar_at_least_nu", lambda: (len(ws.nar) >= ws.nu, f"|Nar| = {len(ws.nar)}, nu = {ws.nu}"))

    def z0_matches():
        layer = z0_layer(ws, 2 * ws.d)
        expected = {m: (tau_t_exponent(ws, m), c) for m, c in tau.items()}
        return layer == expected, "z^0 layer of the I-function equals tau(t)"

    check("tau_from_i_function", z0_matches)
    if ws.family and ws.family.startswith("Fermat"):
        check("tau_fermat_closed_form", lambda: _fermat_tau_ok(ws, tau))
    return r


def _fermat_tau_ok(ws: WeightSystem, tau: dict[int, Fraction]) -> tuple[bool, str]:
    d, n = ws.d, ws.n
    if d > n + 1:
        expected = {2: Fraction(1)}
    elif d > 2:
        expected = {2: Fraction(1), 1: Fraction(1, math.factorial(d) * d**n)}
    else:
        expected = {1: Fraction(1, 4)}
    return tau == expected, f"expected {{{', '.join(f'e{m}: {fmt_rational(c)}' for m, c in expected.items())}}}"


def build_hypergeom(text: str, precision: int, tol: float, prefix: str = "", ode: bool = False) -> Report:
    ws = _general(text)
    r = Report(text, "hypergeom")
    check = Checker(r, prefix)
    hs = build_hg_system(ws)
    r.add_section(prefix + "nar", list(ws.nar))
    r.add_section(prefix + "p", hs.p)
    r.add_section(prefix + "q", hs.q)
    r.add_section(prefix + "alpha", list(hs.alpha))
    r.add_section(prefix + "rho", list(hs.rho))
    r.add_section(prefix + "theta", theta_exponent(hs))

    check("q_plus_1_minus_p_is_nu", lambda: (hs.q + 1 - hs.p == ws.nu, f"q + 1 - p = {hs.q + 1 - hs.p}"))

    def sum_identity():
        lhs = sum(hs.alpha, Fraction(0)) - sum(hs.rho[1:], Fraction(0))
        rhs = -ws.nu * (Fraction(1, 2) + Fraction(1, ws.d)) + Fraction(3 - ws.n, 2)
        return lhs == rhs, f"sum(alpha) - sum(rho_1..q) = {fmt_rational(lhs)}"

    def shifted_sum_identity():
        for m in ws.nar:
            alpha_m, rho_m = shifted_tuples(hs, m)
            lhs = sum(alpha_m, Fraction(0)) - sum(rho_m, Fraction(0))
            if lhs != -ws.nu * (Fraction(1, 2) + Fraction(m, ws.d)) + Fraction(3 - ws.n, 2):
                return False, f"fails at m = {m}"
        return True, "for every narrow m"

    check("sum_identity", sum_identity)
    check("shifted_sum_identity", shifted_sum_identity)
    check("coefficient_ratio", lambda: (coefficient_ratio_matches(ws), "I-function coefficients match the pFq term ratio"))
    if ode:
        def ode_check():
            rep = verify_i_ode(ws, 3 * ws.d)
            return rep.passed, f"{rep.reduced_monomials} + {rep.unreduced_monomials} monomials cancel to t^{3 * ws.d}"

        check("i_function_ode", ode_check)

        def upsilon_check():
            tol_bits = precision - PAIRING_SLACK_BITS
            worst = mp.mpf(0)
            for m in ws.nar:
                a = upsilon(hs, m, precision, "gamma_product")
                b = upsilon(hs, m, precision, "root_of_unity")
                with mp.workprec(precision):
                    worst = max(worst, abs(a.value - b.value) / max(1, abs(a.value)))
            return worst <= mp.mpf(2) ** (-tol_bits), f"max relative gap {_bits(worst)}"

        check("upsilon_two_formulas", upsilon_check)
    return r


def build_gram(text: str, precision: int, tol: float, prefix: str = "") -> Report:
    ws = _general(text)
    r = Report(text, "gram")
    check = Checker(r, prefix)
    a = aw_coefficients(ws)
    M = gram_matrix(ws)
    nu = ws.nu
    r.add_section(prefix + "a", a)
    r.add_section(prefix + "M", M)
    Minv = upper_unitriangular_inverse(M)
    r.add_section(prefix + "M_inverse", Minv)
    L = partition_counts(ws, nu)
    r.add_section(prefix + "L", L[:nu])
    r.add_section(prefix + "stokes", [L[nu - h] for h in range(1, nu + 1)])

    def magic():
        entries = euler_pairing_entries(ws)
        padded = a + [0] * (ws.d - len(a))
        return entries == padded, "Euler pairing entries equal a(n) for 0 <= n < d"

    check("magic_identity", magic)
    check(
        "inverse",
        lambda: (matmul_int(M, Minv) == [[int(i == j) for j in range(nu)] for i in range(nu)], "M M^-1 = I"),
    )
    check(
        "inverse_partition_counts",
        lambda: (all(Minv[i][j] == (L[j - i] if j >= i else 0) for i in range(nu) for j in range(nu)), ""),
    )
    check("stokes_recursion", lambda: (len(stokes_coefficients(ws)) == nu, "sum_i a(i) d_(nu-j+i) = delta_j0"))
    check("symmetry", lambda: (symmetry_holds(ws), "a(d - nu - n) = (-1)^N a(n)"))
    if ws.weights == (1,):
        check("cartan", lambda: (cartan_check(ws), "M + M^T is the A_(d-1) Cartan matrix"))
    if len(ws.nar) == nu:
        check("p_zero_identity", lambda: (p_zero_identity_holds(ws), "sum_h d_h omega^(-h m) = (-1)^N"))
    return r


def build_gamma(
    text: str, precision: int, tol: float, ells: Sequence[int] | None = None, prefix: str = "", pairings: bool = False
) -> Report:
    ws = _general(text)
    r = Report(text, "gamma")
    check = Checker(r, prefix)
    d = ws.d
    single = ells is not None and len(ells) == 1
    ells = list(range(d)) if ells is None else list(ells)
    classes = {}
    if single:
        (ell,) = ells
        r.add_section(prefix + "ell", ell)
        r.add_section(prefix + "chern", {f"e{m}": c for m, c in chern_stab(ws, ell).coeffs.items()})
    worst = mp.mpf(0)
    for ell in ells:
        g = gamma_class(ws, ell, precision)
        asym = asymptotic_class(ws, ell, precision)
        classes[ell] = g
        worst = max(worst, g.max_distance(asym))
        if single:
            r.add_section(prefix + "gamma_class", {f"e{m}": v for m, v in g.coeffs.items()}, precision)
            r.add_section(prefix + "asymptotic_class", {f"e{m}": v for m, v in asym.coeffs.items()}, precision)
    r.add_section(prefix + "max_distance", worst, 64)
    bound = mp.mpf(2) ** (-(precision - GAMMA_SLACK_BITS))
    check("gamma_equals_asymptotic", lambda: (worst <= bound, f"max |Gamma ch - A| = {_bits(worst)}"))
    if pairings:
        a = aw_coefficients(ws)

        def gram_value(n):
            return a[n] if n < len(a) else 0

        def pv_check():
            cherns = [chern_stab(ws, ell) for ell in range(d)]
            bad = []
            for i in range(d):
                for j in range(d):
                    val = pv_pairing(cherns[i], cherns[j])
                    if not val.is_rational() or val.rational_value() != gram_value((i - j) % d):
                        bad.append((i, j))
            return not bad, "PV pairing of Chern characters equals the Gram integers" + (f"; fails at {bad[:3]}" if bad else "")

        check("pv_equals_gram", pv_check)

        def hrr(sign):
            worst = mp.mpf(0)
            for i in range(d):
                for j in range(d):
                    left = nonsym_pairing(classes[i], classes[j])
                    with mp.workprec(precision):
                        worst = max(worst, abs(left.value - sign * gram_value((i - j) % d)))
            return worst

        hrr_bound = mp.mpf(2) ** (-(precision - PAIRING_SLACK_BITS))
        plain = hrr(1)
        r.add_section(prefix + "hrr_residual", plain, 64)
        if ws.n % 2:
            r.add_section(prefix + "hrr_residual_with_sign_(-1)^N", hrr(-1), 64)
        check("hrr", lambda: (plain <= hrr_bound, f"max |[G ch, G ch) - (ch, ch)^PV| = {_bits(plain)}"))
    return r


def build_asymptotics(
    text: str,
    precision: int,
    tol: float,
    ells: Sequence[int] | None = None,
    x_grid: Sequence[Fraction] = DEFAULT_X_GRID,
    prefix: str = "",
) -> Report:
    ws = _general(text)
    r = Report(text, "asymptotics")
    check = Checker(r, prefix)
    hs = build_hg_system(ws)
    nu = ws.nu
    ells = list(range(1 - nu, 1)) if ells is None else list(ells)
    rows = []
    wp_max = 0
    for ell in ells:
        for x in x_grid:
            x = Fraction(x)
            wp = barnes_working_precision(hs, x, precision)
            wp_max = max(wp_max, wp)

            def one(ell=ell, x=x):
                ratio = barnes_ratio(hs, ell, x, precision)
                with mp.workprec(precision):
                    gap = abs(ratio.value - 1)
                    bound = 5 * mp.power(mp.mpf(x.numerator) / x.denominator, -mp.mpf(1) / nu)
                rows.append({"ell": ell, "x": x, "ratio": ratio, "gap": gap, "bound": bound})
                return gap <= bound, f"|ratio - 1| = {mp.nstr(gap, 5)} <= {mp.nstr(bound, 5)}"

            check(f"barnes_decay[l={ell},x={fmt_rational(x)}]", one)
    r.add_section(prefix + "barnes", rows, precision)
    r.add_section(prefix + "working_precision", wp_max)
    return r


def build_spectrum(text: str, precision: int, tol: float, prefix: str = "") -> Report:
    if ";" in text:
        raise UnsupportedFamily("spectrum needs a family name (A:n, DT:n, E6, E7, E8, Fermat:d,N)")
    spec = parse_family(text)
    qa = build_quantum_algebra(spec)
    r = Report(text, "spectrum")
    check = Checker(r, prefix)
    r.add_section(prefix + "weight_system", qa.ws.label)
    r.add_section(prefix + "basis", list(qa.basis_labels))
    r.add_section(prefix + "X", [list(row) for row in qa.mat_x])
    r.add_section(prefix + "provenance", qa.provenance)
    r.add_section(prefix + "scale", qa.scale)
    r.add_section(prefix + "broad_zero_count", qa.broad_zero_count)
    r.add_section(prefix + "char_poly", char_poly(qa))
    rep = check_spectrum_conjecture(qa, precision, tol)
    r.add_section(prefix + "T", rep.T, precision)
    r.add_section(prefix + "max_modulus", rep.max_modulus, precision)
    r.add_section(
        prefix + "eigenvalues",
        [{"value": lam, "multiplicity": m} for lam, m in rep.eigenvalues],
        precision,
    )
    r.add_section(prefix + "total_dimension", rep.total_dimension)
    if rep.informational:
        r.add_section(
            prefix + "conjecture_informational",
            {
                "max_modulus": rep.max_modulus_ok,
                "root_of_unity_set": rep.root_of_unity_set_ok,
                "multiplicity_one": rep.multiplicity_one_ok,
            },
        )
    else:
        check("conjecture.max_modulus", lambda: (rep.max_modulus_ok, f"tol {tol}"))
        check("conjecture.root_of_unity_set", lambda: (rep.root_of_unity_set_ok, f"nu = {qa.ws.nu}"))
        check("conjecture.multiplicity_one", lambda: (rep.multiplicity_one_ok, ""))
    check(
        "spectrum.dimension",
        lambda: (sum(m for _, m in rep.eigenvalues) == rep.total_dimension, f"dimension {rep.total_dimension}"),
    )
    relations = relation_report(qa)
    for rc in relations.checks:
        check(f"relation[{rc.name}]", lambda rc=rc: (rc.ok, "" if rc.ok else f"residual {[fmt_rational(x) for x in rc.residual]}"))
    return r


# ---------------------------------------------------------------------------
# verify


def _verify_group(args: tuple[str, str, int, float]) -> Report:
    group, text, precision, tol = args
    if group == "info":
        return build_info(text, precision, tol, prefix="info.")
    if group == "hypergeom":
        return build_hypergeom(text, precision, tol, prefix="hypergeom.", ode=True)
    if group == "gram":
        return build_gram(text, precision, tol, prefix="gram.")
    if group == "gamma":
        return build_gamma(text, precision, tol, prefix="gamma.", pairings=True)
    if group == "asymptotics":
        return build_asymptotics(text, precision, tol, prefix="asymptotics.")
    if group == "spectrum":
        return build_spectrum(text, precision, tol, prefix="spectrum.")
    raise ValueError(group)


def build_verify(text: str, precision: int, tol: float, threads: int = 1) -> Report:
    ws = _general(text)
    groups = ["info", "hypergeom", "gram", "gamma", "asymptotics"]
    if ws.family is not None:
        groups.append("spectrum")
    jobs = [(g, text, precision, tol) for g in groups]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
            parts = list(pool.map(_verify_group, jobs))
    else:
        parts = [_verify_group(j) for j in jobs]
    r = Report(text, "verify")
    for part in parts:
        r.sections.update(part.sections)
        r.verdicts.update(part.verdicts)
    return r


# ---------------------------------------------------------------------------
# argument parsing


def _x_grid(text: str) -> list[Fraction]:
    try:
        values = [Fraction(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad x grid {text!r}") from exc
    if not values or any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError("x grid values must be positive")
    return values


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=default(False), help="emit the JSON report")
    parser.add_argument("--precision", type=_positive_int, default=default(DEFAULT_PRECISION), help="bits")
    parser.add_argument("--tol", type=float, default=default(DEFAULT_TOL), help="relative tolerance")
    parser.add_argument("--threads", type=_positive_int, default=default(1), help="worker processes")
    parser.add_argument("--out", default=default(None), help="also write the report to this path")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lgverify", description="Checks for Landau-Ginzburg weight systems of general type.")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "info": "index, narrow and Mir sets, tau, T",
        "hypergeom": "hypergeometric data (p, q, alpha, rho, theta)",
        "gram": "Gram matrix, inverse, partition counts, Stokes coefficients",
        "gamma": "Chern character, Gamma class and asymptotic class",
        "spectrum": "quantum spectrum and relations of a family",
        "asymptotics": "Barnes combination ratios against the exponential leading term",
        "verify": "run every applicable check",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("input", help="d;w1,...,wN or a family name")
        _add_common(p, suppress=True)
        if name in ("gamma", "asymptotics"):
            p.add_argument("--ell", type=int, default=None)
        if name == "asymptotics":
            p.add_argument("--x-grid", type=_x_grid, default=list(map(Fraction, DEFAULT_X_GRID)))
    return parser


def run_command(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = make_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    text, prec, tol = args.input, args.precision, args.tol
    try:
        if args.command == "info":
            report = build_info(text, prec, tol)
        elif args.command == "hypergeom":
            report = build_hypergeom(text, prec, tol)
        elif args.command == "gram":
            report = build_gram(text, prec, tol)
        elif args.command == "gamma":
            report = build_gamma(text, prec, tol, ells=None if args.ell is None else [args.ell])
        elif args.command == "asymptotics":
            ells = None if args.ell is None else [args.ell]
            report = build_asymptotics(text, prec, tol, ells=ells, x_grid=args.x_grid)
        elif args.command == "spectrum":
            report = build_spectrum(text, prec, tol)
        else:
            report = build_verify(text, prec, tol, threads=args.threads)
    except InputError as exc:
        print(f"input error: {exc}", file=stderr)
        return 2
    except LGError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    payload = emit_report(report, "json" if args.json else "text").decode()
    stdout.write(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    return 0 if report.passed else 1


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
