"""One check per acceptance criterion, at the required tolerances and time limits.

Every test records a single PASS/FAIL line, collected in the terminal summary.
Criteria that cannot hold as literally stated are strict xfails, each paired
with a passing test of the statement that does hold.
"""

import math
import time
from fractions import Fraction

import mpmath as mp
import pytest

from lgverify.classes import chern_pairing_integer, hrr_residual
from lgverify.classes import asymptotic_class, gamma_class
from lgverify.gram import (
    aw_coefficients,
    cartan_check,
    euler_pairing_entries,
    gram_data,
    matmul_int,
    partition_counts,
    stokes_coefficients,
    symmetry_holds,
)
from lgverify.hyper import barnes_ratio, build_hg_system, upsilon, verify_i_ode
from lgverify.quantum import (
    build_quantum_algebra,
    check_spectrum_conjecture,
    eigenvalues,
    sweep_specs,
    verify_quantum_relation,
)
from lgverify.weights import FamilySpec, WeightSystem, mir_set, parse_family, tau_coefficients

from conftest import NAMED_FAMILIES, acceptance_line, named, random_weight_systems

PREC = 128
F = Fraction


def _fracs(*nums: int, den: int) -> list[Fraction]:
    return [F(n, den) for n in nums]


# Reference table of indices: tag -> (Nar, p, q, alpha multiset, rho_1..rho_q set)
REFERENCE_TABLE = {
    "A:5": ((1, 2, 3, 4), 0, 3, [], _fracs(4, 3, 2, den=5)),
    "DT:4": ((1, 3, 5, 7), 1, 3, [F(1, 8)], _fracs(1, 2, 3, den=4)),
    "DT:5": ((1, 3, 5, 7, 9), 1, 4, [F(1, 10)], _fracs(1, 2, 3, 4, den=5)),
    "E6": ((1, 2, 5, 7, 10, 11), 1, 5, [F(1, 12)], _fracs(11, 10, 7, 5, 2, den=12)),
    "E7": ((1, 2, 4, 5, 7, 8), 2, 5, [F(1, 9), F(11, 18)], _fracs(8, 6, 5, 3, 2, den=9)),
    "E8": ((1, 2, 4, 7, 8, 11, 13, 14), 1, 7, [F(1, 15)], _fracs(14, 12, 9, 8, 5, 3, 2, den=15)),
    "Fermat:7,3": ((1, 2, 3, 4, 5, 6), 2, 5, [F(1, 7), F(1, 7)], _fracs(6, 5, 4, 3, 2, den=7)),
}


def _table_mismatches(skip_e6_rho: bool) -> list[str]:
    bad = []
    for tag, (nar, p, q, alpha, rho) in REFERENCE_TABLE.items():
        hs = build_hg_system(named(tag))
        fields = {
            "Nar": (hs.ws.nar, nar),
            "p": (hs.p, p),
            "q": (hs.q, q),
            "alpha": (sorted(hs.alpha), sorted(alpha)),
            "rho": (sorted(hs.rho[1:]), sorted(rho)),
        }
        for name, (got, want) in fields.items():
            if skip_e6_rho and (tag, name) == ("E6", "rho"):
                continue
            if got != want:
                bad.append(f"{tag}.{name}")
    return bad


@pytest.mark.xfail(strict=True, reason="the reference E6 rho row contradicts the rho definition and the alpha/rho sum identity")
def test_criterion_1_table_of_indices() -> None:
    start = time.perf_counter()
    bad = _table_mismatches(skip_e6_rho=False)
    elapsed = time.perf_counter() - start
    acceptance_line(1, not bad and elapsed < 1, f"table rows, mismatches {bad or 'none'}, {elapsed:.2f}s")
    assert not bad and elapsed < 1


def test_criterion_1_table_of_indices_except_e6_rho() -> None:
    start = time.perf_counter()
    bad = _table_mismatches(skip_e6_rho=True)
    e6 = build_hg_system(named("E6"))
    e6_rho_ok = list(e6.rho[1:]) == [1 + F(1 - m, 12) for m in e6.ws.nar[1:]]
    elapsed = time.perf_counter() - start
    ok = not bad and e6_rho_ok and elapsed < 1
    acceptance_line(1, ok, f"table rows with E6 rho from its definition, mismatches {bad or 'none'}, {elapsed:.2f}s")
    assert ok


# Principal eigenvalues from the closed forms, evaluated by an independent mpmath oracle
SPECTRA = {
    "A:5": ("0.5349922439811376192025864586069183491104", 4, 0),
    "E6": ("0.07531053966650684817677846683410970501463", 5, 1),
    "E7": ("0.09191159102242959001888580217118361360506", 4, 3),
    "E8": ("0.1068187057083940290335381649652294408804", 7, 1),
    "DT:4": ("0.07440942431100935037898620184088944970585", 3, 2),
    "Fermat:7,3": ("0.1327817601385947545478557016729600141239", 4, 2 + 30),
}


def test_criterion_2_quantum_spectra() -> None:
    start = time.perf_counter()
    bad = []
    for tag, (digits, nu, zeros) in SPECTRA.items():
        spectrum = eigenvalues(build_quantum_algebra(parse_family(tag)), PREC)
        with mp.workprec(PREC + 32):
            T = mp.mpf(digits)
            expected = [T * mp.expjpi(mp.mpf(2 * j) / nu) for j in range(nu)]
            ring = [lam.value for lam, m in spectrum if lam.value != 0 for _ in range(m)]
            zero = sum(m for lam, m in spectrum if lam.value == 0)
            matched = len(ring) == nu and all(min(abs(z - e) for z in ring) <= 1e-12 * T for e in expected)
            matched = matched and all(min(abs(z - e) for e in expected) <= 1e-12 * T for z in ring)
        if not matched or zero != zeros:
            bad.append(tag)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 5
    acceptance_line(2, ok, f"spectra of {len(SPECTRA)} families within 1e-12, mismatches {bad or 'none'}, {elapsed:.2f}s")
    assert ok


def test_criterion_3_spectrum_conjecture_sweep() -> None:
    specs = sweep_specs()
    failing = [str(s) for s in specs if not check_spectrum_conjecture(build_quantum_algebra(s), PREC, 1e-12).passed]
    acceptance_line(3, not failing, f"{len(specs)} family instances, failing {failing or 'none'}")
    assert not failing


def _gram_failures(ws: WeightSystem) -> list[str]:
    data = gram_data(ws)
    nu = ws.nu
    bad = []
    padded = list(data.a) + [0] * ws.d
    if euler_pairing_entries(ws) != padded[: ws.d]:
        bad.append("magic")
    if matmul_int(data.M, data.Minv) != [[int(i == j) for j in range(nu)] for i in range(nu)]:
        bad.append("inverse")
    L = partition_counts(ws, nu)
    if any(data.Minv[i][j] != (L[j - i] if j >= i else 0) for i in range(nu) for j in range(nu)):
        bad.append("superdiagonals")
    dh = {h: L[nu - h] for h in range(1, nu + 1)}
    for j in range(nu):
        if sum(data.a[i] * dh[nu - j + i] for i in range(min(j + 1, len(data.a)))) != int(j == 0):
            bad.append("stokes")
            break
    if list(stokes_coefficients(ws)) != [dh[h] for h in range(1, nu + 1)]:
        bad.append("stokes")
    a = aw_coefficients(ws)
    if any(a[ws.d - nu - n] != (-1) ** ws.n * a[n] for n in range(ws.d - nu + 1)) or not symmetry_holds(ws):
        bad.append("symmetry")
    return bad


def test_criterion_4_gram_identities() -> None:
    start = time.perf_counter()
    systems = random_weight_systems(200, seed=20240611) + [named(t) for t in NAMED_FAMILIES]
    failures = {ws.label: b for ws in systems if (b := _gram_failures(ws))}
    cartan = all(cartan_check(WeightSystem(d, (1,))) for d in range(2, 11))
    elapsed = time.perf_counter() - start
    ok = not failures and cartan and elapsed < 30
    acceptance_line(4, ok, f"{len(systems)} weight systems exact, r-spin Cartan {cartan}, failures {failures or 'none'}, {elapsed:.1f}s")
    assert ok


def _gamma_and_pv_ok() -> tuple[bool, bool]:
    bound = mp.ldexp(1, -(PREC - 24))
    gamma_ok = pv_ok = True
    for tag in NAMED_FAMILIES:
        ws = named(tag)
        a = aw_coefficients(ws)
        for ell in range(ws.d):
            gamma_ok &= gamma_class(ws, ell, PREC).max_distance(asymptotic_class(ws, ell, PREC)) <= bound
        for i in range(ws.d):
            for j in range(ws.d):
                n = (i - j) % ws.d
                pv_ok &= chern_pairing_integer(ws, i, j) == (a[n] if n < len(a) else 0)
    return bool(gamma_ok), bool(pv_ok)


def _hrr_failures(signed: bool) -> list[str]:
    bound = mp.ldexp(1, -(PREC - 32))
    bad = []
    for tag in NAMED_FAMILIES:
        ws = named(tag)
        sign = (-1) ** ws.n if signed else 1
        if any(hrr_residual(ws, i, j, PREC, sign=sign) > bound for i in range(ws.d) for j in range(ws.d)):
            bad.append(tag)
    return bad


@pytest.mark.xfail(strict=True, reason="for an odd number of variables the Gamma pairing is minus the PV pairing")
def test_criterion_5_gamma_structure() -> None:
    gamma_ok, pv_ok = _gamma_and_pv_ok()
    bad = _hrr_failures(signed=False)
    ok = gamma_ok and pv_ok and not bad
    acceptance_line(5, ok, f"Gamma = asymptotic {gamma_ok}, PV = Gram {pv_ok}, plain HRR failing {bad or 'none'}")
    assert ok


def test_criterion_5_gamma_structure_with_sign() -> None:
    gamma_ok, pv_ok = _gamma_and_pv_ok()
    bad = _hrr_failures(signed=True)
    ok = gamma_ok and pv_ok and not bad
    acceptance_line(5, ok, f"Gamma = asymptotic {gamma_ok}, PV = Gram {pv_ok}, HRR with sign (-1)^N failing {bad or 'none'}")
    assert ok


def test_criterion_6_i_function_ode() -> None:
    systems = [WeightSystem(5, (1,)), WeightSystem(9, (2, 3)), WeightSystem(12, (4, 3)), WeightSystem(7, (1, 1, 1))]
    results = {ws.label: verify_i_ode(ws, 3 * ws.d).passed for ws in systems}
    ok = all(results.values())
    acceptance_line(6, ok, f"zero residual to t^(3d) for {results}")
    assert ok


def test_criterion_7_upsilon_two_formulas() -> None:
    worst = mp.mpf(0)
    for tag in NAMED_FAMILIES:
        hs = build_hg_system(named(tag))
        for m in hs.ws.nar:
            a = upsilon(hs, m, PREC, "gamma_product").value
            b = upsilon(hs, m, PREC, "root_of_unity").value
            with mp.workprec(PREC + 32):
                worst = max(worst, abs(a - b) / max(1, abs(b)))
    ok = worst <= mp.ldexp(1, -(PREC - 32))
    acceptance_line(7, ok, f"max relative gap 2^{float(mp.log(worst, 2)) if worst else float('-inf'):.1f} over {len(NAMED_FAMILIES)} families")
    assert ok


def test_criterion_8_barnes_asymptotics() -> None:
    start = time.perf_counter()
    worst = 0.0
    bad = []
    for tag in ["A:3", "A:5", "E6", "DT:4", "Fermat:7,3"]:
        hs = build_hg_system(named(tag))
        nu = hs.ws.nu
        for ell in range(1 - nu, 1):
            for x in (25, 50, 100, 200):
                with mp.workprec(PREC):
                    gap = abs(barnes_ratio(hs, ell, x, PREC).value - 1)
                    share = float(gap / (5 * mp.power(x, -mp.mpf(1) / nu)))
                worst = max(worst, share)
                if share > 1:
                    bad.append((tag, ell, x))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    acceptance_line(8, ok, f"worst |ratio - 1| / (5 x^(-1/nu)) = {worst:.3f}, violations {bad or 'none'}, {elapsed:.1f}s")
    assert ok


def test_criterion_9_tau_and_mir() -> None:
    bad = []
    for d in range(2, 13):
        for n in range(1, d):
            ws = WeightSystem(d, (1,) * n)
            if d > n + 1:
                expected = {2: F(1)}
            elif d > 2:
                expected = {1: F(1, math.factorial(d) * d**n), 2: F(1)}
            else:
                expected = {1: F(1, 4)}
            if tau_coefficients(ws) != expected:
                bad.append(ws.label)
    q11 = WeightSystem(18, (7, 4, 6))
    mir_ok = mir_set(q11) == tuple(m for m in q11.nar if m != 17)
    ok = not bad and mir_ok
    acceptance_line(9, ok, f"Fermat tau mismatches {bad or 'none'}, Mir(18;7,4,6) = Nar minus 17: {mir_ok}")
    assert ok


def test_criterion_10_quantum_relations() -> None:
    specs = sweep_specs(fermat_nu_min=1) + [FamilySpec("Fermat", (d, 1)) for d in range(2, 13)]
    failing = []
    for spec in specs:
        try:
            verify_quantum_relation(build_quantum_algebra(spec))
        except Exception as exc:  # any failure counts against the criterion
            failing.append(f"{spec}: {type(exc).__name__}")
    acceptance_line(10, not failing, f"{len(specs)} family instances with zero residual, failing {failing or 'none'}")
    assert not failing
