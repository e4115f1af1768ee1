"""Walk through every check for the E7 pair W = x^3 y + y^3, weight system (9; 2, 3).

Run with: python3 demos/e7_walkthrough.py
"""

import mpmath as mp

from lgverify.classes import asymptotic_class, gamma_class, hrr_residual
from lgverify.gram import gram_inverse, gram_matrix, stokes_coefficients
from lgverify.hyper import build_hg_system, upsilon, verify_i_ode
from lgverify.quantum import build_quantum_algebra, char_poly, check_spectrum_conjecture, verify_quantum_relation
from lgverify.weights import parse_family

PREC = 128

spec = parse_family("E7")
ws = build_quantum_algebra(spec).ws
print(f"weight system {ws.label}: nu = {ws.nu}, c_hat = {ws.c_hat}")
print(f"narrow indices {ws.nar}, Mir {ws.mir}")

hs = build_hg_system(ws)
print(f"\nhypergeometric data: p = {hs.p}, q = {hs.q}")
print("  alpha =", [str(a) for a in hs.alpha])
print("  rho   =", [str(r) for r in hs.rho])
ode = verify_i_ode(ws, 3 * ws.d)
print(f"  I-function ODE to t^{3 * ws.d}: {'exact' if ode.passed else 'FAILS'}")
gap = max(abs(upsilon(hs, m, PREC, "gamma_product").value - upsilon(hs, m, PREC, "root_of_unity").value) for m in ws.nar)
print(f"  largest gap between the two Upsilon formulas: {mp.nstr(gap, 3)}")

print("\nGram matrix of the exceptional collection and its inverse:")
for row, inv in zip(gram_matrix(ws), gram_inverse(ws)):
    print(f"  {row}    {inv}")
print("Stokes coefficients d_1..d_nu:", stokes_coefficients(ws))

worst = max(gamma_class(ws, ell, PREC).max_distance(asymptotic_class(ws, ell, PREC)) for ell in range(ws.d))
print(f"\nGamma class versus asymptotic class, worst over all twists: {mp.nstr(worst, 3)}")
hrr = max(hrr_residual(ws, i, j, PREC) for i in range(ws.d) for j in range(ws.d))
print(f"HRR residual (two variables, so no sign): {mp.nstr(hrr, 3)}")

qa = build_quantum_algebra(spec)
print("\ncharacteristic polynomial of tau' * (low to high):", [str(c) for c in char_poly(qa)])
report = check_spectrum_conjecture(qa, PREC, 1e-12)
print(f"principal eigenvalue T = {mp.nstr(report.T, 30)}")
for lam, mult in report.eigenvalues:
    print(f"  {mp.nstr(lam.value, 20)}  (multiplicity {mult})")
print("spectrum conjecture:", "holds" if report.passed else "fails")
relations = verify_quantum_relation(qa)
print("relations:", ", ".join(c.name for c in relations.checks))
