"""Sweep the Fermat family and print the principal eigenvalue and the zero count.

For d - N >= 2 the nonzero spectrum of (nu/d) tau' * is T times the nu-th roots
of unity; broad sectors contribute extra zeros.

Run with: python3 demos/fermat_sweep.py
"""

import mpmath as mp

from lgverify.quantum import build_quantum_algebra, check_spectrum_conjecture
from lgverify.weights import FamilySpec

print(f"{'d':>3} {'N':>3} {'nu':>3} {'T':>24} {'zeros':>6}  verdict")
for d in range(3, 10):
    for n in range(1, d):
        qa = build_quantum_algebra(FamilySpec("Fermat", (d, n)))
        report = check_spectrum_conjecture(qa, 128, 1e-12)
        zeros = sum(m for lam, m in report.eigenvalues if lam.value == 0)
        verdict = "holds" if report.passed else "fails"
        if report.informational:
            verdict += " (nu = 1, not asserted)"
        print(f"{d:>3} {n:>3} {qa.ws.nu:>3} {mp.nstr(report.T, 20):>24} {zeros:>6}  {verdict}")
