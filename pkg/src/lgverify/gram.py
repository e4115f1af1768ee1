"""Exact Gram data of the exceptional collection C(l)^st, C(l-1)^st, ...

All quantities are integers.  a(n) are the coefficients of prod_j (1 - x^w_j),
L_w(n) count the solutions of sum_j k_j w_j = n, and the Gram matrix is
M[i][j] = chi(E_i, E_j) = a(j - i) for the collection E_i = C(l - i)^st.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import NonIntegerResult
from .exact import Cyclotomic, _power_table
from .weights import WeightSystem

ENUMERATION_CHECK_LIMIT = 20


@dataclass(frozen=True)
class GramData:
    ws: WeightSystem
    a: tuple[int, ...]
    L: tuple[int, ...]
    M: tuple[tuple[int, ...], ...]
    Minv: tuple[tuple[int, ...], ...]
    stokes: tuple[int, ...]


def aw_coefficients(ws: WeightSystem) -> list[int]:
    """Coefficients a(0..d-nu) of prod_j (1 - x^w_j)."""
    ws.require_general_type()
    poly = [1]
    for w in ws.weights:
        nxt = poly + [0] * w
        for k, c in enumerate(poly):
            nxt[k + w] -= c
        poly = nxt
    assert len(poly) == ws.d - ws.nu + 1
    return poly


def _partitions_by_enumeration(weights: tuple[int, ...], n: int) -> int:
    bounds = [range(n // w + 1) for w in weights]
    return sum(1 for ks in itertools.product(*bounds) if sum(k * w for k, w in zip(ks, weights)) == n)


def partition_counts(ws: WeightSystem, nmax: int) -> list[int]:
    """L_w(0..nmax), by inverting the power series prod_j (1 - x^w_j)."""
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    poly = [1]
    for w in ws.weights:
        nxt = poly + [0] * w
        for k, c in enumerate(poly):
            nxt[k + w] -= c
        poly = nxt
    out = [0] * (nmax + 1)
    out[0] = 1
    for n in range(1, nmax + 1):
        out[n] = -sum(poly[k] * out[n - k] for k in range(1, min(n, len(poly) - 1) + 1))
    for n in range(min(nmax, ENUMERATION_CHECK_LIMIT) + 1):
        assert out[n] == _partitions_by_enumeration(ws.weights, n), (ws, n)
    return out


@lru_cache(maxsize=256)
def _reduction_matrix(d: int) -> np.ndarray:
    return np.array(_power_table(d), dtype=np.int64)


def _group_ring_products(ws: WeightSystem) -> dict[int, np.ndarray]:
    """For each narrow m, prod_j (1 - x^(-w_j m)) in Z[x]/(x^d - 1)."""
    d = ws.d
    out = {}
    for m in ws.nar:
        poly = np.zeros(d, dtype=np.int64)
        poly[0] = 1
        for w in ws.weights:
            poly = poly - np.roll(poly, (-w * m) % d)
        out[m] = poly
    return out


def euler_pairing_entries(ws: WeightSystem) -> list[int]:
    """(1/d) sum_m omega^(n m) prod_j (1 - omega^(-w_j m)) for all n in [0, d).

    Each sum is formed in the group ring Z[x]/(x^d - 1) and pushed to
    Q(zeta_d) = Q[x]/(Phi_d); the image must be a rational integer.
    """
    ws.require_general_type()
    d = ws.d
    prods = _group_ring_products(ws)
    table = _reduction_matrix(d)
    bound = sum(int(np.abs(p).sum()) for p in prods.values()) * int(np.abs(table).max())
    use_int = bound < 2**62
    results = []
    for n in range(d):
        acc = np.zeros(d, dtype=np.int64)
        for m, p in prods.items():
            acc += np.roll(p, (n * m) % d)
        if use_int:
            reduced = acc @ table
        else:
            reduced = np.array(acc, dtype=object) @ np.array(table, dtype=object)
        if any(int(c) for c in reduced[1:]):
            raise NonIntegerResult(f"non-rational Euler pairing entry for n={n} on {ws}")
        value = Fraction(int(reduced[0]), d)
        if value.denominator != 1:
            raise NonIntegerResult(f"Euler pairing entry {value} for n={n} on {ws}")
        results.append(int(value))
    return results


def euler_pairing_entry(ws: WeightSystem, n: int) -> int:
    if not 0 <= n < ws.d:
        raise ValueError("n must satisfy 0 <= n < d")
    value = euler_pairing_entries(ws)[n]
    a = aw_coefficients(ws)
    expected = a[n] if n < len(a) else 0
    assert value == expected, f"magic identity fails at n={n} for {ws}: {value} != {expected}"
    return value


def euler_pairing_entry_cyclotomic(ws: WeightSystem, n: int) -> Cyclotomic:
    """The same sum evaluated term by term with Cyclotomic arithmetic (slow reference route)."""
    from .exact import root_of_unity

    d = ws.d
    acc = Cyclotomic.zero(d)
    for m in ws.nar:
        term = root_of_unity(d, n * m)
        for w in ws.weights:
            term = term * (1 - root_of_unity(d, -w * m))
        acc = acc + term
    return acc * Fraction(1, d)


def gram_matrix(ws: WeightSystem) -> list[list[int]]:
    ws.require_general_type()
    nu = ws.nu
    a = aw_coefficients(ws)
    a = a + [0] * max(0, nu - len(a))  # a(n) = 0 for n > d - nu
    return [[a[j - i] if j >= i else 0 for j in range(nu)] for i in range(nu)]


def upper_unitriangular_inverse(M: list[list[int]]) -> list[list[int]]:
    n = len(M)
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        for row in range(n - 1, -1, -1):
            s = inv[row][col]
            for k in range(row + 1, n):
                s -= M[row][k] * inv[k][col]
            inv[row][col] = s / M[row][row]
    out = []
    for row in inv:
        assert all(x.denominator == 1 for x in row)
        out.append([int(x) for x in row])
    return out


def gram_inverse(ws: WeightSystem) -> list[list[int]]:
    M = gram_matrix(ws)
    inv = upper_unitriangular_inverse(M)
    L = partition_counts(ws, ws.nu)
    nu = ws.nu
    for i in range(nu):
        for j in range(nu):
            assert inv[i][j] == (L[j - i] if j >= i else 0)
    return inv


def matmul_int(A, B) -> list[list[int]]:
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def stokes_coefficients(ws: WeightSystem) -> list[int]:
    """d_1..d_nu with d_h = L_w(nu - h)."""
    ws.require_general_type()
    nu = ws.nu
    L = partition_counts(ws, nu)
    dh = {h: L[nu - h] for h in range(1, nu + 1)}
    a = aw_coefficients(ws)
    for j in range(nu):
        total = sum(a[i] * dh[nu - j + i] for i in range(j + 1) if i < len(a))
        assert total == (1 if j == 0 else 0), f"Stokes recursion fails at j={j} for {ws}"
    assert dh[nu] == 1
    return [dh[h] for h in range(1, nu + 1)]


def gram_data(ws: WeightSystem) -> GramData:
    M = gram_matrix(ws)
    Minv = gram_inverse(ws)
    return GramData(
        ws=ws,
        a=tuple(aw_coefficients(ws)),
        L=tuple(partition_counts(ws, ws.nu - 1)),
        M=tuple(map(tuple, M)),
        Minv=tuple(map(tuple, Minv)),
        stokes=tuple(stokes_coefficients(ws)),
    )


def symmetry_holds(ws: WeightSystem) -> bool:
    a = aw_coefficients(ws)
    top = ws.d - ws.nu
    sign = (-1) ** ws.n
    return all(a[top - n] == sign * a[n] for n in range(top + 1))


def cartan_check(ws: WeightSystem) -> bool:
    """For (d; 1), M + M^T is the Cartan matrix of type A_(d-1)."""
    if ws.weights != (1,):
        raise ValueError("the Cartan check applies to weight systems (d; 1)")
    M = gram_matrix(ws)
    n = len(M)
    for i in range(n):
        for j in range(n):
            expected = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
            if M[i][j] + M[j][i] != expected:
                return False
    return True


def stokes_root_sums(ws: WeightSystem) -> dict[int, Cyclotomic]:
    """sum_h d_h omega^(-h m) for each narrow m, exactly."""
    dh = stokes_coefficients(ws)
    d = ws.d
    out = {}
    for m in ws.nar:
        poly = [0] * d
        for h, c in enumerate(dh, start=1):
            poly[(-h * m) % d] += c
        out[m] = Cyclotomic.from_group_ring(d, poly)
    return out


def p_zero_identity_holds(ws: WeightSystem) -> bool:
    """When p = |Nar| - nu = 0, sum_h d_h omega^(-h m) = (-1)^N for every narrow m."""
    if len(ws.nar) != ws.nu:
        raise ValueError("the identity applies only when p = 0")
    sign = (-1) ** ws.n
    return all(v == sign for v in stokes_root_sums(ws).values())


__all__ = [
    "GramData",
    "aw_coefficients",
    "partition_counts",
    "euler_pairing_entry",
    "euler_pairing_entries",
    "euler_pairing_entry_cyclotomic",
    "gram_matrix",
    "gram_inverse",
    "stokes_coefficients",
    "gram_data",
    "symmetry_holds",
    "cartan_check",
    "stokes_root_sums",
    "p_zero_identity_holds",
    "matmul_int",
    "upper_unitriangular_inverse",
]
