import itertools
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgverify.errors import InvalidParameter, RelationViolated, UnsupportedFamily
from lgverify.quantum import (
    E7_REFERENCE_MATRIX,
    QuantumAlgebra,
    aberth_roots,
    berkowitz,
    build_quantum_algebra,
    char_poly,
    check_spectrum_conjecture,
    companion_matrix,
    eigenvalues,
    fermat_broad_dimension,
    generic_relation_constant,
    invariant_matrix,
    mat_power_vec,
    relation_report,
    square_free_decomposition,
    sweep_specs,
    verify_quantum_relation,
)
from lgverify.weights import FamilySpec, WeightSystem, parse_family

from conftest import close

PREC = 128
TOL = 1e-12
F = Fraction

# Principal eigenvalues from the closed forms, evaluated by an independent mpmath oracle at 200 digits
FROZEN_T = {
    "A:5": "0.5349922439811376192025864586069183491104",
    "E6": "0.07531053966650684817677846683410970501463",
    "E7": "0.09191159102242959001888580217118361360506",
    "E8": "0.1068187057083940290335381649652294408804",
    "DT:4": "0.07440942431100935037898620184088944970585",
    "Fermat:7,3": "0.1327817601385947545478557016729600141239",
}

# (family, number of nonzero eigenvalues nu, multiplicity of zero including broad sectors)
SPECTRUM_SHAPES = [("A:5", 4, 0), ("E6", 5, 1), ("E7", 4, 3), ("E8", 7, 1), ("DT:4", 3, 2), ("Fermat:7,3", 4, 2 + 30)]


def _algebra(tag: str) -> QuantumAlgebra:
    return build_quantum_algebra(parse_family(tag))


def _poly(*coeffs) -> list[Fraction]:
    return [F(c) for c in coeffs]


def _monomial_times(k: int, f: list[Fraction]) -> list[Fraction]:
    return [F(0)] * k + f


@pytest.mark.parametrize(
    "tag, expected",
    [
        ("A:5", _poly(F(-1, 5), 0, 0, 0, 1)),
        ("E6", _monomial_times(1, _poly(F(-1, 5184), 0, 0, 0, 0, 1))),
        ("E7", _monomial_times(3, _poly(F(-4, 2187), 0, 0, 0, 1))),
        ("E8", _monomial_times(1, _poly(F(-1, 30375), 0, 0, 0, 0, 0, 0, 1))),
        ("DT:4", _monomial_times(2, _poly(F(-1, 128), 0, 0, 1))),
        ("Fermat:7,3", _monomial_times(2, _poly(F(-1, 343), 0, 0, 0, 1))),
    ],
)
def test_characteristic_polynomials(tag: str, expected: list[Fraction]) -> None:
    assert char_poly(_algebra(tag)) == expected


def test_berkowitz_small_cases() -> None:
    assert berkowitz([]) == [1]
    assert berkowitz([[F(3)]]) == [-3, 1]
    assert berkowitz([[F(1), F(2)], [F(3), F(4)]]) == [-2, -5, 1]
    zero = [[F(0)] * 4 for _ in range(4)]
    assert berkowitz(zero) == [0, 0, 0, 0, 1]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=1, max_size=8))
def test_companion_round_trip(low: list[Fraction]) -> None:
    f = low + [F(1)]
    assert berkowitz(companion_matrix(f)) == f


def _det_leibniz(M: list[list[Fraction]]) -> Fraction:
    n = len(M)
    total = F(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = F((-1) ** inversions)
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total


@settings(max_examples=30, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    ),
    st.fractions(min_value=-6, max_value=6, max_denominator=5),
)
def test_berkowitz_matches_determinant_oracle(M: list[list[Fraction]], lam: Fraction) -> None:
    n = len(M)
    shifted = [[(lam if i == j else F(0)) - M[i][j] for j in range(n)] for i in range(n)]
    f = berkowitz(M)
    assert sum(c * lam**k for k, c in enumerate(f)) == _det_leibniz(shifted)


def test_companion_matrix_requires_monic() -> None:
    with pytest.raises(ValueError):
        companion_matrix([F(1), F(2)])


def test_square_free_decomposition() -> None:
    # (x - 1)^2 (x + 2)
    f = _poly(2, -3, 0, 1)
    assert square_free_decomposition(f) == [(_poly(2, 1), 1), (_poly(-1, 1), 2)]
    assert square_free_decomposition(_poly(5)) == []


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=6, unique=True))
def test_aberth_matches_mpmath_polyroots(roots: list[int]) -> None:
    f = [F(1)]
    for r in roots:
        f = [F(0)] + f
        for k in range(len(f) - 1):
            f[k] -= r * f[k + 1]
    found = aberth_roots(f, PREC + 32)
    with mp.workprec(PREC + 32):
        oracle = mp.polyroots([mp.mpf(c.numerator) / c.denominator for c in reversed(f)], maxsteps=200, extraprec=PREC)
    for z in oracle:
        assert min(abs(z - w) for w in found) < mp.mpf(2) ** -(PREC - 16)


def test_aberth_on_a_cyclotomic_factor() -> None:
    found = aberth_roots(_poly(F(-1, 5184), 0, 0, 0, 0, 1), PREC + 32)
    with mp.workprec(PREC + 32):
        r = mp.root(mp.mpf(1) / 5184, 5)
        for j in range(5):
            target = r * mp.expjpi(mp.mpf(2 * j) / 5)
            assert min(abs(target - z) for z in found) < mp.mpf(2) ** -(PREC - 8)


def test_aberth_requires_monic() -> None:
    with pytest.raises(ValueError):
        aberth_roots(_poly(1, 2), PREC)
    assert aberth_roots(_poly(1), PREC) == []


@pytest.mark.parametrize("tag, nonzero, zeros", SPECTRUM_SHAPES)
def test_eigenvalues_against_frozen_principal_values(tag: str, nonzero: int, zeros: int) -> None:
    spectrum = eigenvalues(_algebra(tag), PREC)
    with mp.workprec(PREC + 32):
        T = mp.mpf(FROZEN_T[tag])
        zero_mult = sum(m for lam, m in spectrum if lam.value == 0)
        ring = [lam.value for lam, m in spectrum if lam.value != 0]
        assert zero_mult == zeros
        assert len(ring) == nonzero
        for j in range(nonzero):
            target = T * mp.expjpi(mp.mpf(2 * j) / nonzero)
            assert min(abs(z - target) for z in ring) <= TOL * T


def test_eigenvalue_ordering() -> None:
    spectrum = eigenvalues(_algebra("E8"), PREC)
    assert spectrum[0][0].value == 0
    moduli = [abs(lam.value) for lam, _ in spectrum[1:]]
    assert all(a >= b - mp.mpf(2) ** -100 for a, b in zip(moduli, moduli[1:]))
    assert abs(mp.arg(spectrum[1][0].value)) < mp.mpf(2) ** -100


@pytest.mark.parametrize("tag", ["E7", "E8", "DT:4", "A:5", "E6", "Fermat:7,3"])
def test_spectrum_conjecture_on_named_families(tag: str) -> None:
    report = check_spectrum_conjecture(_algebra(tag), PREC, TOL)
    assert report.passed
    with mp.workprec(PREC + 32):
        assert abs(report.T - mp.mpf(FROZEN_T[tag])) <= mp.mpf(10) ** -35


def test_e7_spectrum_has_triple_zero() -> None:
    report = check_spectrum_conjecture(_algebra("E7"), PREC, TOL)
    assert report.eigenvalues[0][1] == 3
    assert report.total_dimension == 7


def test_spectrum_conjecture_detects_a_wrong_matrix() -> None:
    qa = _algebra("E7")
    doubled = tuple(tuple(2 * x for x in row) for row in qa.mat_x)
    wrong = QuantumAlgebra(qa.spec, qa.ws, qa.basis_labels, doubled, qa.scale)
    report = check_spectrum_conjecture(wrong, PREC, TOL)
    assert not report.max_modulus_ok and not report.passed


def test_e7_reference_matrix_equals_invariant_route() -> None:
    qa = _algebra("E7")
    labels, mat = invariant_matrix(FamilySpec("E7"), qa.basis_labels)
    assert labels == qa.basis_labels
    assert mat == tuple(tuple(F(x) for x in row) for row in E7_REFERENCE_MATRIX)


def _dt_e3_multiplication_parts(n: int) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """Multiplication by e3 on e1, e3, ..., e_(2n-1), e0 split into 3-point and 4-point parts."""
    size = n + 1
    three = [[F(0)] * size for _ in range(size)]
    four = [[F(0)] * size for _ in range(size)]
    for i in range(n - 1):
        three[i + 1][i] = F(1)
    four[0][n - 2] = F(1, 2 * n)
    four[1][n - 1] = F(1, 2 * n)
    return three, four


@pytest.mark.parametrize("n", range(3, 9))
def test_dt_matrix_against_e3_multiplication(n: int) -> None:
    qa = _algebra(f"DT:{n}")
    three, four = _dt_e3_multiplication_parts(n)
    expected = tuple(tuple(F(1, 2) * (a + b / 4) for a, b in zip(r3, r4)) for r3, r4 in zip(three, four))
    assert qa.mat_x == expected


@pytest.mark.parametrize("n", range(3, 9))
def test_dt_half_of_e3_multiplication_breaks_the_relation(n: int) -> None:
    qa = _algebra(f"DT:{n}")
    three, four = _dt_e3_multiplication_parts(n)
    literal = tuple(tuple(F(1, 2) * (a + b) for a, b in zip(r3, r4)) for r3, r4 in zip(three, four))
    wrong = QuantumAlgebra(qa.spec, qa.ws, qa.basis_labels, literal, qa.scale)
    with pytest.raises(RelationViolated):
        verify_quantum_relation(wrong)
    assert not check_spectrum_conjecture(wrong, PREC, TOL).passed


@pytest.mark.parametrize("tag", ["E6", "E8", "A:7", "DT:6"])
def test_invariant_matrix_is_the_built_algebra(tag: str) -> None:
    qa = _algebra(tag)
    assert invariant_matrix(qa.spec) == (qa.basis_labels, qa.mat_x)


def test_invariant_matrix_rejects_fermat() -> None:
    with pytest.raises(UnsupportedFamily):
        invariant_matrix(FamilySpec("Fermat", (7, 3)))


@pytest.mark.parametrize("d, n", [(5, 3), (7, 3), (4, 2), (6, 2), (8, 4), (6, 1)])
def test_fermat_broad_dimension_brute_force(d: int, n: int) -> None:
    ws = WeightSystem(d, (1,) * n)
    expected = sum(1 for b in itertools.product(range(d - 1), repeat=n) if sum(b) % d == (-n) % d)
    assert fermat_broad_dimension(ws) == expected


def test_fermat_broad_dimension_examples() -> None:
    assert fermat_broad_dimension(WeightSystem(5, (1, 1, 1))) == 12
    assert fermat_broad_dimension(WeightSystem(7, (1, 1, 1))) == 30
    assert fermat_broad_dimension(WeightSystem(4, (1, 1))) == 3
    assert fermat_broad_dimension(WeightSystem(9, (1,))) == 0
    with pytest.raises(InvalidParameter):
        fermat_broad_dimension(WeightSystem(9, (2, 3)))


@pytest.mark.parametrize(
    "tag, dim, total",
    [("E7", 7, 7), ("DT:3", 4, 4), ("DT:7", 8, 8), ("E6", 6, 6), ("E8", 8, 8), ("Fermat:7,3", 6, 36), ("Fermat:5,3", 4, 16), ("A:6", 5, 5)],
)
def test_dimension_bookkeeping(tag: str, dim: int, total: int) -> None:
    qa = _algebra(tag)
    assert (qa.dim, qa.total_dimension) == (dim, total)


def test_fermat_with_index_one_is_informational() -> None:
    qa = _algebra("Fermat:5,4")
    assert qa.informational and qa.broad_zero_count == 0 and qa.broad_dimension == 52


@pytest.mark.parametrize("tag", ["A:2", "A:9", "DT:3", "DT:10", "E6", "E7", "E8", "Fermat:7,3", "Fermat:12,2", "Fermat:5,4"])
def test_quantum_relations_hold_exactly(tag: str) -> None:
    report = verify_quantum_relation(_algebra(tag))
    assert report.passed
    assert report.checks[0].name.startswith("generic")


def test_e7_sixth_power_relation() -> None:
    qa = _algebra("E7")
    u1 = qa.vector({"e1": 1})
    lhs = mat_power_vec(qa.mat_x, u1, 6)
    rhs = [F(4, 2187) * x for x in mat_power_vec(qa.mat_x, u1, 2)]
    assert lhs == rhs and any(rhs)


@pytest.mark.parametrize("ws, constant", [(WeightSystem(9, (2, 3)), F(4 * 27, 9**5)), (WeightSystem(5, (1,)), F(1, 5**1))])
def test_generic_relation_constant(ws: WeightSystem, constant: Fraction) -> None:
    assert generic_relation_constant(ws) == constant


def test_tampered_matrix_violates_relations() -> None:
    qa = _algebra("E6")
    rows = [list(row) for row in qa.mat_x]
    j = next(j for j, x in enumerate(rows[1]) if x)
    rows[1][j] += F(1, 7)
    wrong = QuantumAlgebra(qa.spec, qa.ws, qa.basis_labels, tuple(map(tuple, rows)), qa.scale)
    assert not relation_report(wrong).passed
    with pytest.raises(RelationViolated) as info:
        verify_quantum_relation(wrong)
    assert any(info.value.residual)


def test_quantum_algebra_validates_shape() -> None:
    qa = _algebra("A:3")
    with pytest.raises(ValueError):
        QuantumAlgebra(qa.spec, qa.ws, ("a",), qa.mat_x, qa.scale)
    with pytest.raises(ValueError):
        QuantumAlgebra(qa.spec, qa.ws, qa.basis_labels, qa.mat_x, qa.scale, broad_zero_count=-1)


def test_sweep_specs_cover_the_families() -> None:
    specs = sweep_specs()
    tags = [str(s) for s in specs]
    assert [f"A:{n}" for n in range(2, 14)] == [t for t in tags if t.startswith("A:")]
    assert [f"DT:{n}" for n in range(3, 11)] == [t for t in tags if t.startswith("DT:")]
    assert {"E6", "E7", "E8"} <= set(tags)
    fermat = {s.params for s in specs if s.tag == "Fermat"}
    assert fermat == {(d, n) for d in range(3, 13) for n in range(2, d) if d - n >= 2}


def test_matrix_spectrum_agrees_with_numpy() -> None:
    qa = _algebra("E8")
    arr = np.array([[float(x) for x in row] for row in qa.mat_x]) * float(qa.scale)
    numeric = sorted(abs(z) for z in np.linalg.eigvals(arr))
    exact = sorted(float(abs(lam.value)) for lam, m in eigenvalues(qa, PREC) for _ in range(m))
    assert np.allclose(numeric, exact, atol=1e-9)
    assert close(max(exact), mp.mpf(FROZEN_T["E8"]), 40)
