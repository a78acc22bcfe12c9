import itertools
import os
import sys
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from tripotent.errors import (
    NotUpperTriangular,
    ShapeMismatch,
    UnsupportedModulus,
    VerificationFailed,
)
from tripotent.matz import MatZ, direct_sum, is_diagonal, mat_mul, mat_pow
from tripotent.rcf import frobenius_form
from tripotent.zhou import (
    Decomposition,
    _split_block,
    certify,
    decompose_matrix,
    decompose_scalar,
    decompose_triangular,
    quintic_criterion,
    triangular_quintic_defect_nilpotent,
    verify,
)
from tripotent.zmod import Residue

SUPPORTED = (2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 30, 45, 60, 360)


@st.composite
def matrices(draw, moduli=SUPPORTED, max_dim=4, upper=False):
    m = draw(st.sampled_from(moduli))
    d = draw(st.integers(min_value=1, max_value=max_dim))
    rows = [
        [draw(st.integers(0, m - 1)) if (j >= i or not upper) else 0 for j in range(d)]
        for i in range(d)
    ]
    return MatZ(m, rows)


def assert_sound(a, d):
    report = verify(a, d)
    assert report.ok, report
    assert mat_pow(d.nil, d.nilpotency_index_bound).is_zero()


def test_zero_and_identity():
    d = decompose_matrix(MatZ.zeros(30, 3))
    assert d.t1.is_zero() and d.t2.is_zero() and d.nil.is_zero()
    d = decompose_matrix(MatZ.identity(30, 3))
    assert d.t1 == MatZ.identity(30, 3)
    assert d.t2.is_zero() and d.nil.is_zero()


def test_swap_over_z3():
    a = MatZ(3, [[0, 1], [1, 0]])
    d = decompose_matrix(a)
    assert_sound(a, d)
    assert d.nilpotency_index_bound == 2


def test_verify_reports_observed_index():
    a = MatZ(3, [[0, 1], [1, 0]])
    d = Decomposition(
        MatZ(3, [[0, 1], [0, 1]]),
        MatZ(3, [[0, 0], [0, 2]]),
        MatZ(3, [[0, 0], [1, 0]]),
        3,
        2,
    )
    report = verify(a, d)
    assert report.ok
    assert report.observed_nil_index == 2


def test_verify_detects_a_wrong_sum():
    eye = MatZ.identity(5, 2)
    report = verify(eye, Decomposition(eye, MatZ.zeros(5, 2), eye, 5, 2))
    assert not report.sum_ok
    assert not report.n_nilpotent
    assert report.observed_nil_index is None
    assert not report.ok
    with pytest.raises(VerificationFailed):
        certify(eye, Decomposition(eye, MatZ.zeros(5, 2), eye, 5, 2))


def test_verify_ignores_an_oversized_index_bound():
    eye = MatZ.identity(3, 2)
    zero = MatZ.zeros(3, 2)
    start = time.perf_counter()
    report = verify(eye, Decomposition(zero, zero, eye, 3, 10**12))
    assert time.perf_counter() - start < 1
    assert report.sum_ok and not report.n_nilpotent
    assert report.observed_nil_index is None


def test_verify_rejects_mismatched_shapes():
    d = decompose_matrix(MatZ.identity(6, 2))
    with pytest.raises(ShapeMismatch):
        verify(MatZ.identity(6, 3), d)


def test_z6_worked_case_verifies():
    a = MatZ(6, [[4, 1], [3, 2]])
    assert_sound(a, decompose_matrix(a))


@pytest.mark.parametrize("n", [7, 11, 14, 21, 35])
def test_modulus_gate(n):
    with pytest.raises(UnsupportedModulus):
        decompose_matrix(MatZ.identity(n, 2))
    with pytest.raises(UnsupportedModulus):
        decompose_scalar(Residue(1, n))
    with pytest.raises(UnsupportedModulus):
        decompose_triangular(MatZ.identity(n, 2))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_decompose_matrix_is_sound(a):
    assert_sound(a, decompose_matrix(a))


@settings(max_examples=60, deadline=None)
@given(matrices(moduli=(4, 8, 9, 27, 25, 125), max_dim=4))
def test_lift_changes_nothing_mod_p(a):
    p = next(q for q in (2, 3, 5) if a.modulus % q == 0)
    form = frobenius_form(a.reduce(p))
    splits = [_split_block(b) for b in form.blocks]
    d = decompose_matrix(a)
    for i, part in ((0, d.t1), (1, d.t2)):
        expected = mat_mul(mat_mul(form.P, direct_sum(s[i] for s in splits)), form.Pinv)
        assert part.reduce(p) == expected


def test_deterministic():
    a = MatZ(360, [[17, 200, 3], [5, 359, 44], [0, 12, 90]])
    first = decompose_matrix(a).as_certificate(True)
    second = decompose_matrix(a).as_certificate(True)
    assert first == second


def test_scalar_known_values():
    d = decompose_scalar(Residue(0, 30))
    assert (d.t1, d.t2, d.nil) == (MatZ(30, [[0]]),) * 3
    d = decompose_scalar(Residue(1, 30))
    assert (d.t1, d.t2, d.nil) == (MatZ(30, [[1]]), MatZ(30, [[0]]), MatZ(30, [[0]]))
    d = decompose_scalar(Residue(7, 30))
    assert (d.t1, d.t2, d.nil) == (MatZ(30, [[1]]), MatZ(30, [[6]]), MatZ(30, [[0]]))
    assert_sound(MatZ(30, [[7]]), d)


@pytest.mark.parametrize("n", [30, 360, 45])
def test_scalar_matches_matrix_path(n):
    for a in range(n):
        scalar = decompose_scalar(Residue(a, n))
        matrix = decompose_matrix(MatZ(n, [[a]]))
        assert scalar.as_certificate(True) == matrix.as_certificate(True)
        assert_sound(MatZ(n, [[a]]), scalar)


def test_triangular_known_values():
    d = decompose_triangular(MatZ.diagonal(6, [1, 0]))
    assert d.t1 == MatZ.diagonal(6, [1, 0])
    assert d.t2.is_zero() and d.nil.is_zero()

    a = MatZ(6, [[0, 5], [0, 0]])
    d = decompose_triangular(a)
    assert d.t1.is_zero() and d.t2.is_zero() and d.nil == a

    a = MatZ(6, [[2, 1], [0, 3]])
    d = decompose_triangular(a)
    assert d.t1 == MatZ.diagonal(6, [4, 3])
    assert d.t2 == MatZ.diagonal(6, [4, 0])
    assert d.nil == MatZ(6, [[0, 1], [0, 0]])
    assert_sound(a, d)

    with pytest.raises(NotUpperTriangular):
        decompose_triangular(MatZ(6, [[0, 0], [5, 0]]))


@settings(max_examples=100, deadline=None)
@given(matrices(moduli=(30, 360, 12), max_dim=5, upper=True))
def test_triangular_is_sound_with_diagonal_tripotents(a):
    d = decompose_triangular(a)
    assert_sound(a, d)
    assert is_diagonal(d.t1) and is_diagonal(d.t2)
    assert triangular_quintic_defect_nilpotent(a)


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8, 9, 10, 12, 25, 30, 60, 360])
def test_quintic_criterion_holds_on_supported_moduli(n):
    assert quintic_criterion(n)


@pytest.mark.parametrize("n", [7, 11, 14, 21, 35, 49])
def test_quintic_criterion_fails_elsewhere(n):
    assert not quintic_criterion(n)


def test_certificate_fields():
    a = MatZ(3, [[0, 1], [1, 0]])
    cert = certify(a, decompose_matrix(a))
    assert list(cert.model_dump()) == [
        "modulus",
        "dim",
        "t1",
        "t2",
        "nil",
        "nil_index_bound",
        "verified",
    ]
    assert cert.verified and cert.modulus == 3 and cert.dim == 2


@pytest.mark.slow
def test_every_matrix_in_m3_z3():
    start = time.perf_counter()
    for entries in itertools.product(range(3), repeat=9):
        a = MatZ(3, [entries[0:3], entries[3:6], entries[6:9]])
        assert verify(a, decompose_matrix(a)).ok, a
    assert time.perf_counter() - start < 10


@pytest.mark.slow
@pytest.mark.parametrize("n", SUPPORTED)
def test_random_matrices_per_modulus(n):
    rng = np.random.default_rng(n)
    start = time.perf_counter()
    for _ in range(200):
        d = int(rng.integers(1, 5))
        a = MatZ(n, rng.integers(0, n, size=(d, d)).tolist())
        assert_sound(a, decompose_matrix(a))
    assert time.perf_counter() - start < 60


@pytest.mark.slow
def test_random_matrices_over_z5():
    rng = np.random.default_rng(5)
    start = time.perf_counter()
    for _ in range(1000):
        d = int(rng.integers(1, 6))
        a = MatZ(5, rng.integers(0, 5, size=(d, d)).tolist())
        assert verify(a, decompose_matrix(a)).ok, a
    assert time.perf_counter() - start < 10


@pytest.mark.slow
def test_random_upper_triangular_matrices_over_z30():
    rng = np.random.default_rng(30)
    start = time.perf_counter()
    for _ in range(500):
        s = int(rng.integers(1, 6))
        a = MatZ(30, np.triu(rng.integers(0, 30, size=(s, s))).tolist())
        d = decompose_triangular(a)
        assert verify(a, d).ok, a
        assert is_diagonal(d.t1) and is_diagonal(d.t2)
    assert time.perf_counter() - start < 10
