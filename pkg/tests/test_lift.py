import itertools
import os
import sys

import pytest

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from tripotent.errors import NotApproxIdempotent, NotApproxTripotent, UnsupportedModulus
from tripotent.lift import iteration_count, lift_for_prime, lift_idempotent, lift_tripotent
from tripotent.matz import MatZ, is_idempotent, is_tripotent, mat_pow, mat_sub


@pytest.mark.parametrize("e, rounds", [(1, 1), (2, 2), (3, 3), (4, 3), (5, 4), (8, 4), (9, 5)])
def test_iteration_count(e, rounds):
    assert iteration_count(e) == rounds


def test_scalar_known_values():
    assert lift_idempotent(MatZ(4, [[3]])) == MatZ(4, [[1]])
    assert lift_tripotent(MatZ(9, [[4]]), 3) == MatZ(9, [[1]])
    assert lift_for_prime(MatZ(25, [[4]]), 5) == MatZ(25, [[24]])
    with pytest.raises(NotApproxTripotent):
        lift_tripotent(MatZ(25, [[7]]), 5)
    with pytest.raises(NotApproxIdempotent):
        lift_idempotent(MatZ(4, [[1, 1], [1, 0]]))


def test_fixed_points():
    e = MatZ(8, [[1, 1], [0, 0]])
    assert lift_idempotent(e) == e
    t = MatZ(27, [[26, 0], [0, 1]])
    assert lift_tripotent(t, 3) == t


def test_wrong_moduli():
    with pytest.raises(UnsupportedModulus):
        lift_tripotent(MatZ(8, [[1]]), 2)
    with pytest.raises(UnsupportedModulus):
        lift_tripotent(MatZ(6, [[1]]), 3)
    with pytest.raises(UnsupportedModulus):
        lift_idempotent(MatZ(9, [[1]]))


@pytest.mark.parametrize("p, q", [(3, 9), (3, 27), (5, 25)])
def test_every_scalar_tripotent_lift_is_exact(p, q):
    for a in range(q):
        t0 = MatZ(q, [[a]])
        if not is_tripotent(t0.reduce(p)):
            with pytest.raises(NotApproxTripotent):
                lift_tripotent(t0, p)
            continue
        t = lift_tripotent(t0, p)
        assert is_tripotent(t)
        assert t.reduce(p) == t0.reduce(p)


def test_every_two_by_two_idempotent_lift_over_z4_is_exact():
    lifted = 0
    for entries in itertools.product(range(4), repeat=4):
        e0 = MatZ(4, [entries[:2], entries[2:]])
        if not is_idempotent(e0.reduce(2)):
            continue
        e = lift_idempotent(e0)
        assert is_idempotent(e)
        assert e.reduce(2) == e0.reduce(2)
        lifted += 1
    # 8 idempotents mod 2, 16 lifts of each
    assert lifted == 8 * 16


def test_newton_defect_doubles():
    q = 3**8
    t0 = MatZ(q, [[2, 1], [0, 4]])
    defects = []

    def record(i, t):
        defects.append((i, mat_sub(mat_pow(t, 3), t)))

    t = lift_tripotent(t0, 3, on_step=record)
    rounds = [i for i, _ in defects]
    assert rounds == list(range(1, len(rounds) + 1))
    assert 1 <= len(rounds) <= 4
    assert defects[-1][1].is_zero()
    assert defects[-1][1] == mat_sub(mat_pow(t, 3), t)
    for i, defect in defects:
        precision = 3 ** min(2**i, 8)
        assert all(x % precision == 0 for row in defect.to_rows() for x in row)


def test_idempotent_defect_doubles():
    steps = []
    lift_idempotent(MatZ(16, [[3]]), on_step=lambda i, e: steps.append(e))
    assert steps[0] == MatZ(16, [[5]])
    assert steps[-1] == MatZ(16, [[1]])


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_every_scalar_idempotent_lift_is_exact(k):
    q = 2**k
    for a in range(q):
        # every residue is idempotent mod 2
        e = lift_idempotent(MatZ(q, [[a]]))
        assert is_idempotent(e)
        assert e.reduce(2) == MatZ(2, [[a % 2]])
        assert e in (MatZ(q, [[0]]), MatZ(q, [[1]]))


def test_lifting_a_lifted_value_changes_nothing():
    for entries in itertools.product(range(4), repeat=4):
        e0 = MatZ(4, [entries[:2], entries[2:]])
        if is_idempotent(e0.reduce(2)):
            e = lift_idempotent(e0)
            assert lift_idempotent(e) == e
    for q, p in ((27, 3), (125, 5)):
        for a in range(q):
            t0 = MatZ(q, [[a]])
            if is_tripotent(t0.reduce(p)):
                t = lift_tripotent(t0, p)
                assert lift_tripotent(t, p) == t
    t = lift_tripotent(MatZ(3**8, [[2, 1], [0, 4]]), 3)
    assert t != MatZ(3**8, [[2, 1], [0, 4]])
    calls = []
    assert lift_tripotent(t, 3, on_step=lambda i, s: calls.append(i)) == t
    assert calls == []
