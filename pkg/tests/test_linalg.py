from fractions import Fraction

from hypothesis import given, settings, strategies as st

from dgal import linalg
from dgal.fields import ConstField


K = ConstField()


def mk(rows):
    return [[K.from_fraction(Fraction(x)) for x in row] for row in rows]


def test_rref_and_rank():
    R, piv = linalg.rref(K, mk([[1, 2, 3], [2, 4, 6], [1, 0, 1]]))
    assert piv == [0, 1]
    assert linalg.rank(K, mk([[1, 2], [3, 4]])) == 2


def test_nullspace_orthogonal_to_rows():
    A = mk([[1, 2, 3, 4], [0, 1, 1, 0]])
    for v in linalg.nullspace(K, A):
        for prod in linalg.matvec(K, A, v):
            assert K.is_zero(prod)
    assert len(linalg.nullspace(K, A)) == 2


def test_solve_consistent_and_inconsistent():
    A = mk([[1, 1], [1, -1]])
    x = linalg.solve(K, A, [K.from_int(3), K.from_int(1)])
    assert [K.format(c) for c in x] == ["2", "1"]
    B = mk([[1, 1], [2, 2]])
    assert linalg.solve(K, B, [K.from_int(0), K.from_int(1)]) is None


def test_det_and_inverse():
    A = mk([[2, 1], [5, 3]])
    assert K.eq(linalg.det(K, A), K.one)
    inv = linalg.inverse(K, A)
    prod = linalg.matmul(K, A, inv)
    assert prod == linalg.identity(K, 2)


def test_row_space_contains():
    rows = mk([[1, 0, 1], [0, 1, 1]])
    assert linalg.row_space_contains(K, rows, [K.from_int(2), K.from_int(3), K.from_int(5)])
    assert not linalg.row_space_contains(K, rows, [K.zero, K.zero, K.one])


small = st.integers(min_value=-9, max_value=9)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_zero_iff_rank_deficient(entries):
    A = mk(entries)
    d = linalg.det(K, A)
    assert K.is_zero(d) == (linalg.rank(K, A) < 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=2, max_size=2), min_size=4, max_size=4))
def test_rref_idempotent(entries):
    A = mk(entries)
    R1, p1 = linalg.rref(K, A)
    R2, p2 = linalg.rref(K, R1)
    assert R1 == R2 and p1 == p2
