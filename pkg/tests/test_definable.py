from math import factorial

import pytest

from dgal.definable import (DefinableSubspace, check_defining,
                            coefficient_degree_bound, defining_matrix,
                            wz_span)
from dgal.errors import DgalError
from dgal.fields import ConstField
from dgal.groups import group_ring
from dgal.ratfunc import RatFuncField
from dgal.series import Series, ratfunc_series
from dgal.systems import OdeSystem

K = ConstField()
R = RatFuncField(K)
A = K.from_int(1)
ORDER = 15


def rf_vector(*texts, order=ORDER):
    return [ratfunc_series(R, R.parse(t), A, order) for t in texts]


def fmt(M):
    return [[R.format(x) for x in row] for row in M]


def test_linear_coordinate_relation():
    sub = DefinableSubspace(R, A, [rf_vector("t", "t^2")])
    M = defining_matrix(sub, 1)
    assert fmt(M) == [["1", "0"], ["-1*t", "1"]]
    assert check_defining(sub)


def test_exponential_refusal():
    exp = Series(K, [K.div(K.one, K.from_int(factorial(k)))
                     for k in range(ORDER + 1)])
    one = Series.constant(K, K.one, ORDER)
    sub = DefinableSubspace(R, A, [[one, exp]])
    assert defining_matrix(sub, 3) is None


def test_exponential_refusal_is_stable_in_ell():
    order = 41
    exp = Series(K, [K.div(K.one, K.from_int(factorial(k)))
                     for k in range(order + 1)])
    one = Series.constant(K, K.one, order)
    for ell in range(1, 8):
        sub = DefinableSubspace(R, A, [[one, exp]])
        assert defining_matrix(sub, ell) is None


def test_full_space_identity():
    s = OdeSystem(R, [[R.zero, R.one], [R.neg(R.one), R.zero]])
    F = s.fundamental_series(A, ORDER)
    basis = [[F.entry(0, 0), F.entry(1, 0)], [F.entry(0, 1), F.entry(1, 1)]]
    sub = DefinableSubspace(R, A, basis)
    assert fmt(defining_matrix(sub, 0)) == [["1", "0"], ["0", "1"]]


def test_margin_error():
    sub = DefinableSubspace(R, A, [rf_vector("t", "t^2", order=5)])
    with pytest.raises(DgalError):
        defining_matrix(sub, 3)


def test_degree_bound():
    assert coefficient_degree_bound(3) == 6
    assert coefficient_degree_bound(0) == 0


def test_wz_span_square_root():
    ring1 = group_ring(1, K)
    s = OdeSystem(R, [[R.parse("1/(2*t)")]])
    sub = wz_span([ring1.parse("x_1_1^2 - 1")], s, A, 2, ORDER)
    assert (sub.dim, sub.ambient) == (2, 3)
    M = defining_matrix(sub, 2)
    # the non-pivot row re-finds the relation t*1 - F^2 = 0
    assert [sub.R.format(x) for x in M[2]] == ["-1*t", "0", "1"]
    assert check_defining(sub)


def test_wz_span_full_group():
    s = OdeSystem(R, [[R.parse("1/(2*t)")]])
    sub = wz_span([], s, A, 1, ORDER)
    # no equations, d = 1: constants and F span everything
    assert (sub.dim, sub.ambient) == (2, 2)


def test_wz_span_empty_variety():
    ring1 = group_ring(1, K)
    s = OdeSystem(R, [[R.parse("1/(2*t)")]])
    # only the singular matrix 0 satisfies x = 0
    with pytest.raises(DgalError):
        wz_span([ring1.parse("x_1_1")], s, A, 1, ORDER)
