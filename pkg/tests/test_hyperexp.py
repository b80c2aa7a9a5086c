import pytest

from dgal.errors import ResourceCapError, UnsupportedInstanceError
from dgal.fields import ConstField, field_adjoin
from dgal.groups import Character, group_ring
from dgal.hyperexp import (HyperexpElement, Relation, RelationLattice,
                           logderiv_from_character, relation_lattice,
                           torus_from_relations)
from dgal.ratfunc import RatFuncField
from dgal.series import TruncSeries, ratfunc_series

K = ConstField()
R = RatFuncField(K)


def he(text):
    return HyperexpElement(R, R.parse(text))


def scalar_series(f_text, a, order):
    s = ratfunc_series(R, R.parse(f_text), a, order)
    return TruncSeries(K, a, [[[c]] for c in s.coeffs])


def rel_text(r):
    return (r.j, r.m, dict(r.exponents), r.R.format(r.f))


def test_logderiv_of_t():
    S = scalar_series("t", K.from_int(1), 20)
    ring = group_ring(1, K)
    el = logderiv_from_character(Character(ring.parse("x_1_1"), ring), S, 3, 3)
    assert el.R.format(el.v) == "(1)/(t)"


def test_logderiv_of_t_squared_character():
    S = scalar_series("t", K.from_int(1), 20)
    ring = group_ring(1, K)
    el = logderiv_from_character(Character(ring.parse("x_1_1^2"), ring),
                                 S, 3, 3)
    assert el.R.format(el.v) == "(2)/(t)"


def test_logderiv_trivial_character():
    S = scalar_series("t", K.from_int(1), 20)
    ring = group_ring(1, K)
    el = logderiv_from_character(Character(ring.one, ring), S, 3, 3)
    assert el.R.is_zero(el.v)


def test_logderiv_order_too_small():
    S = scalar_series("t", K.from_int(1), 5)
    ring = group_ring(1, K)
    with pytest.raises(ResourceCapError):
        logderiv_from_character(Character(ring.parse("x_1_1"), ring), S, 3, 3)


def test_partial_fraction_invariant():
    el = he("(t^2 + 3)/(t^2 - 1)")
    # poles at 1 and -1, one polynomial coefficient
    assert len(el.parts) == 2
    assert el.poly_part and el.R.const.is_one(el.poly_part[0])


def test_half_lattice():
    rl = relation_lattice([he("1/t"), he("1/(2*t)")])
    assert rl.eta == [0]
    assert [rel_text(r) for r in rl.relations] == [(1, 2, {0: 1}, "1")]
    assert [rel_text(r) for r in rl.self_relations] == [(0, 1, {}, "t")]


def test_constant_logderiv_no_relation():
    rl = relation_lattice([he("1")])
    assert rl.eta == [0]
    assert rl.relations == [] and rl.self_relations == []


def test_self_rational_stays_independent():
    rl = relation_lattice([he("2/t")])
    assert rl.eta == [0]
    assert rl.relations == []
    assert [rel_text(r) for r in rl.self_relations] == [(0, 1, {}, "t^2")]


def test_diagonal_half_third():
    rl = relation_lattice([he("1/(2*t)"), he("1/(3*t)")])
    assert rl.eta == [0]
    assert [rel_text(r) for r in rl.relations] == [(1, 3, {0: 2}, "1")]
    assert [rel_text(r) for r in rl.self_relations] == [(0, 2, {}, "t")]
    T = torus_from_relations(rl, 2)
    assert sorted(T.ring.format(g) for g in T.generators) == \
        ["y_1 + -1", "y_2 + -1"]


def test_cofactor_dependence_keeps_both_independent():
    # v2 = v1 + 1/(t-1): h2 = h1 * (t-1) * c, but h1 and h2 are still
    # algebraically independent over the constants, so both stay in eta;
    # the tie shows up in the admissible lattice and the self relations
    rl = relation_lattice([he("1/t"), he("1/t + 1/(t - 1)")])
    assert rl.eta == [0, 1]
    assert rl.relations == []
    assert [rel_text(r) for r in rl.self_relations] == \
        [(0, 1, {}, "t"), (1, 1, {}, "t^2 + -1*t")]
    from dgal.lattice import contains
    assert contains(rl.admissible, [-1, 1])
    T = torus_from_relations(rl, 2)
    assert sorted(T.ring.format(g) for g in T.generators) == \
        ["y_1 + -1", "y_2 + -1"]


def test_irrational_residue_rejected():
    K2, _ = field_adjoin(K, [K.from_int(-2), K.zero, K.one])
    R2 = RatFuncField(K2)
    g = K2.generator()
    v = R2.div(R2.from_const(g), R2.t)  # residue sqrt(2)
    with pytest.raises(UnsupportedInstanceError):
        relation_lattice([HyperexpElement(R2, v)])


def test_torus_of_square_relation():
    rl = RelationLattice(R, [0], [Relation(1, 2, {0: 1}, R.one, R)], [], [])
    T = torus_from_relations(rl, 2)
    assert [T.ring.format(g) for g in T.generators] == ["-1*y_2^2 + y_1"]


def test_torus_no_relations():
    rl = RelationLattice(R, [0, 1], [], [], [])
    T = torus_from_relations(rl, 2)
    assert T.generators == []


def test_torus_pinned_coordinate():
    rl = RelationLattice(R, [0, 1], [], [Relation(0, 1, {}, R.t, R)], [])
    T = torus_from_relations(rl, 2)
    assert [T.ring.format(g) for g in T.generators] == ["y_1 + -1"]


def test_half_residue_needs_square():
    # v2 has a half-integer residue at 0, so its self relation needs m=2
    rl = relation_lattice([he("1/t"), he("3/(2*t) + 1/(t + 1)")])
    assert rl.eta == [0, 1]
    assert rl.relations == []
    assert [rel_text(r) for r in rl.self_relations] == \
        [(0, 1, {}, "t"), (1, 2, {}, "t^5 + 2*t^4 + t^3")]
