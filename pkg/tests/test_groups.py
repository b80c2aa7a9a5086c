from dgal.fields import ConstField
from dgal.groups import (AlgebraicSubgroup, Character, characters_generators,
                         full_group, group_points_finite, group_ring,
                         identity_component, kernel_of_characters,
                         sample_group_points, stabilizer_group,
                         verify_group_axioms)
from dgal import linalg
from dgal.ratfunc import RatFuncField
from dgal.relations import default_window, order_bound, relation_ideal
from dgal.systems import OdeSystem

K = ConstField()
R = RatFuncField(K)


def sys_of(*rows):
    return OdeSystem(R, [[R.parse(e) for e in row] for row in rows])


def relations_of(sys, a, d, ell):
    N, _ = order_bound(sys, a, d, ell, ("stabilize", default_window(sys, d)))
    return relation_ideal(sys, a, d, ell, N)


def sl2(ring):
    det = ring.gen(0) * ring.gen(3) - ring.gen(1) * ring.gen(2) - ring.one
    return AlgebraicSubgroup(2, ring, [det])


def so2(ring):
    g = ring.gens
    return AlgebraicSubgroup(2, ring, [
        g[0] - g[3], g[1] + g[2], g[0] * g[0] + g[2] * g[2] - ring.one])


def char_polys(H, D):
    return [c.ring.format(c.poly) for c in characters_generators(H, D)]


def test_mu2_stabilizer_chain():
    s = sys_of(["1/(2*t)"])
    rel = relations_of(s, K.from_int(1), 2, 1)
    H = stabilizer_group(rel)
    assert [H.ring.format(g) for g in H.generators] == ["x_1_1^2 + -1"]
    verify_group_axioms(H, rel)
    assert H.group_verified
    comp = identity_component(H)
    assert comp.connected and comp.component_count == 2
    assert [comp.ring.format(g) for g in comp.generators] == ["x_1_1 + -1"]
    fld, pts = group_points_finite(H)
    vals = sorted(fld.format(p[0][0]) for p in pts)
    assert vals == ["-1", "1"]


def test_harmonic_stabilizer_is_rotations():
    s = sys_of(["0", "1"], ["-1", "0"])
    rel = relations_of(s, K.zero, 2, 1)
    H = stabilizer_group(rel)
    verify_group_axioms(H, rel)
    # the stabilizer ideal contains the rotation relations
    gb = H.groebner_basis()
    for text in ["x_1_1 - x_2_2", "x_1_2 + x_2_1",
                 "x_1_1^2 + x_2_1^2 - 1"]:
        from dgal.multipoly import normal_form
        assert not normal_form(H.ring.parse(text), gb).terms
    comp = identity_component(H)
    assert comp.connected


def test_rotation_component_is_connected():
    H = so2(group_ring(2, K))
    assert identity_component(H).connected


def test_sl2_component_is_connected():
    H = sl2(group_ring(2, K))
    assert identity_component(H).connected


def test_mu4_points_need_i():
    ring = group_ring(1, K)
    H = AlgebraicSubgroup(1, ring, [ring.gen(0) ** 4 - ring.one])
    comp = identity_component(H)
    assert comp.component_count == 4
    fld, pts = H.points_field, H.points
    assert len(pts) == 4
    # the point set contains a primitive fourth root of unity
    assert any(fld.is_one(fld.neg(fld.mul(p[0][0], p[0][0]))) for p in pts)


def test_gl1_characters():
    H = full_group(1, K)
    chars = characters_generators(H, 1)
    assert [c.ring.format(c.poly) for c in chars] == ["x_1_1"]
    ker = kernel_of_characters(H, chars)
    assert [ker.ring.format(g) for g in ker.generators] == ["x_1_1 + -1"]


def test_sl2_characters_trivial():
    H = sl2(group_ring(2, K))
    H.connected = True
    assert characters_generators(H, 2) == []


def test_gl2_characters_determinant():
    H = full_group(2, K)
    assert char_polys(H, 2) == ["x_1_1*x_2_2 + -1*x_1_2*x_2_1"]


def test_diagonal_torus_characters():
    ring = group_ring(2, K)
    H = AlgebraicSubgroup(2, ring, [ring.gen(1), ring.gen(2)], connected=True)
    assert sorted(char_polys(H, 1)) == ["x_1_1", "x_2_2"]
    ker = kernel_of_characters(H, characters_generators(H, 1))
    texts = sorted(ker.ring.format(g) for g in ker.generators)
    assert texts == ["x_1_1 + -1", "x_1_2", "x_2_1", "x_2_2 + -1"]


def test_rotation_characters_rank_one_over_qi():
    H = so2(group_ring(2, K))
    H.connected = True
    chars = characters_generators(H, 1)
    assert len(chars) == 1
    P = chars[0].poly
    fld = chars[0].ring.field
    # the character is x_2_2 + c*x_2_1 with c a square root of -1
    coeffs = dict(P.terms)
    c = coeffs[(0, 0, 1, 0)]
    assert fld.is_one(coeffs[(0, 0, 0, 1)])
    assert fld.is_one(fld.neg(fld.mul(c, c)))
    assert fld.degree() == 2


def test_sampling_lands_on_the_group():
    H = sl2(group_ring(2, K))
    fld, pts = sample_group_points(H, 4)
    assert len(pts) == 4
    for m in pts:
        assert fld.is_one(linalg.det(fld, m))


def test_character_type():
    H = full_group(1, K)
    chars = characters_generators(H, 1)
    assert isinstance(chars[0], Character)
