import math
import time

import pytest

from dgal import bounds as B
from dgal.errors import DgalError


def ev(e, **kw):
    return B.evaluate(e, **kw)


def test_gamma_values():
    assert ev(B.gamma_bound(1, 2)).exact_int() == 8
    assert ev(B.gamma_bound(2, 2)).exact_int() == 32


def test_gamma_inequality_grid():
    for n in (1, 2, 3):
        for d in range(1, 7):
            assert ev(B.gamma_bound(n, d)).exact < \
                ev(B.gamma_comparison(n, d)).exact


def test_unipotent_values():
    assert ev(B.unipotent_family_bound(1)).exact_int() == 6561
    assert ev(B.unipotent_family_bound(2)).exact_int() == 17 ** 4096


def test_unipotent_log_bracket():
    l = ev(B.unipotent_family_bound(1), bit_cap=4).log2()
    assert 12.67 <= float(l.a) and float(l.b) <= 12.68


def test_dstar_nstar():
    ds, ns = B.dstar_nstar(1, 1)
    assert (ev(ds).exact_int(), ev(ns).exact_int()) == (4, 8)
    ds, ns = B.dstar_nstar(1, 2)
    assert (ev(ds).exact_int(), ev(ns).exact_int()) == (9, 54)


def test_dstar_at_least_one():
    for n in (1, 2):
        for d in (1, 2, 3):
            ds, _ = B.dstar_nstar(n, d)
            assert ev(ds).exact >= 1


def test_kappa1_exact_and_bracketed():
    k1, k2, _ = B.kappas(1)
    v1 = ev(k1).exact_int()
    assert v1 == math.comb(6562, 3281) ** 2
    assert ev(k1, bit_cap=8).contains_exact(v1)
    assert ev(k2).exact_int() == v1 * 6561 * 6562


def test_kappa3_interval_only():
    _, _, k3 = B.kappas(1)
    m = ev(k3)
    assert m.level == 1
    assert m.log2().a > 0


def test_jordan_table_and_factorial_rule():
    assert [ev(B.jordan_bound(n)).exact_int() for n in (1, 2, 3, 4)] == \
        [1, 60, 360, 25920]
    assert ev(B.jordan_bound(71)).exact_int() == math.factorial(72)
    with pytest.raises(DgalError):
        B.jordan_bound(10)
    assert ev(B.jordan_bound(10, override=100)).exact_int() == 100


def test_proto_galois_degree_bound_brackets():
    dt = B.proto_galois_degree_bound(1)
    m = ev(dt)
    assert m.level == 2
    ll = m.loglog2()
    assert ll.a > 0 and ll.a <= ll.b
    _, _, k3 = B.kappas(1)
    assert ll.b >= ev(k3).loglog2().a


def test_render_parse_roundtrip():
    for e in [B.gamma_bound(2, 3), B.kappas(1)[2],
              B.proto_galois_degree_bound(1),
              B.lit(7), B.sub(B.lit(9), B.lit(2)),
              B.max_(B.lit(3), B.fact(B.lit(4)))]:
        assert B.parse(B.render(e)) == e


def test_fraction_literal_roundtrip():
    e = B.gamma_bound(1, 1)  # base 3/2
    assert B.parse(B.render(e)) == e
    assert ev(e).exact == 3


def test_maxbinom_matches_bruteforce():
    for m in range(201):
        want = max(math.comb(m, i) for i in range(m + 1))
        assert ev(B.maxbinom(B.lit(m) if m else B.lit(1))).exact_int() == \
            (want if m else 1)


def test_monotonicity_grids():
    gam = [[ev(B.gamma_bound(n, d)).exact for d in range(1, 5)]
           for n in (1, 2, 3)]
    for row in gam:
        assert row == sorted(row)
    for col in zip(*gam):
        assert list(col) == sorted(col)
    uni = [ev(B.unipotent_family_bound(n)).log2().a for n in (1, 2, 3)]
    assert uni == sorted(uni)


def test_exact_value_inside_own_bracket():
    for e in [B.gamma_bound(2, 4), B.unipotent_family_bound(1),
              B.fact(B.lit(30)), B.binom(B.lit(40), B.lit(17)),
              B.maxbinom(B.lit(100))]:
        v = ev(e).exact_int()
        assert ev(e, bit_cap=4).contains_exact(v)


def test_runtime_budget():
    t0 = time.time()
    ev(B.gamma_bound(1, 2))
    ev(B.unipotent_family_bound(2))
    B.dstar_nstar(1, 1)
    k1, _, _ = B.kappas(1)
    ev(k1)
    ev(B.proto_galois_degree_bound(1))
    assert time.time() - t0 < 10.0
