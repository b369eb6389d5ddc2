import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from stableorder import invariant as inv
from stableorder.errors import ModelTooLarge, TargetNotAbelian

INF = inv.INF
Z = inv.Cyclic((0,))
Z2 = inv.Cyclic((2,))
Z4 = inv.Cyclic((4,))


def _group(orders, layers):
    return inv.FiltAbGroup(orders, layers)


def test_deg_zero_map():
    P = _group([4], [[(1,)], [(2,)]])
    f = {x: (0,) for x in P.elements}
    assert inv.deg_exact(P, Z4, f).value == 0


def test_deg_additive_example():
    P = _group([4], [[(1,)], [(2,)]])
    ident = {x: x for x in P.elements}
    assert inv.deg_exact(P, Z4, ident).value == 2
    assert inv.additive_degree(P, Z4, ident) == 2
    doubled = {x: ((2 * x[0]) % 4,) for x in P.elements}
    # 2x vanishes on P_2 = {0, 2}, so only P_1 is seen
    assert inv.deg_exact(P, Z4, doubled).value == 1


def test_parity_into_Z_is_infinite():
    P = _group([2], [[(1,)]])
    f = {(0,): (0,), (1,): (1,)}
    assert inv.deg_exact(P, Z, f).value == INF
    brute = inv.deg_brute(P, Z, f, 6)
    assert brute.saturated


def test_window_reduction_is_tight():
    P = _group([4], [[(1,)], [(2,)]])
    ident = {x: x for x in P.elements}
    # None means every difference of weight in (r, r + s_max] vanishes
    assert inv.window_vanishes(P, Z4, ident, 1) == ((2,),)
    assert inv.window_vanishes(P, Z4, ident, 2) is None


def test_bad_target_rejected():
    with pytest.raises(TargetNotAbelian):
        Z4.norm("x")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_exact_matches_brute(seed):
    rng = random.Random(seed)
    P = inv.random_filtered_group(rng, max_order=16)
    U = inv.Cyclic((rng.choice([2, 3, 4, 0]),))
    f = inv.random_polynomial(P, U, rng)
    ex = inv.deg_exact(P, U, f)
    r = ex.value if ex.value != INF else 0
    assert inv.brute_agrees(ex, inv.deg_brute(P, U, f, r + P.s_max + 2))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_additive_degree_property(seed):
    rng = random.Random(seed)
    P = inv.random_filtered_group(rng)
    U = inv.Cyclic((rng.choice([2, 4, 8]),))
    f = inv.random_additive(P, U, rng)
    assert inv.deg_exact(P, U, f).value == inv.additive_degree(P, U, f)


# -- order on finite models ---------------------------------------------------------


def test_constant_has_order_zero():
    M = inv.FiniteModel(range(2), range(2))
    f = {a: (1,) for a in M.maps}
    assert inv.order(M, Z2, f) == 0
    assert inv.order(M, Z2, f, inv.order_via_theta) == 0


def test_indicator_order():
    M = inv.FiniteModel(range(2), range(2))
    f = {a: (int(a == (0, 0)),) for a in M.maps}
    assert inv.order(M, Z2, f) == inv.order(M, Z2, f, inv.order_via_theta) == 2
    bad = inv.order_violation(M, Z2, f, 1)
    assert bad is not None and len(bad) == 4


def test_model_budget():
    with pytest.raises(ModelTooLarge):
        inv.FiniteModel(range(6), range(5), budget=100)


def _all_functions(M, U):
    for vals in product(range(U.orders[0]), repeat=len(M.maps)):
        yield dict(zip(M.maps, ((v,) for v in vals)))


def test_routes_agree_small_models():
    for nx, ny in product(range(1, 3), repeat=2):
        M = inv.FiniteModel(range(nx), range(ny))
        for r in range(3):
            assert inv.routes_same_kernel(M, r)
        for f in _all_functions(M, Z2):
            assert inv.order(M, Z2, f) == inv.order(M, Z2, f, inv.order_via_theta)


def test_order_monotone_in_r():
    M = inv.FiniteModel(range(2), range(3))
    rng = random.Random(0)
    for _ in range(20):
        f = {a: (rng.randrange(4),) for a in M.maps}
        r = inv.order(M, Z4, f)
        assert all(inv.order_finite_model(M, Z4, f, s) for s in range(r, len(M.X) + 2))


def test_order_of_sum_and_quotient():
    M = inv.FiniteModel(range(2), range(2))
    rng = random.Random(1)
    for _ in range(30):
        f = {a: (rng.randrange(4),) for a in M.maps}
        g = {a: (rng.randrange(4),) for a in M.maps}
        fg = {a: Z4.add(f[a], g[a]) for a in M.maps}
        assert inv.order(M, Z4, fg) <= max(inv.order(M, Z4, f), inv.order(M, Z4, g))
        halved = {a: (f[a][0] % 2,) for a in M.maps}
        assert inv.order(M, Z2, halved) <= inv.order(M, Z4, f)


# -- theta on finite models ------------------------------------------------------


def test_theta_top_examples():
    assert inv.theta_top({(0, 1): 1}, 2) == 0
    assert inv.theta_top({(0, 1): 1, (1, 1): -1}, 2) == 1
    assert inv.theta_top({}, 2) == INF


def test_theta_of_composite_random():
    rng = random.Random(3)
    for _ in range(30):
        maps = list(product(range(2), repeat=3))
        A = {}
        for _ in range(3):
            a, b = rng.choice(maps), rng.choice(maps)
            A[a] = A.get(a, 0) + 1
            A[b] = A.get(b, 0) - 1
        g = [rng.randrange(3) for _ in range(rng.randint(1, 3))]
        h = {0: rng.randrange(3), 1: rng.randrange(3)}
        assert inv.check_17_1(g, h, A, 3)["passed"]
