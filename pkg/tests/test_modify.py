import random

import pytest

from stableorder import complex as cx
from stableorder import modify as md
from stableorder.corpus import small_corpus
from stableorder.errors import BudgetExceeded, DegreeTooLow, SeparationFailure
from stableorder.freealg import FreeGroup, GroupRingElt, delta, gen
from stableorder.simpset import smash_power, standard_simplex

POINT = cx.Polyhedron([(0,)])
EDGE = cx.Polyhedron(cx.subtuples((0, 1)))
PATH = cx.Polyhedron([(0,), (1,), (2,), (0, 1), (1, 2)])
SEMANTIC = md.Constants(2, 4, 8, 12, 20, 2)
PIPE = md.Pipeline(1)


def e(k):
    return GroupRingElt.of(md.EXP, md.EXP.make({(0, 1): k}))


def test_constants():
    assert md.Constants.strict().strict_ok
    assert md.Constants(2, 4, 8, 12, 20, 6).violations() == ["2^(c-1)>=2b5+1"]
    with pytest.raises(ValueError):
        md.Constants(2, 4, 8, 12, 20, 6, mode="strict")
    assert not SEMANTIC.strict_ok


def test_build_e_sizes():
    sub = md.build_e(POINT, md.Constants(2, 4, 8, 12, 20, 3))
    assert len(sub.L) == 1 and set(sub.evmap.values()) == {0}
    sub = md.build_e(EDGE, SEMANTIC)
    assert len(sub.L.of_dim(1)) == 16
    cx.check_morphism(sub.e)


def test_e_z_properties_on_dim1_corpus():
    for K in [L for L in small_corpus(1, 3)] + [PATH]:
        sub = md.build_e(K, SEMANTIC)
        for z in sub.L.simplices:
            md.check_e_z(sub, md.build_e_z(sub, z, SEMANTIC), SEMANTIC)


def test_e_Z_examples():
    sub = md.build_e(PATH, SEMANTIC)
    assert md.build_e_Z(sub, []) == {}
    p = md.build_e_z(sub, sub.L.simplices[0], SEMANTIC)
    assert md.build_e_Z(sub, [p]) == p.overrides()
    with pytest.raises(SeparationFailure):
        md.build_e_Z(sub, [p, p])


def test_ring_splitting():
    F = FreeGroup("xy")
    R = md.RingSplitting(F)
    x, y = gen("x"), gen("y")
    assert R.l(GroupRingElt.one(F)) == GroupRingElt.zero(F)
    sq = delta(F, x) * delta(F, y)
    assert R.l(sq) == sq
    rng = random.Random(0)
    samples = [GroupRingElt.of(F, F.random(rng, 4)) - GroupRingElt.of(F, F.random(rng, 3)) * 2 for _ in range(20)]
    assert R.check(samples)


def test_partition_examples():
    L = cx.Polyhedron(cx.subtuples((0, 1, 2)))
    P = md.Partition([smash_power(standard_simplex(1), s, 3) for s in (1, 2)], L, 2)
    zero = {y: [0] * P.D.rank(len(y) - 1) for y in L.simplices}
    assert all(all(v == 0 for vec in P.h(z, zero).values() for v in vec) for z in L.simplices)
    rng = random.Random(1)
    for _ in range(5):
        res = P.check(md.random_ab_section(P.D, L, rng))
        assert all(res.values())


def test_laurent_helpers():
    assert md.l_of_power(0) == {}
    assert md.l_of_power(1) == {}
    # t^3 - 3t + 2 = (t - 1)^2 (t + 2)
    assert md.laurent_div_sq(md.l_of_power(3)) == {1: 1, 0: 2}
    assert md.laurent_aug_degree(md.l_of_power(3), 4) == 2
    with pytest.raises(DegreeTooLow):
        md.laurent_div_sq({1: 1, 0: -1})


def test_X_properties():
    for n in (1, 2):
        pipe = md.Pipeline(n)
        assert pipe.X({}) == GroupRingElt(pipe.DG.level(n), {})
        for w in ({2: 1, 1: -2, 0: 1}, md.l_of_power(3), md.l_of_power(-2)):
            assert pipe.projected(w) == w
            assert pipe.X_faces_vanish(w)


def test_V_examples():
    L = cx.Polyhedron([(0,), (1,), (2,), (0, 1), (1, 2)])
    assert PIPE.V(L, {}) == GroupRingElt.zero(md.EXP)
    w = {(0, 1): md.l_of_power(2), (1, 2): md.l_of_power(-3)}
    assert md.check_15_1(PIPE, L, w)
    assert md.check_15_2(PIPE, L, w)
    assert md.check_15_3(PIPE, L, w, 2)
    assert PIPE.V(L, w) == PIPE.V_general(L, w)


def test_P_z_examples():
    mod = md.Modifier(PATH, SEMANTIC, PIPE)
    unit = md.EXP.make({})
    assert all(mod.P_z(unit, z) == GroupRingElt.zero(md.EXP) for z in mod.L.simplices)
    u = md.EXP.make({(0, 1): 2, (1, 2): -1})
    total = GroupRingElt.zero(md.EXP)
    for z in mod.L.simplices:
        Pz = mod.P_z(u, z)
        assert Pz.augmentation() == 0
        total = total + Pz
    assert total == mod.P(u)


def test_M_on_point():
    mod = md.Modifier(POINT, md.Constants(2, 4, 8, 12, 20, 2), PIPE)
    U = GroupRingElt.of(md.EXP, md.EXP.make({}))
    assert mod.M(U) == U
    assert mod.query_pruned(GroupRingElt.zero(md.EXP), [(0,)]) == mod.query_full(GroupRingElt.zero(md.EXP), [(0,)])


def test_M_queries_agree_on_edge():
    mod = md.Modifier(EDGE, md.Constants(2, 4, 8, 12, 20, 1), PIPE)
    U = e(2) - e(1) * 2 + e(0)
    for T in ([], [mod.L.simplices[0]], mod.L.simplices[:2]):
        assert mod.query_pruned(U, T) == mod.query_full(U, T)
    assert not any(mod.query_pruned(GroupRingElt.zero(md.EXP), mod.L.simplices[:2]).values())


def test_vanishing_below_bound():
    mod = md.Modifier(EDGE, SEMANTIC, PIPE)
    rng = random.Random(2)
    # eta = 0: the bound is 0 and nothing is tested
    res = md.check_15_4(mod, e(1), [], 0, 0)
    assert res["passed"] and res["tested"] == 0
    U = e(3) - e(1)
    Ts = md.adversarial_Ts(mod, U, 0, rng) + md.adversarial_Ts(mod, U, 1, rng)
    assert md.check_15_4(mod, U, Ts, 1, 1)["passed"]
    assert md.check_15_5(mod, e(2) - e(1) * 2 + e(0), 2, 3)["passed"]


def test_main_procedure():
    U = e(3) - e(1)
    L, V, hist = md.main_procedure(EDGE, U, 0, SEMANTIC)
    assert L == EDGE and V == U and hist == []
    L, V, hist = md.main_procedure(POINT, GroupRingElt.zero(md.EXP), 1, SEMANTIC)
    assert V == GroupRingElt.zero(md.EXP)
    L, V, hist = md.main_procedure(EDGE, U, 1, SEMANTIC)
    assert md.ens_theta(V, 1) >= 1
    with pytest.raises(DegreeTooLow):
        md.main_procedure(EDGE, e(1), 1, SEMANTIC)


def test_budget_is_enforced():
    mod = md.Modifier(PATH, md.Constants(2, 4, 8, 12, 20, 3), PIPE)
    U = GroupRingElt.of(md.EXP, md.EXP.make({(0, 1): 3, (1, 2): -2}))
    with pytest.raises(BudgetExceeded):
        mod.M(U, budget=1)


def test_M_factors_commute():
    mod = md.Modifier(PATH, SEMANTIC, PIPE)
    u = md.EXP.make({(0, 1): 2, (1, 2): -1})
    Pz = [mod.P_z(u, z) for z in mod.L.simplices if mod.P_z(u, z).terms][:4]
    forward = backward = GroupRingElt.one(md.EXP)
    for a, b in zip(Pz, reversed(Pz)):
        forward, backward = forward * a, backward * b
    assert forward == backward
