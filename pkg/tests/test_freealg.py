import random

import pytest
from hypothesis import given, settings, strategies as st

from stableorder import complex as cx
from stableorder import freealg as fa
from stableorder.errors import DegreeTooLow, NotAdditive, UnknownGenerator
from stableorder.simpset import sphere

F = fa.FreeGroup("xyz")
x, y, z = fa.gen("x"), fa.gen("y"), fa.gen("z")
X, Y = fa.NCSeries.var(4, "x"), fa.NCSeries.var(4, "y")


def d(w):
    return fa.delta(F, w)


def test_words():
    assert fa.word_mul(x, fa.word_inv(x)) == ()
    assert fa.FreeGroup("xy", star="*").word([("*", 1), ("x", 1)]) == x
    assert fa.word_inv(fa.word_mul(x, y)) == fa.word_mul(fa.word_inv(y), fa.word_inv(x))
    with pytest.raises(UnknownGenerator):
        F.word([("q", 1)])


def test_magnus_examples():
    one = fa.NCSeries.one(2)
    assert fa.magnus(x, 2) == one + X.truncate(2)
    assert fa.magnus(fa.word_inv(x), 2) == one - X.truncate(2) + (X * X).truncate(2)
    assert fa.magnus(fa.commutator(x, y), 2) == one + (X * Y - Y * X).truncate(2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_magnus_is_multiplicative(seed):
    rng = random.Random(seed)
    u, v = F.random(rng, 4), F.random(rng, 4)
    assert fa.magnus(fa.word_mul(u, v), 4) == fa.magnus(u, 4) * fa.magnus(v, 4)
    assert fa.magnus(fa.word_mul(u, fa.word_inv(u)), 4) == fa.NCSeries.one(4)


def test_aug_degree_examples():
    assert fa.aug_degree(fa.GroupRingElt.one(F), 3) == 0
    assert fa.aug_degree(d(x), 3) == 1
    assert fa.aug_degree(d(x) * d(y), 3) == 2
    assert fa.aug_degree(fa.GroupRingElt.zero(F), 3) == fa.INF
    capped = fa.aug_degree(d(x) * d(y) * d(z), 2)
    assert not fa.is_exact(capped) and capped >= 3


def test_gamma_membership():
    assert fa.gamma_member(x, 1)
    c = fa.commutator(x, y)
    assert fa.gamma_member(c, 2) and not fa.gamma_member(c, 3)
    assert fa.gamma_member(fa.commutator(c, z), 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_gamma_sample_degree(seed, s):
    w = fa.gamma_sample(F, s, random.Random(seed))
    assert fa.gamma_member(w, s)


def test_basic_commutators_count():
    # Witt's formula for two generators: 2, 1, 2
    assert [len(fa.basic_commutators("xy", k)) for k in (1, 2, 3)] == [2, 1, 2]


def test_series_text():
    assert fa.magnus(fa.commutator(x, y), 2).lines() == ["1:1", "'x'*'y':1", "'y'*'x':-1"]


# -- ensembles ----------------------------------------------------------------


S2G = fa.FreeSimplicialGroup(sphere(2))
TRI = cx.Polyhedron(cx.subtuples((0, 1, 2)))
SG = fa.SectionGroup(TRI, S2G)


def _nontrivial_sections(count, seed=1):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        v = fa.random_section(TRI, S2G, rng)
        if v not in out and any(v.table.values()):
            out.append(v)
    return out


def test_eta_examples():
    v, w = _nontrivial_sections(2)
    assert fa.eta(fa.GroupRingElt.zero(SG), 3) == fa.INF
    assert fa.eta(fa.GroupRingElt.of(SG, v), 3) == 0
    prod = fa.delta(SG, v) * fa.delta(SG, w)
    assert fa.eta(prod, 3) >= 2


def test_theta_examples():
    v, w = _nontrivial_sections(2)
    assert fa.theta(fa.GroupRingElt.of(SG, v), 3) == 0
    assert fa.theta(fa.GroupRingElt.zero(SG), 3) == fa.INF
    assert fa.theta(fa.GroupRingElt.of(SG, v) - fa.GroupRingElt.of(SG, w), 3) == 1


def test_is_generator_small_s():
    rng = random.Random(3)
    V = fa.Is_generator_sample(SG, 0, rng)
    assert fa.theta(V, 7) >= 0
    for s in (1, 2):
        for _ in range(5):
            V = fa.Is_generator_sample(SG, s, rng)
            assert fa.eta(V, 3) >= s


def test_fusion_pointwise():
    v, w = _nontrivial_sections(2)
    J = fa.fusion(fa.GroupRingElt.of(SG, v) - fa.GroupRingElt.of(SG, w))
    top = (0, 1, 2)
    G2 = S2G.level(2)
    assert J[top] == fa.GroupRingElt.of(G2, v.table[top]) - fa.GroupRingElt.of(G2, w.table[top])
    unit = fa.fusion(fa.GroupRingElt.one(SG))
    assert all(val == fa.GroupRingElt.of(val.group, ()) for val in unit.values())


def test_product_kernel_examples():
    rng = random.Random(0)
    assert fa.check_6_1([["x"]], 0, 3, rng)["passed"]
    assert fa.check_6_1([["x"]], 1, 5, rng)["passed"]
    assert fa.check_6_1([["x"], ["y"]], 2, 5, rng)["passed"]


def test_affine_product_examples():
    N = 1
    one = fa.NCSeries.one(N)
    a = fa.AdditiveMap({"x": fa.NCSeries.var(N, "x"), "y": fa.NCSeries.var(N, "y")}, one.scale(0))
    V = d(x) * d(y)
    assert fa.affine_product_Q([], fa.GroupRingElt.of(F, x), one) == one
    assert fa.affine_product_Q([], d(x), one) == one.scale(0)
    assert fa.affine_product_Q([a], V, one) == one.scale(0)


def test_not_additive_detected():
    sq = type("Sq", (), {"__call__": lambda self, w: len(w) ** 2})()
    with pytest.raises(NotAdditive):
        fa.check_additive(sq, F, random.Random(0), trials=20)


def test_strictness_examples():
    rng = random.Random(2)
    ident = fa.hom_map(fa.free_hom({g: fa.gen(g) for g in F.gens}, F), F)
    h = fa.product_strict(ident, ident, F)
    for r in (1, 2):
        assert fa.strictness_check(h, F, r, 5, rng)["passed"]
    assert fa.strictness_check(lambda V: fa.GroupRingElt.zero(F), F, 2, 5, rng)["passed"]
    assert fa.strictness_check(lambda V: V, F, 0, 5, rng)["passed"]


def test_split_examples():
    comp, rem = fa.split_Ds(d(x), 1)
    assert comp == fa.k_s(F, 1, {("x",): 1})
    assert fa.aug_degree(rem, 2) >= 2
    comp, rem = fa.split_Ds(d(x) * d(y), 1)
    assert comp == fa.GroupRingElt.zero(F)
    with pytest.raises(DegreeTooLow):
        fa.split_Ds(fa.GroupRingElt.of(F, x), 1)
