import random

import pytest
from hypothesis import given, settings, strategies as st

from stableorder import complex as cx
from stableorder import dummy as dm
from stableorder.freealg import FreeSimplicialGroup, GroupRingElt, eta, word_mul
from stableorder.simpset import sphere

G = FreeSimplicialGroup(sphere(2))
DG = dm.DummyGroup(G, 3)
EDGE = cx.Polyhedron(cx.subtuples((0, 1)))
TRI = cx.Polyhedron(cx.subtuples((0, 1, 2)))


def test_cells_of_B():
    assert dm.cells_of_B(0, 0) == ((None,), (0,))
    for n in range(3):
        assert tuple(range(n + 1)) in dm.cells_of_B(n, n)
    assert dm.marked(0) == (None,)


def test_homotopy_endpoints():
    rng = random.Random(0)
    for _ in range(5):
        g = DG.random(2, rng)
        assert DG.homotopy((1, 1, 1), g) == g
        assert DG.is_unit(DG.homotopy((0, 0, 0), g))
        assert DG.check_homotopy((0, 1, 1), g)
    assert DG.homotopy((0, 1, 1), DG.unit(2)) == DG.unit(2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_projection_and_section(seed):
    rng = random.Random(seed)
    n = 2
    g = G.level(n).random(rng, 3)
    lifted = DG.section(g, n, rng)
    assert DG.check(lifted)
    assert DG.project(lifted) == g
    a, b = DG.random(n, rng), DG.random(n, rng)
    assert DG.project(DG.mul(a, b)) == word_mul(DG.project(a), DG.project(b))


def test_section_of_unit():
    assert DG.is_unit(DG.section((), 2))


def test_e_xy_examples():
    rng = random.Random(4)
    g = DG.random(2, rng)
    x = (0, 1, 2)
    assert DG.e_xy(x, x, g) == g
    L = cx.Polyhedron(list(cx.subtuples((0, 1, 2))) + list(cx.subtuples((3, 4))))
    sec = DG.E(L, x, g)
    assert DG.is_unit(sec((3, 4))) and DG.is_unit(sec((3,)))


def test_13_3_on_triangle():
    rng = random.Random(5)
    for x in TRI.simplices:
        g = DG.random(len(x) - 1, rng)
        assert all(dm.check_13_3(TRI, DG, x, g).values())


def test_realize_R_point():
    P = cx.Polyhedron([(0,)])
    D1 = dm.DummyGroup(G, 1)
    assert dm.realize_R(P, D1, {(0,): GroupRingElt.zero(D1.level(0))}) == GroupRingElt.zero(dm.DummySections(P, D1))


def test_realize_R_inverts_fusion():
    rng = random.Random(6)
    L = cx.Polyhedron(list(cx.subtuples((0, 1, 2))) + list(cx.subtuples((2, 3))))
    D3 = dm.DummyGroup(G, 3)
    S = dm.DummySections(L, D3)
    for _ in range(3):
        s = rng.randint(1, 2)
        factors = [dm.random_dummy_section(L, D3, rng, factors=1) for _ in range(s)]
        V = dm.fusion_of_factored(S, factors)
        w = dm.dummy_fusion(V)
        R = dm.realize_R(L, D3, w)
        assert dm.dummy_fusion(R) == w
        assert dm.factored_R(L, D3, [(1, factors)]) == R
        assert eta(dm.project_ensemble(R, G), s) >= s
        supp = dm.ring_section_support(w)
        if supp:
            assert dm.ensemble_support(R) <= cx.neighbourhood(L, supp, 1)


def test_closure_section_inverts_evaluation():
    rng = random.Random(11)
    x = (0, 1, 2)
    closure = cx.Polyhedron(cx.subtuples(x))
    S = dm.DummySections(closure, DG)
    for _ in range(5):
        g = DG.random(2, rng)
        sec = DG.section_over_closure(x, g)
        w = dm.dummy_fusion(GroupRingElt.of(S, sec))
        assert w[x] == GroupRingElt.of(DG.level(2), g)
        assert sec.table[(0, 2)] == DG.face(g, 1)
