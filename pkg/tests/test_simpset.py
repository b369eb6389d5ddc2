import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from stableorder import complex as cx
from stableorder.errors import IndexOutOfRange, NotConnectedEnough
from stableorder.simpset import (Section, SimplexElt, SimplicialAbGroup, completion, completion_map,
                                 dk_split, normalization, normalize, quasirestrict, restrict, skeleton,
                                 smash_power, sphere, standard_simplex, support, yoneda, yoneda_inverse)

S2 = sphere(2)
EDGE = cx.Polyhedron(cx.subtuples(("a", "b")))


def test_completion_faces():
    E = completion(EDGE)
    ab = E.cell(("a", "b"))
    assert E.face(ab, 0) == E.cell(("b",))
    assert E.face(ab, 1) == E.cell(("a",))
    assert list(completion(cx.Polyhedron([("p",)])).cells) == [("p",)]
    assert completion(cx.Polyhedron([])).cells == {}


def test_normalize_examples():
    D1 = standard_simplex(1)
    x = (0, 1)
    assert normalize(D1, x, [("s", 0), ("s", 0)]).degens == (1, 0)
    assert normalize(D1, x, [("d", 0), ("s", 0)]) == D1.cell(x)
    assert normalize(D1, x, [("d", 2), ("s", 0)]) == normalize(D1, x, [("s", 0), ("d", 1)])
    with pytest.raises(IndexOutOfRange):
        normalize(D1, x, [("d", 5)])


def _random_word(rng, dim, length):
    word = []
    for _ in range(length):
        if dim > 0 and rng.random() < 0.5:
            word.append(("d", rng.randint(0, dim)))
            dim -= 1
        else:
            word.append(("s", rng.randint(0, dim)))
            dim += 1
    return list(reversed(word))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_normal_form_is_confluent(seed):
    """Applying a word at once or in two chunks gives the same normal form."""
    rng = random.Random(seed)
    E = standard_simplex(2)
    word = _random_word(rng, 2, rng.randint(1, 6))
    whole = normalize(E, (0, 1, 2), word)
    cut = rng.randint(0, len(word))
    inner = normalize(E, (0, 1, 2), word[cut:])
    outer = inner
    for op, i in reversed(word[:cut]):
        outer = E.face(outer, i) if op == "d" else E.degen(outer, i)
    assert whole == outer
    assert SimplexElt(whole.cell, whole.eta) == whole


def test_simplicial_identities():
    for E in (S2, standard_simplex(2), completion(cx.Polyhedron(cx.subtuples((0, 1, 2, 3))))):
        assert E.check_identities()


def test_completion_is_functorial():
    L = cx.Polyhedron(cx.subtuples((0, 1, 2)))
    dL, phi = cx.subdivide_delta(L)
    ddL, phi2 = cx.subdivide_delta(dL)
    both = cx.compose(phi, phi2)
    f, g, h = completion_map(phi), completion_map(phi2), completion_map(both)
    E = completion(ddL)
    for k in range(3):
        for x in E.simplices(k):
            assert h(x) == f(g(x))


def test_smash_powers():
    zero = smash_power(S2, 0)
    assert sorted(zero.cells.values()) == [0, 0]
    one = smash_power(S2, 1)
    assert sorted(one.cells.values()) == sorted(S2.cells.values())
    two = smash_power(S2, 2, 5)
    dims = sorted(two.cells.values())
    assert dims.count(0) == 1
    assert max(dims) == 4 and dims.count(4) == 6


def test_skeleton():
    assert skeleton(S2, 2).cells == S2.cells
    assert list(skeleton(S2, 1).cells) == ["*"]
    with pytest.raises(IndexOutOfRange):
        skeleton(S2, -1)


def _sections(L, E):
    """Every section of E over L, by brute force over value tables."""
    choices = [E.simplices(len(y) - 1) for y in L.simplices]
    for values in itertools.product(*choices):
        v = Section(L, E, dict(zip(L.simplices, values)))
        if v.check():
            yield v


def test_section_ops():
    E = standard_simplex(1)
    secs = list(_sections(EDGE, E))
    # simplicial maps Delta^1 -> Delta^1 are the three monotone maps
    assert len(secs) == 3
    v = secs[0]
    assert quasirestrict(v, []) == ()
    for s in secs:
        assert yoneda(E, ("a", "b"), s) == s(("a", "b"))
        back = yoneda_inverse(E, EDGE, ("a", "b"), s(("a", "b")))
        assert back == s
        piece = restrict(s, cx.closure(EDGE, ("a",)))
        assert yoneda(E, ("a",), piece) == s(("a",))
    base = Section(EDGE, S2, {y: S2.base(len(y) - 1) for y in EDGE.simplices})
    assert support(base, S2.is_base) == frozenset()


def test_over_vertex_section_is_a_point():
    P = cx.Polyhedron([("p",)])
    E = standard_simplex(2)
    assert len(list(_sections(P, E))) == 3


def test_normalization_ranks():
    N, _ = normalization(SimplicialAbGroup.reduced(S2, 3), 3)
    assert [len(n) for n in N] == [0, 0, 1, 0]
    N, _ = normalization(SimplicialAbGroup.reduced(standard_simplex(2), 3), 3)
    assert [len(n) for n in N] == [2, 3, 1, 0]


def test_dk_split_contractible():
    D = SimplicialAbGroup.reduced(standard_simplex(2, basepoint=None), 3)
    with pytest.raises(NotConnectedEnough):
        dk_split(D, 1)
    D = SimplicialAbGroup.reduced(standard_simplex(2), 3)
    split = dk_split(D, 2)
    assert all(split.boundary_is_iso(n) for n in range(3))


def test_dk_split_rejects_sphere():
    with pytest.raises(NotConnectedEnough) as exc:
        dk_split(SimplicialAbGroup.reduced(S2, 3), 2)
    assert exc.value.dim == 2


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_dk_split_reconstructs(seed):
    rng = random.Random(seed)
    E = smash_power(standard_simplex(1), 2, 3)
    D = SimplicialAbGroup.reduced(E, 3)
    split = dk_split(D, 1)
    k = rng.randint(0, 2)
    vec = [rng.randint(-3, 3) for _ in range(D.rank(k))]
    total = [0] * D.rank(k)
    for n in split.pieces_of(k):
        total = [a + b for a, b in zip(total, split.project(k, vec, n))]
    assert total == vec
