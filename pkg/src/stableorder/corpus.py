"""Small polyhedra for exhaustive checks."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from .complex import Polyhedron, subdivide_Delta, subdivide_delta, subtuples


def _downsets(n: int):
    """All simplicial complexes on vertex set ``range(n)`` using every vertex."""
    cands = [frozenset(c) for k in range(2, n + 1) for c in combinations(range(n), k)]
    base = {frozenset([v]) for v in range(n)}

    def rec(i, chosen):
        if i == len(cands):
            yield chosen
            return
        c = cands[i]
        yield from rec(i + 1, chosen)
        if all(c - {v} in chosen for v in c):
            yield from rec(i + 1, chosen | {c})

    yield from rec(0, frozenset(base))


def _canonical(faces: frozenset, n: int) -> tuple:
    best = None
    for p in permutations(range(n)):
        key = tuple(sorted(tuple(sorted(p[v] for v in f)) for f in faces))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def complexes_up_to(max_vertices: int = 5) -> tuple:
    """Every complex on at most ``max_vertices`` vertices, up to isomorphism.

    Vertices are ``0..n-1`` and simplices are listed in increasing vertex
    order, so the ordering is the one induced by the labels.
    """
    out = []
    for n in range(1, max_vertices + 1):
        seen = set()
        for faces in _downsets(n):
            key = _canonical(faces, n)
            if key not in seen:
                seen.add(key)
                out.append(Polyhedron(key))
    return tuple(out)


def seeds() -> list:
    """A few named polyhedra."""
    edge = Polyhedron(subtuples((0, 1)))
    tri = Polyhedron(subtuples((0, 1, 2)))
    path = Polyhedron([(0,), (1,), (2,), (0, 1), (1, 2)])
    circle = Polyhedron([(0,), (1,), (2,), (0, 1), (1, 2), (0, 2)])
    two = Polyhedron(list(subtuples((0, 1, 2))) + list(subtuples((1, 2, 3))))
    tet = Polyhedron(subtuples((0, 1, 2, 3)))
    return [edge, tri, path, circle, two, tet]


def seeds_subdivided() -> list:
    out = []
    for L in seeds():
        out.append(subdivide_delta(L)[0])
        out.append(subdivide_Delta(L)[0])
    return out


def small_corpus(max_dim: int | None = None, max_vertices: int = 4) -> list:
    """Connected-or-not complexes on few vertices, optionally capped in dimension."""
    return [L for L in complexes_up_to(max_vertices) if max_dim is None or L.dim <= max_dim]
