"""Ordered finite simplicial complexes ("polyhedra") and their morphisms.

A simplex is a tuple of vertex ids listed in its own vertex order; the empty
tuple ``()`` stands for the empty simplex.  Only the abstract complex is
stored, there are no coordinates.
"""
from __future__ import annotations

from collections import deque
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from .errors import (
    DomainMismatch,
    DuplicateSimplex,
    MissingFace,
    NotAMorphism,
    OrderConflict,
    SimplexNotInL,
)

INF = float("inf")
EMPTY: tuple = ()

Simplex = tuple


def vkey(v) -> str:
    return repr(v)


def skey(s: Simplex):
    """Canonical sort key: dimension first, then the vertex reprs."""
    return (len(s), tuple(repr(v) for v in s))


def subtuples(s: Simplex):
    """All nonempty order-preserving subtuples of ``s`` (including ``s``)."""
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


class Polyhedron:
    """A finite ordered simplicial complex.

    The constructor trusts its input; use :func:`validate` on raw data.
    """

    def __init__(self, simplices: Iterable[Simplex]):
        by_set = {}
        for s in simplices:
            s = tuple(s)
            by_set[frozenset(s)] = s
        self._by_set = by_set
        self.simplices = tuple(sorted(by_set.values(), key=skey))
        self._index = {s: i for i, s in enumerate(self.simplices)}

    # -- basic queries -------------------------------------------------
    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __contains__(self, s) -> bool:
        return tuple(s) in self._index

    def __eq__(self, other):
        return isinstance(other, Polyhedron) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        return f"Polyhedron({len(self.vertices)} vertices, {len(self.simplices)} simplices)"

    @cached_property
    def vertices(self) -> tuple:
        return tuple(s[0] for s in self.simplices if len(s) == 1)

    @property
    def dim(self) -> int:
        return len(self.simplices[-1]) - 1 if self.simplices else -1

    @property
    def diamond(self) -> tuple:
        """``L`` together with the empty simplex, empty simplex first."""
        return (EMPTY,) + self.simplices

    def index(self, s: Simplex) -> int:
        return self._index[tuple(s)]

    def simplex_on(self, vertex_set) -> Simplex | None:
        """The simplex with the given vertex set, or None."""
        vs = frozenset(vertex_set)
        if not vs:
            return EMPTY
        return self._by_set.get(vs)

    def check(self, s: Simplex) -> Simplex:
        s = tuple(s)
        if s != EMPTY and s not in self._index:
            raise SimplexNotInL(f"{s!r} is not a simplex of L", s)
        return s

    def of_dim(self, k: int) -> list:
        return [s for s in self.simplices if len(s) == k + 1]

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for s in self.simplices:
            if len(s) == 2:
                a, b = s
                adj[a].add(b)
                adj[b].add(a)
        return adj

    @cached_property
    def star_index(self) -> dict:
        """vertex -> list of simplices containing it."""
        st = {v: [] for v in self.vertices}
        for s in self.simplices:
            for v in s:
                st[v].append(s)
        return st

    def cofaces(self, s: Simplex) -> list:
        """Simplices containing ``s`` (including ``s``); all of L for ``()``."""
        if not s:
            return list(self.simplices)
        vs = frozenset(s)
        return [t for t in self.star_index[s[0]] if vs <= frozenset(t)]

    def distances(self, sources: Iterable, radius: float = INF) -> dict:
        """Graph distance in the 1-skeleton from a set of vertices, up to ``radius``."""
        dist = {}
        queue = deque()
        for v in sources:
            if v not in dist:
                dist[v] = 0
                queue.append(v)
        adj = self.adjacency
        while queue:
            v = queue.popleft()
            d = dist[v]
            if d >= radius:
                continue
            for w in adj[v]:
                if w not in dist:
                    dist[w] = d + 1
                    queue.append(w)
        return dist

    def faces(self, s: Simplex) -> list:
        return list(subtuples(s))


# -- construction and validation ---------------------------------------------


def validate(raw) -> Polyhedron:
    """Validate a raw complex description.

    ``raw`` is either an iterable of vertex sequences or a mapping with keys
    ``simplices`` (and optionally ``vertices``, each listed vertex becoming a
    0-simplex).
    """
    if isinstance(raw, Mapping):
        tuples = [tuple(s) for s in raw.get("simplices", [])]
        tuples += [(v,) for v in raw.get("vertices", [])]
    else:
        tuples = [tuple(s) for s in raw]
    by_set = {}
    for s in tuples:
        if not s:
            continue
        if len(set(s)) != len(s):
            raise DuplicateSimplex(f"simplex {s!r} repeats a vertex", s)
        key = frozenset(s)
        if key in by_set and by_set[key] != s:
            raise DuplicateSimplex(
                f"simplices {by_set[key]!r} and {s!r} share a vertex set", s)
        by_set[key] = s
    for key, s in by_set.items():
        if len(s) == 1:
            continue
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            got = by_set.get(frozenset(face))
            if got is None:
                raise MissingFace(f"face {face!r} of {s!r} is missing", s)
            if got != face:
                raise OrderConflict(
                    f"{s!r} orders its face as {face!r} but L has {got!r}", s)
    return Polyhedron(by_set.values())


def generated(L: Polyhedron, T: Iterable[Simplex]) -> Polyhedron:
    """The subpolyhedron generated by ``T``."""
    out = set()
    for s in T:
        s = L.check(s)
        out.update(subtuples(s))
    return Polyhedron(out)


def closure(L: Polyhedron, s: Simplex) -> Polyhedron:
    return generated(L, [s] if s else [])


def is_small(L: Polyhedron, T: Iterable[Simplex]) -> Simplex | None:
    """Least simplex whose closure contains every simplex of ``T``, or None."""
    verts = set()
    for s in T:
        verts.update(L.check(s))
    if not verts:
        return EMPTY
    return L.simplex_on(verts)


def rho(L: Polyhedron, x: Simplex, y: Simplex) -> float:
    """Edge-path distance between simplices (minimum over vertex pairs)."""
    x, y = L.check(x), L.check(y)
    if not x or not y:
        raise SimplexNotInL("rho is not defined for the empty simplex", EMPTY)
    target = set(y)
    if target & set(x):
        return 0
    dist = {}
    queue = deque()
    for v in x:
        dist[v] = 0
        queue.append(v)
    while queue:
        v = queue.popleft()
        for w in L.adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                if w in target:
                    return dist[w]
                queue.append(w)
    return INF


def neighbourhood(L: Polyhedron, T: Iterable[Simplex], d: int) -> frozenset:
    """``O_L(T, d)``: simplices at distance < d from some simplex of ``T``."""
    T = [L.check(s) for s in T]
    if d <= 0 or not T:
        return frozenset()
    reached = L.distances({v for s in T for v in s}, radius=d - 1)
    out = set()
    for v in reached:
        out.update(L.star_index[v])
    return frozenset(out)


def separation(L: Polyhedron, T: Iterable[Simplex]) -> float:
    """``eps_L(T)``: least distance between distinct simplices of ``T``."""
    T = sorted({L.check(s) for s in T}, key=skey)
    best = INF
    for i, x in enumerate(T):
        if i == len(T) - 1:
            break
        dist = L.distances(x, radius=best)
        for y in T[i + 1:]:
            d = min((dist.get(v, INF) for v in y), default=INF)
            best = min(best, d)
    return best


def link(L: Polyhedron, x: Simplex) -> Polyhedron:
    x = L.check(x)
    if not x:
        return L
    xs = set(x)
    return Polyhedron(tuple(v for v in t if v not in xs)
                      for t in L.cofaces(x) if len(t) > len(x))


def euler(L: Polyhedron) -> int:
    return sum((-1) ** (len(s) - 1) for s in L.simplices)


def mu(L: Polyhedron, x: Simplex) -> int:
    """``1 - chi(lk_L x)``, with ``lk_L () = L``."""
    x = L.check(x)
    if not x:
        return 1 - euler(L)
    # chi(lk x) = sum over proper cofaces t of (-1)^(dim t - dim x - 1)
    chi = sum((-1) ** (len(t) - len(x) - 1) for t in L.cofaces(x) if len(t) > len(x))
    return 1 - chi


def mu_table(L: Polyhedron) -> dict:
    return {x: mu(L, x) for x in L.diamond}


def intersect(L: Polyhedron, x: Simplex, y: Simplex) -> Simplex:
    common = set(x) & set(y)
    return tuple(v for v in x if v in common)


def moebius_identity(L: Polyhedron, y: Simplex, z: Simplex, mus: dict | None = None) -> int:
    """``sum of mu_L(x)`` over ``x`` in ``L`` and the empty simplex with ``x & y == z``."""
    y, z = L.check(y), L.check(z)
    mus = mu_table(L) if mus is None else mus
    zs = frozenset(z)
    ys = set(y)
    return sum(m for x, m in mus.items() if frozenset(v for v in x if v in ys) == zs)


# -- morphisms ---------------------------------------------------------------


class PolyMorphism:
    """A morphism of polyhedra given by its vertex map."""

    def __init__(self, dom: Polyhedron, cod: Polyhedron, vmap: Mapping):
        self.dom = dom
        self.cod = cod
        self.vmap = dict(vmap)

    def __call__(self, s: Simplex) -> Simplex:
        return self.image(s)

    def image(self, s: Simplex) -> Simplex:
        """The simplex of ``cod`` spanned by the images of the vertices of ``s``."""
        out = []
        for v in s:
            w = self.vmap[v]
            if not out or out[-1] != w:
                out.append(w)
        return tuple(out)

    def image_set(self, T: Iterable[Simplex]) -> set:
        return {self.image(s) for s in T}

    def __eq__(self, other):
        return (isinstance(other, PolyMorphism) and self.dom == other.dom
                and self.cod == other.cod and self.vmap == other.vmap)

    def __repr__(self):
        return f"PolyMorphism({self.dom!r} -> {self.cod!r})"


def check_morphism(f: PolyMorphism) -> PolyMorphism:
    for v in f.dom.vertices:
        if v not in f.vmap:
            raise NotAMorphism(f"vertex {v!r} is not mapped", (v,), "unmapped vertex")
        if (f.vmap[v],) not in f.cod:
            raise NotAMorphism(f"vertex {v!r} is not sent to a vertex", (v,),
                               "vertex to non-vertex")
    for s in f.dom.simplices:
        img = f.image(s)
        if len(set(img)) != len(img):
            raise NotAMorphism(f"order of {s!r} is not preserved", s, "order")
        t = f.cod.simplex_on(img)
        if t is None:
            raise NotAMorphism(f"image of {s!r} does not span a simplex", s, "span")
        if t != img:
            raise NotAMorphism(f"order of {s!r} is not preserved", s, "order")
    return f


def validate_morphism(raw, dom: Polyhedron | None = None, cod: Polyhedron | None = None) -> PolyMorphism:
    """Build and check a morphism from ``{'dom', 'cod', 'vmap'}`` data."""
    if isinstance(raw, PolyMorphism):
        return check_morphism(raw)
    dom = dom if dom is not None else _as_poly(raw["dom"])
    cod = cod if cod is not None else _as_poly(raw["cod"])
    return check_morphism(PolyMorphism(dom, cod, raw["vmap"]))


def _as_poly(x):
    return x if isinstance(x, Polyhedron) else validate(x)


def identity(L: Polyhedron) -> PolyMorphism:
    return PolyMorphism(L, L, {v: v for v in L.vertices})


def compose(f: PolyMorphism, g: PolyMorphism) -> PolyMorphism:
    """``f o g`` (apply ``g`` first)."""
    if g.cod != f.dom:
        raise DomainMismatch("cod(g) != dom(f)")
    return PolyMorphism(g.dom, f.cod, {v: f.vmap[w] for v, w in g.vmap.items()})


def relabel(L: Polyhedron) -> tuple[Polyhedron, dict]:
    """Rename vertices to 0..N-1 in canonical order; returns the new complex and old->new."""
    names = {v: i for i, v in enumerate(sorted(L.vertices, key=vkey))}
    return Polyhedron(tuple(names[v] for v in s) for s in L.simplices), names


# -- subdivisions --------------------------------------------------------------


def _flags(L: Polyhedron) -> list:
    """All chains x0 < x1 < ... of simplices, listed by increasing dimension."""
    memo = {}

    def chains_ending(t):
        if t not in memo:
            out = [(t,)]
            for f in subtuples(t):
                if len(f) < len(t):
                    out.extend(c + (t,) for c in chains_ending(f))
            memo[t] = out
        return memo[t]

    res = []
    for t in L.simplices:
        res.extend(chains_ending(t))
    return res


def subdivide_delta(L: Polyhedron) -> tuple[Polyhedron, PolyMorphism]:
    """Barycentric subdivision, higher-dimensional barycentres higher; phi to highest vertex."""
    dL = Polyhedron(_flags(L))
    phi = PolyMorphism(dL, L, {x: x[-1] for x in L.simplices})
    return dL, phi


def subdivide_delta_prime(L: Polyhedron) -> tuple[Polyhedron, PolyMorphism]:
    """Barycentric subdivision with the opposite order; phi' to lowest vertex."""
    dL = Polyhedron(tuple(reversed(c)) for c in _flags(L))
    phi = PolyMorphism(dL, L, {x: x[0] for x in L.simplices})
    return dL, phi


def subdivide_Delta(L: Polyhedron) -> tuple[Polyhedron, PolyMorphism]:
    """``Delta L = delta' delta L`` with ``Phi_L = phi_L o phi'_{delta L}``."""
    dL, phi = subdivide_delta(L)
    ddL, phi_p = subdivide_delta_prime(dL)
    return ddL, compose(phi, phi_p)


def iterate_Delta(K: Polyhedron, c: int, compact: bool = True):
    """Apply Delta ``c`` times.  Returns ``(L, e, levels)`` with ``e: L -> K``.

    With ``compact`` the vertices are renamed to integers after every step so
    that ids stay small; ``levels`` lists the intermediate complexes.
    """
    levels = [K]
    cur = K
    emap = {v: v for v in K.vertices}
    for _ in range(c):
        nxt, Phi = subdivide_Delta(cur)
        step = Phi.vmap
        if compact:
            nxt, names = relabel(nxt)
            step = {names[v]: w for v, w in Phi.vmap.items()}
        emap = {v: emap[w] for v, w in step.items()}
        cur = nxt
        levels.append(cur)
    return cur, PolyMorphism(cur, K, emap), levels


def star_image_small(L: Polyhedron, ddL: Polyhedron, Phi: PolyMorphism, s: Simplex) -> bool:
    verts = set()
    for t in ddL.cofaces(s):
        verts.update(Phi.vmap[v] for v in t)
    return L.simplex_on(verts) is not None
