"""The dummy of a simplicial group: bound simplicial maps ``B^n -> G``.

Cells of ``B^n`` are tuples over positions ``0..m`` holding ``None`` (outside
the domain) or a value in ``[n]``; defined values are nondecreasing.  A cell is
nondegenerate when no two adjacent positions agree.  ``B^n`` has nondegenerate
cells in every dimension, so elements of the dummy are stored on cells of
dimension ``<= M`` (the truncation of the ambient :class:`DummyGroup`).  Every
operation used here preserves cell dimension, so the truncation is exact for
all questions asked about dimensions ``<= M``.
"""
from __future__ import annotations

import random
from collections import defaultdict
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from .complex import EMPTY, Polyhedron, mu_table, neighbourhood, subtuples
from .errors import G0NotTrivial, LiftFailure, ShapeMismatch, SimplexNotInL
from .freealg import (
    FreeSimplicialGroup,
    GroupRingElt,
    SectionGroup,
    word_inv,
    word_mul,
)
from .simpset import Section, codegeneracy, coface, compose_ops

# -- partial maps ----------------------------------------------------------------


def normalize_cell(b: tuple) -> tuple[tuple, tuple]:
    """``b = c . eta`` with ``c`` nondegenerate; returns ``(c, eta)``."""
    c, eta = [b[0]], [0]
    for x in b[1:]:
        if x != c[-1]:
            c.append(x)
        eta.append(len(c) - 1)
    return tuple(c), tuple(eta)


def compose_partial(t: tuple, b: tuple) -> tuple:
    """``t o b`` for partial maps (``t`` indexed by the values of ``b``)."""
    return tuple(None if x is None else t[x] for x in b)


def precompose(b: tuple, theta: tuple) -> tuple:
    return tuple(b[i] for i in theta)


def is_total(b: tuple) -> bool:
    return all(x is not None for x in b)


@lru_cache(maxsize=None)
def cells_of_B(n: int, M: int) -> tuple:
    """Nondegenerate cells of ``B^n`` of dimension ``<= M``, by dimension."""
    out = []

    def extend(prefix, last_val):
        out.append(prefix)
        if len(prefix) > M:
            return
        for x in [None] + list(range(n + 1)):
            if x == prefix[-1]:
                continue
            if x is not None and last_val is not None and x < last_val:
                continue
            extend(prefix + (x,), x if x is not None else last_val)

    for x in [None] + list(range(n + 1)):
        extend((x,), x)
    out = [b for b in out if len(b) <= M + 1]
    out.sort(key=lambda b: (len(b), [(-1 if x is None else x) for x in b]))
    return tuple(out)


def marked(m: int) -> tuple:
    return (None,) * (m + 1)


# -- elements ----------------------------------------------------------------------


class DummyElt:
    """A bound simplicial map ``B^n -> G`` stored on nondegenerate cells."""

    __slots__ = ("n", "table", "_hash")

    def __init__(self, n: int, table: Mapping):
        self.n = n
        self.table = dict(table)
        self._hash = None

    def __eq__(self, other):
        return isinstance(other, DummyElt) and self.n == other.n and self.table == other.table

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.table.items())))
        return self._hash

    def lines(self) -> list:
        def fmt(b):
            return "(" + ",".join("_" if x is None else str(x) for x in b) + ")"
        return [f"{fmt(b)}:{w!r}" for b, w in self.table.items() if w]

    def __repr__(self):
        body = "; ".join(self.lines())
        return f"DummyElt[{self.n}]({body or '1'})"


def filler(G, n: int, faces: Mapping, missing: int, start=()):
    """Element of ``G_n`` with ``d_i x = faces[i]`` for every ``i`` in ``faces``.

    ``missing`` is an index not in ``faces``.  Corrections by degeneracies of
    face defects: ascending below ``missing``, descending above it.  ``G``
    needs ``face(x, i, n)``, ``degen(x, i, n)``, ``mul`` and ``inv``.
    """
    if missing in faces:
        raise ValueError("the missing index must not be prescribed")
    x = start
    for i in sorted(k for k in faces if k < missing):
        z = G.mul(G.inv(G.face(x, i, n)), faces[i])
        x = G.mul(x, G.degen(z, i, n - 1))
    for i in sorted((k for k in faces if k > missing), reverse=True):
        z = G.mul(G.inv(G.face(x, i, n)), faces[i])
        x = G.mul(x, G.degen(z, i - 1, n - 1))
    for i, y in faces.items():
        if G.face(x, i, n) != y:
            raise LiftFailure(f"prescribed faces are not compatible at d_{i}")
    return x


class _LevelOps:
    """Adapter giving a :class:`DummyGroup` the interface :func:`filler` expects."""

    def __init__(self, DG):
        self.DG = DG

    def face(self, x, i, n):
        return self.DG.face(x, i)

    def degen(self, x, i, n):
        return self.DG.degen(x, i)

    def mul(self, a, b):
        return self.DG.mul(a, b)

    def inv(self, a):
        return self.DG.inv(a)


class DummyGroup:
    """``~G`` for a free simplicial group ``G``, truncated at cell dimension ``M``."""

    def __init__(self, G: FreeSimplicialGroup, M: int):
        self.G = G
        self.M = M
        self._levels = {}

    # -- basic structure ---------------------------------------------------
    def cells(self, n: int) -> tuple:
        return cells_of_B(n, self.M)

    def unit(self, n: int) -> DummyElt:
        return DummyElt(n, {b: () for b in self.cells(n)})

    def value(self, g: DummyElt, b: tuple) -> tuple:
        """Value of ``g`` on an arbitrary (possibly degenerate) cell."""
        return self._value(g.table, b)

    def _value(self, table, b):
        c, eta = normalize_cell(b)
        if c == (None,):
            return ()
        w = table[c]
        if len(c) == len(b):
            return w
        return self.G.apply(w, eta)

    def apply(self, g: DummyElt, theta: tuple) -> DummyElt:
        """Simplicial operator ``theta: [k] -> [n]`` on ``~G_n``."""
        k = len(theta) - 1
        return DummyElt(k, {b: self._value(g.table, compose_partial(theta, b)) for b in self.cells(k)})

    def face(self, g: DummyElt, i: int) -> DummyElt:
        return self.apply(g, coface(g.n, i))

    def degen(self, g: DummyElt, i: int) -> DummyElt:
        return self.apply(g, codegeneracy(g.n, i))

    def mul(self, g: DummyElt, h: DummyElt) -> DummyElt:
        if g.n != h.n:
            raise ShapeMismatch("dimension mismatch")
        return DummyElt(g.n, {b: word_mul(w, h.table[b]) for b, w in g.table.items()})

    def inv(self, g: DummyElt) -> DummyElt:
        return DummyElt(g.n, {b: word_inv(w) for b, w in g.table.items()})

    def is_unit(self, g: DummyElt) -> bool:
        return not any(g.table.values())

    def level(self, n: int) -> "DummyLevel":
        if n not in self._levels:
            self._levels[n] = DummyLevel(self, n)
        return self._levels[n]

    def check(self, g: DummyElt) -> bool:
        """Boundness and compatibility with all faces of ``B^n``."""
        if g.table.get((None,), ()) != ():
            return False
        for b, w in g.table.items():
            k = len(b) - 1
            if k == 0:
                continue
            for i in range(k + 1):
                if self.G.face(w, i, k) != self._value(g.table, precompose(b, coface(k, i))):
                    return False
        return True

    # -- projection and its section --------------------------------------------
    def project(self, g: DummyElt) -> tuple:
        """``p``: evaluation at ``i_n``."""
        return g.table[tuple(range(g.n + 1))]

    def section(self, g: tuple, n: int, rng: random.Random | None = None, length: int = 2) -> DummyElt:
        """A bound map ``B^n -> G`` taking ``i_n`` to ``g`` (requires ``G_0 = 1``).

        Faces of ``i_n`` take the faces of ``g``.  Every other cell ``b`` not
        starting with ``0`` is paired with ``(0, *b)``, whose 0-th face is
        ``b``; pairs are filled in order of dimension through the 0-horn of
        the longer cell.  ``rng`` randomizes the fillers.
        """
        G = self.G
        if G.level(0).gens:
            raise G0NotTrivial("the section of p needs G_0 = 1")
        if self.M < n:
            raise ShapeMismatch(f"truncation M={self.M} is below n={n}")
        table = {(None,): (), (0, None): ()}
        cells = self.cells(n)
        pending = []
        for b in cells:
            if is_total(b):
                table[b] = G.apply(g, b)
            elif b[0] != 0 and b != (None,):
                pending.append(b)
        for b in pending:
            k = len(b) - 1
            c = (0,) + b
            faces = {j: self._value(table, precompose(c, coface(k + 1, j))) for j in range(1, k + 2)}
            start = G.level(k + 1).random(rng, length) if rng else ()
            x = filler(G, k + 1, faces, 0, start)
            if len(c) <= self.M + 1:
                table[c] = x
            table[b] = G.face(x, 0, k + 1)
        missing = [b for b in cells if b not in table]
        if missing:
            raise LiftFailure(f"cells left unfilled: {missing[:3]}")
        return DummyElt(n, {b: table[b] for b in cells})

    def random(self, n: int, rng: random.Random, length: int = 2) -> DummyElt:
        return self.section(self.G.level(n).random(rng, length), n, rng, length)

    def lift(self, g: tuple, n: int, faces: Mapping, missing: int, rng=None) -> DummyElt:
        """Lift ``g`` over ``p`` with prescribed faces ``{i: elt of ~G_{n-1}}``.

        The prescribed faces must lie over the faces of ``g``; the defect of a
        plain lift is corrected inside the kernel of ``p`` by a horn filler.
        """
        h = self.section(g, n, rng)
        defects = {i: self.mul(self.inv(self.face(h, i)), y) for i, y in faces.items()}
        for i, z in defects.items():
            if self.project(z) != ():
                raise LiftFailure(f"face {i} does not lie over d_{i} g")
        c = filler(_LevelOps(self), n, defects, missing, self.unit(n))
        return self.mul(h, c)

    # -- contracting homotopy ---------------------------------------------------
    def homotopy(self, s: tuple, g: DummyElt) -> DummyElt:
        """``I x ~G -> ~G`` at ``(s, g)``: restrict cells to ``(s o b)^{-1}(1)``."""
        if len(s) != g.n + 1:
            raise ShapeMismatch("s must be a map [n] -> [1]")
        return DummyElt(g.n, {b: self._value(g.table, tuple(x if x is not None and s[x] == 1 else None for x in b))
                              for b in self.cells(g.n)})

    def check_homotopy(self, s: tuple, g: DummyElt) -> bool:
        """Simplicial identities for the homotopy at ``(s, g)``."""
        h = self.homotopy(s, g)
        n = g.n
        for i in range(n + 1):
            if n >= 1 and self.face(h, i) != self.homotopy(compose_ops(s, coface(n, i)), self.face(g, i)):
                return False
            if self.degen(h, i) != self.homotopy(compose_ops(s, codegeneracy(n, i)), self.degen(g, i)):
                return False
        return True

    # -- extension operators ---------------------------------------------------
    def e_xy(self, x: tuple, y: tuple, g: DummyElt) -> DummyElt:
        """``e_xy(g)(b) = g(t o b)`` with ``t = i^{-1} o j`` the partial map ``[dim y] -> [dim x]``."""
        pos = {v: i for i, v in enumerate(x)}
        t = tuple(pos.get(v) for v in y)
        s = len(y) - 1
        return DummyElt(s, {b: self._value(g.table, compose_partial(t, b)) for b in self.cells(s)})

    def E(self, L: Polyhedron, x: tuple, g: DummyElt | None) -> Section:
        """``E_x``: section over ``L`` from the value ``g`` at ``x`` of a section over its closure."""
        if x == EMPTY:
            return Section(L, self, {y: self.unit(len(y) - 1) for y in L.simplices})
        if x not in L:
            raise SimplexNotInL(f"{x!r} is not a simplex of L", x)
        return Section(L, self, {y: self.e_xy(x, y, g) for y in L.simplices})

    def section_over_closure(self, x: tuple, g: DummyElt) -> Section:
        """Yoneda: value at ``x`` -> section over the closure of ``x``."""
        closure = Polyhedron(subtuples(x))
        pos = {v: i for i, v in enumerate(x)}
        return Section(closure, self,
                       {f: g if f == x else self.apply(g, tuple(pos[v] for v in f)) for f in closure.simplices})


class DummyLevel:
    """``~G_n`` as a group (for group rings)."""

    def __init__(self, DG: DummyGroup, n: int):
        self.DG = DG
        self.n = n
        self.one = DG.unit(n)

    def mul(self, a, b):
        return self.DG.mul(a, b)

    def inv(self, a):
        return self.DG.inv(a)


class DummySections:
    """``~G(L)`` under pointwise multiplication."""

    def __init__(self, L: Polyhedron, DG: DummyGroup):
        self.L = L
        self.DG = DG
        self.one = Section(L, DG, {y: DG.unit(len(y) - 1) for y in L.simplices})

    def mul(self, u: Section, v: Section) -> Section:
        return Section(self.L, self.DG, {y: self.DG.mul(u.table[y], v.table[y]) for y in self.L.simplices})

    def inv(self, u: Section) -> Section:
        return Section(self.L, self.DG, {y: self.DG.inv(u.table[y]) for y in self.L.simplices})

    def support(self, u: Section) -> frozenset:
        return frozenset(y for y in self.L.simplices if not self.DG.is_unit(u.table[y]))


# -- fusion and realization ------------------------------------------------------


def dummy_fusion(V: GroupRingElt) -> dict:
    """``~J``: ensemble of ``~G``-sections -> simplex-wise group ring elements."""
    S = V.group
    out = {}
    for y in S.L.simplices:
        acc = defaultdict(int)
        for v, c in V.terms.items():
            acc[v.table[y]] += c
        out[y] = GroupRingElt(S.DG.level(len(y) - 1), acc)
    return out


def ring_section_support(w: Mapping) -> frozenset:
    """``sigma(w)`` for a section of the group-ring simplicial abelian group."""
    return frozenset(y for y, val in w.items() if val.terms)


def realize_R(L: Polyhedron, DG: DummyGroup, w: Mapping, mus: Mapping | None = None) -> GroupRingElt:
    """``R(w) = sum_x mu(x) <E_x>(~J_x^{-1}(w|_xbar))``."""
    mus = mu_table(L) if mus is None else mus
    S = DummySections(L, DG)
    out = defaultdict(int)
    for x in L.simplices:
        m = mus[x]
        if not m:
            continue
        for g, c in w[x].terms.items():
            out[DG.E(L, x, g)] += m * c
    return GroupRingElt(S, out)


def ensemble_support(V: GroupRingElt) -> frozenset:
    """``Sigma(V)``: union of supports of the sections with nonzero coefficient."""
    S = V.group
    out = set()
    for v in V.terms:
        out |= S.support(v)
    return frozenset(out)


def project_ensemble(V: GroupRingElt, G: FreeSimplicialGroup) -> GroupRingElt:
    """``<p_#>``: ensembles of ``~G``-sections -> ensembles of ``G``-sections."""
    S = V.group
    SG = SectionGroup(S.L, G)
    DG = S.DG
    return V.map_keys(lambda v: Section(S.L, G, {y: DG.project(v.table[y]) for y in S.L.simplices}), group=SG)


# -- checks ------------------------------------------------------------------------


def check_13_3(L: Polyhedron, DG: DummyGroup, x: tuple, g: DummyElt) -> dict:
    """Items (a), (b), (c) for ``v`` the section over the closure of ``x`` with value ``g``."""
    v = DG.section_over_closure(x, g) if x else None
    Ex = DG.E(L, x, g)
    res = {}
    if x:
        res["a"] = all(Ex.table[f] == v.table[f] for f in v.base.simplices)
    else:
        res["a"] = True
    ok_b = True
    for y in L.simplices:
        z = tuple(u for u in x if u in set(y))
        gz = (v.table[z] if z else None) if x else None
        Ez = DG.E(L, z, gz)
        for f in subtuples(y):
            if Ex.table[f] != Ez.table[f]:
                ok_b = False
    res["b"] = ok_b
    if x:
        supp = DummySections(L, DG).support(Ex)
        res["c"] = supp <= neighbourhood(L, [x], 1)
    else:
        res["c"] = True
    return res


def fusion_of_factored(S: DummySections, factors: Sequence[Section], coeff: int = 1) -> GroupRingElt:
    out = GroupRingElt.one(S)
    for v in factors:
        out = out * (GroupRingElt.of(S, v) - GroupRingElt.one(S))
    return out * coeff


def random_dummy_section(L: Polyhedron, DG: DummyGroup, rng: random.Random, factors: int = 2,
                         length: int = 1) -> Section:
    """Product of ``E_x(g)`` for random simplices ``x`` and random ``g``."""
    S = DummySections(L, DG)
    out = S.one
    for _ in range(factors):
        x = rng.choice(L.simplices)
        g = DG.random(len(x) - 1, rng, length)
        out = S.mul(out, DG.E(L, x, g))
    return out


def factored_R(L: Polyhedron, DG: DummyGroup, terms: Sequence, mus: Mapping | None = None) -> GroupRingElt:
    """``R`` of ``J(sum c prod (<v_l> - 1))`` computed through the factorization.

    ``terms`` is a list of ``(coeff, [v_1, ..., v_s])``.  Each summand is
    ``mu(x) c prod (<E_x(v_l|_xbar)> - 1)``, an explicit product of ``s``
    augmentation generators.
    """
    mus = mu_table(L) if mus is None else mus
    S = DummySections(L, DG)
    out = GroupRingElt.zero(S)
    for x in L.simplices:
        m = mus[x]
        if not m:
            continue
        for c, vs in terms:
            out = out + fusion_of_factored(S, [DG.E(L, x, v.table[x]) for v in vs], m * c)
    return out
