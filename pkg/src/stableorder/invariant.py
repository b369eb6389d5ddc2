"""Degree of a map with respect to a filtration, and order of an invariant on
finite discrete models.

Finite abelian groups are products of cyclic groups ``Z/n_1 x ... x Z/n_k``
with elements stored as tuples.  A target order of ``0`` stands for ``Z``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import BudgetExceeded, ModelTooLarge, TargetNotAbelian
from .freealg import INF, AtLeast, theta as ensemble_theta
from .intlinalg import kernel_and_complement, rank

# -- finite abelian groups with a filtration ------------------------------------------


@dataclass(frozen=True)
class Cyclic:
    """``Z/n_1 x ... x Z/n_k``; ``n_i = 0`` means ``Z`` (only allowed in targets)."""

    orders: tuple

    def norm(self, x) -> tuple:
        if isinstance(x, int) and len(self.orders) == 1:
            x = (x,)
        if not isinstance(x, tuple) or len(x) != len(self.orders) or not all(isinstance(v, int) for v in x):
            raise TargetNotAbelian(f"{x!r} is not an element of {self}")
        return tuple(v % n if n else v for v, n in zip(x, self.orders))

    def add(self, a, b):
        return tuple((x + y) % n if n else x + y for x, y, n in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % n if n else -x for x, n in zip(a, self.orders))

    def scale(self, a, k):
        return tuple((x * k) % n if n else x * k for x, n in zip(a, self.orders))

    @property
    def zero(self):
        return (0,) * len(self.orders)

    @property
    def finite(self):
        return all(self.orders)

    def elements(self) -> list:
        if not self.finite:
            raise ValueError("infinite group")
        return list(product(*(range(n) for n in self.orders)))

    def span(self, gens) -> frozenset:
        out = {self.zero}
        frontier = [self.zero]
        gens = [self.norm(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(out)

    def __str__(self):
        return " x ".join(f"Z/{n}" if n else "Z" for n in self.orders) or "0"


class FiltAbGroup:
    """A finite abelian group ``T = P_1 >= P_2 >= ...``; ``P_s = 0`` past the given chain."""

    def __init__(self, orders: Sequence[int], filtration: Sequence[Sequence]):
        if not orders or any(n <= 0 for n in orders):
            raise ValueError("the filtered group must be finite")
        self.T = Cyclic(tuple(orders))
        self.gens = [[self.T.norm(tuple(g)) for g in layer] for layer in filtration]
        self.P = [self.T.span(layer) for layer in self.gens]
        if not self.P or len(self.P[0]) != math.prod(orders):
            raise ValueError("P_1 must be the whole group")
        for a, b in zip(self.P, self.P[1:]):
            if not b <= a:
                raise ValueError("filtration must decrease")

    @cached_property
    def elements(self) -> list:
        return self.T.elements()

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    @property
    def s_max(self) -> int:
        return len(self.P)

    def level(self, t) -> int:
        """Greatest ``s`` with ``t in P_s`` (``0`` has infinite level)."""
        if t == self.T.zero:
            return INF
        s = 0
        for layer in self.P:
            if t in layer:
                s += 1
        return s

    @cached_property
    def translations(self) -> dict:
        idx = self.index
        out = {}
        for t in self.elements:
            if t != self.T.zero:
                out[t] = np.array([idx[self.T.add(x, t)] for x in self.elements])
        return out

    def P_s(self, s: int) -> frozenset:
        if s <= 0:
            return self.P[0]
        return self.P[s - 1] if s <= len(self.P) else frozenset({self.T.zero})


# -- the degree -----------------------------------------------------------------------


class _Tables:
    """Maps ``T -> U`` as integer arrays, one column per cyclic factor of ``U``."""

    def __init__(self, P: FiltAbGroup, U: Cyclic):
        self.P = P
        self.U = U
        self.mods = np.array([n for n in U.orders], dtype=object)

    def of(self, f: Mapping):
        rows = []
        for x in self.P.elements:
            if x not in f:
                raise ValueError(f"map undefined at {x}")
            rows.append(self.U.norm(f[x]))
        return np.array(rows, dtype=object).reshape(len(rows), len(self.U.orders))

    def diff(self, g, t):
        out = g[self.P.translations[t]] - g
        for j, n in enumerate(self.U.orders):
            if n:
                out[:, j] %= n
        return out

    @staticmethod
    def key(g):
        return tuple(g.flatten().tolist())

    @staticmethod
    def nonzero(g) -> bool:
        return any(v != 0 for v in g.flatten())

    @staticmethod
    def nonzero_at_0(g) -> bool:
        return any(v != 0 for v in g[0])


def _alternating_sum(P: FiltAbGroup, U: Cyclic, f: Mapping, ts: Sequence) -> tuple:
    acc = U.zero
    for es in product((0, 1), repeat=len(ts)):
        x = P.T.zero
        for e, t in zip(es, ts):
            if e:
                x = P.T.add(x, t)
        v = U.norm(f[x])
        acc = U.add(acc, v if sum(es) % 2 == 0 else U.neg(v))
    return acc


@dataclass
class DegReport:
    value: object
    witness: tuple | None = None
    mode: str = ""
    saturated: bool = False


def deg_brute(P: FiltAbGroup, U: Cyclic, f: Mapping, K_max: int) -> DegReport:
    """Greatest weight ``s_1 + ... + s_k`` (``k <= K_max``) of a tuple with a nonzero alternating sum.

    ``saturated`` is set when nonzero sums still occur at length ``K_max - 1``
    or ``K_max``; the degree is then reported as ``AtLeast``.
    """
    T = _Tables(P, U)
    g0 = T.of(f)
    elems = [t for t in P.elements if t != P.T.zero]
    levels = {t: P.level(t) for t in elems}

    # nonzero sums at length >= K_max - 1 (stops at the first one)
    seen = set()

    def long_path(g, k, path):
        if k >= K_max - 1 and T.nonzero_at_0(g):
            return path
        if k == K_max or not T.nonzero(g) or (T.key(g), k) in seen:
            return None
        seen.add((T.key(g), k))
        for t in elems:
            hit = long_path(T.diff(g, t), k + 1, path + (t,))
            if hit is not None:
                return hit
        return None

    hit = long_path(g0, 0, ())
    if hit is not None:
        return DegReport(AtLeast(sum(levels[t] for t in hit)), hit, "brute", True)

    memo = {}

    def best(g, k_left):
        key = (T.key(g), k_left)
        if key in memo:
            return memo[key]
        res = (0, ()) if T.nonzero_at_0(g) else (-1, None)
        if k_left and T.nonzero(g):
            for t in elems:
                w, wit = best(T.diff(g, t), k_left - 1)
                if w >= 0 and w + levels[t] > res[0]:
                    res = (w + levels[t], (t,) + wit)
        memo[key] = res
        return res

    w, wit = best(g0, K_max)
    if w < 0:
        return DegReport(0, None, "brute")
    if _alternating_sum(P, U, f, wit) == U.zero:
        raise AssertionError("brute witness does not reproduce")
    return DegReport(w, wit, "brute")


def window_vanishes(P: FiltAbGroup, U: Cyclic, f: Mapping, r: int) -> tuple | None:
    """Check that every iterated difference of weight in ``(r, r + s_max]`` vanishes identically.

    Returns ``None`` on success, otherwise a violating multiset.
    """
    T = _Tables(P, U)
    elems = [t for t in P.elements if t != P.T.zero]
    levels = {t: P.level(t) for t in elems}
    hi = r + P.s_max

    def walk(g, start, weight, chosen):
        if weight > r:
            return None if not T.nonzero(g) else tuple(chosen)
        if not T.nonzero(g):
            return None
        for i in range(start, len(elems)):
            t = elems[i]
            if weight + levels[t] > hi:
                continue
            bad = walk(T.diff(g, t), i, weight + levels[t], chosen + [t])
            if bad is not None:
                return bad
        return None

    return walk(T.of(f), 0, 0, [])


def _nilpotent_along(T: _Tables, g, t, limit: int = 10000) -> bool:
    seen = set()
    while T.nonzero(g):
        k = T.key(g)
        if k in seen or len(seen) > limit:
            return False
        seen.add(k)
        g = T.diff(g, t)
    return True


def deg_exact(P: FiltAbGroup, U: Cyclic, f: Mapping, budget: int = 200000) -> DegReport:
    """Degree as the heaviest chain of differences ending in a nonzero table.

    Differences commute, so the augmentation ideal acts nilpotently on the
    span of the differences of ``f`` iff each basis translation does on ``f``
    itself; otherwise the degree is infinite.  In the nilpotent case the
    differences form a finite acyclic graph and a memoized longest-path
    search gives the supremum of weights with ``D_S f`` not identically zero.
    That supremum equals the degree because ``D_S f(x) = D_{S+x} f(0) + D_S f(0)``.
    """
    T = _Tables(P, U)
    elems = [t for t in P.elements if t != P.T.zero]
    levels = {t: P.level(t) for t in elems}
    g0 = T.of(f)
    if not T.nonzero(g0):
        return DegReport(0, None, "exact")
    k = len(P.T.orders)
    basis = [tuple(1 if j == i else 0 for j in range(k)) for i in range(k)]
    for e in basis:
        if not _nilpotent_along(T, g0, e):
            return DegReport(INF, None, "exact")
    memo = {}

    def best(g):
        key = T.key(g)
        if key in memo:
            return memo[key]
        if len(memo) > budget:
            raise BudgetExceeded("too many iterated differences")
        res = (0, ())
        for t in elems:
            h = T.diff(g, t)
            if T.nonzero(h):
                w, wit = best(h)
                if w + levels[t] > res[0]:
                    res = (w + levels[t], (t,) + wit)
        memo[key] = res
        return res

    w, wit = best(g0)
    return DegReport(w, wit, "exact")


def deg_filtration(P: FiltAbGroup, U: Cyclic, f: Mapping, mode: str = "exact", K_max: int | None = None):
    if mode == "exact":
        return deg_exact(P, U, f)
    if mode == "brute":
        return deg_brute(P, U, f, K_max if K_max is not None else P.s_max + 4)
    raise ValueError("mode must be 'exact' or 'brute'")


def brute_agrees(exact: DegReport, brute: DegReport) -> bool:
    if exact.value == INF:
        return brute.saturated
    return not brute.saturated and brute.value == exact.value


def additive_degree(P: FiltAbGroup, U: Cyclic, f: Mapping) -> int:
    """Greatest ``s`` with ``f`` nonzero on ``P_s`` (``0`` if ``f = 0``)."""
    s = 0
    for i, layer in enumerate(P.P, start=1):
        if any(U.norm(f[x]) != U.zero for x in layer):
            s = i
    return s


# -- random instances -------------------------------------------------------------------


def random_filtered_group(rng: random.Random, max_order: int = 64, max_len: int = 4) -> FiltAbGroup:
    while True:
        k = rng.randint(1, 3)
        orders = [rng.choice([2, 2, 3, 4, 5, 8]) for _ in range(k)]
        if math.prod(orders) <= max_order:
            break
    T = Cyclic(tuple(orders))
    layers = [[tuple(1 if j == i else 0 for j in range(k)) for i in range(k)]]
    current = T.elements()
    for _ in range(rng.randint(0, max_len - 1)):
        gens = [T.scale(rng.choice(current), rng.choice([1, 2])) for _ in range(rng.randint(1, 2))]
        gens = [g for g in gens if g != T.zero]
        if not gens:
            break
        layers.append(gens)
        current = sorted(T.span(gens))
    return FiltAbGroup(orders, layers)


def random_additive(P: FiltAbGroup, U: Cyclic, rng: random.Random) -> dict:
    imgs = []
    for n in P.T.orders:
        img = []
        for m in U.orders:
            step = m // math.gcd(n, m) if m else 0
            img.append(rng.randrange(0, m, step) if m else 0)
        imgs.append(tuple(img))
    f = {}
    for x in P.elements:
        v = U.zero
        for xi, img in zip(x, imgs):
            v = U.add(v, U.scale(img, xi))
        f[x] = v
    return f


def random_polynomial(P: FiltAbGroup, U: Cyclic, rng: random.Random, degree: int = 2) -> dict:
    """Random sum of products of coordinates (reduced into ``U``)."""
    k = len(P.T.orders)
    monos = [tuple(rng.randrange(k) for _ in range(rng.randint(0, degree))) for _ in range(rng.randint(1, 3))]
    coeffs = [tuple(rng.randrange(m) if m else rng.randint(-2, 2) for m in U.orders) for _ in monos]
    f = {}
    for x in P.elements:
        v = U.zero
        for mono, c in zip(monos, coeffs):
            v = U.add(v, U.scale(c, math.prod(x[i] for i in mono)))
        f[x] = v
    return f


# -- finite models and the order ---------------------------------------------------


class FiniteModel:
    """All maps ``X -> Y`` between finite sets; a map is a tuple of images."""

    def __init__(self, X: Sequence, Y: Sequence, budget: int = 4096):
        self.X = tuple(X)
        self.Y = tuple(Y)
        if len(self.Y) ** len(self.X) > budget:
            raise ModelTooLarge(f"{len(self.Y)}^{len(self.X)} maps exceed the budget {budget}")
        self.maps = list(product(self.Y, repeat=len(self.X)))
        self.index = {a: i for i, a in enumerate(self.maps)}

    def graph(self, a) -> frozenset:
        return frozenset(zip(self.X, a))

    def I_r(self, a, r: int) -> frozenset:
        """Support of the characteristic function of ``Gamma_a^r``."""
        return frozenset(product(sorted(self.graph(a)), repeat=r))

    def h_matrix(self, r: int):
        points = sorted(set().union(*(self.I_r(a, r) for a in self.maps)))
        pidx = {p: i for i, p in enumerate(points)}
        A = [[0] * len(self.maps) for _ in points]
        for j, a in enumerate(self.maps):
            for p in self.I_r(a, r):
                A[pidx[p]][j] = 1
        return A

    def restriction_matrix(self, r: int):
        """Rows ``(V, b)`` for ``#V <= r``; entry ``[a|_V = b]``."""
        rows = []
        for size in range(min(r, len(self.X)) + 1):
            for V in combinations(range(len(self.X)), size):
                for b in product(self.Y, repeat=size):
                    rows.append([int(tuple(a[i] for i in V) == b) for a in self.maps])
        return rows

    def compose(self, g: Sequence[int], h: Mapping, other: "FiniteModel"):
        """``t(a) = h o a o g`` as a map of indices, ``g`` a list of positions in ``X``."""
        return {a: tuple(h[a[g[i]]] for i in range(len(other.X))) for a in self.maps}


def _kernel(A, ncols):
    if not A:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    return kernel_and_complement(A, ncols)[1]


def _vanishes(U: Cyclic, fvals: Sequence, K) -> tuple | None:
    for k in K:
        acc = U.zero
        for c, v in zip(k, fvals):
            if c:
                acc = U.add(acc, U.scale(v, c))
        if acc != U.zero:
            return tuple(k)
    return None


def order_finite_model(M: FiniteModel, U: Cyclic, f: Mapping, r: int) -> bool:
    """``ord f <= r`` via factorization through ``D_r`` (kernel of ``a -> I_r(a)``)."""
    fvals = [U.norm(f[a]) for a in M.maps]
    return _vanishes(U, fvals, _kernel(M.h_matrix(r), len(M.maps))) is None


def order_via_theta(M: FiniteModel, U: Cyclic, f: Mapping, r: int) -> bool:
    """``ord f <= r`` via vanishing on ensembles with ``theta > r``."""
    fvals = [U.norm(f[a]) for a in M.maps]
    return _vanishes(U, fvals, _kernel(M.restriction_matrix(r), len(M.maps))) is None


def order_violation(M: FiniteModel, U: Cyclic, f: Mapping, r: int, theta_route: bool = False) -> dict | None:
    """A combination of maps killed by the order-``r`` test on which ``f`` is nonzero."""
    A = M.restriction_matrix(r) if theta_route else M.h_matrix(r)
    fvals = [U.norm(f[a]) for a in M.maps]
    k = _vanishes(U, fvals, _kernel(A, len(M.maps)))
    if k is None:
        return None
    return {a: c for a, c in zip(M.maps, k) if c}


def order(M: FiniteModel, U: Cyclic, f: Mapping, route: Callable = order_finite_model) -> int:
    for r in range(len(M.X) + 1):
        if route(M, U, f, r):
            return r
    raise AssertionError("ord <= #X always holds")


def routes_same_kernel(M: FiniteModel, r: int) -> bool:
    n = len(M.maps)
    K1 = _kernel(M.h_matrix(r), n)
    K2 = _kernel(M.restriction_matrix(r), n)
    # equal lattices iff each basis lies in the span of the other (both saturated)
    return _in_span(K1, K2, n) and _in_span(K2, K1, n)


def _in_span(K1, K2, n) -> bool:
    if not K1:
        return True
    base = rank([list(row) for row in zip(*K2)], len(K2)) if K2 else 0
    both = K2 + K1
    return rank([list(row) for row in zip(*both)], len(both)) == base


# -- theta on finite models -------------------------------------------------------


def theta_top(A: Mapping, n_points: int, cap: int | None = None):
    """``inf #V`` with ``A|_V != 0``; ``A`` maps tuples (maps on ``range(n_points)``) to ints."""
    A = {a: c for a, c in A.items() if c}
    if not A:
        return INF
    top = n_points if cap is None else min(cap, n_points)
    for size in range(top + 1):
        for V in combinations(range(n_points), size):
            acc = {}
            for a, c in A.items():
                key = tuple(a[i] for i in V)
                acc[key] = acc.get(key, 0) + c
            if any(acc.values()):
                return size
    return INF if top >= n_points else AtLeast(top + 1)


def push(A: Mapping, t: Mapping) -> dict:
    out = {}
    for a, c in A.items():
        b = t[a]
        out[b] = out.get(b, 0) + c
    return {b: c for b, c in out.items() if c}


def check_17_1(g: Sequence[int], h: Mapping, A: Mapping, n_points: int) -> dict:
    """``theta(t(A)) >= theta(A)`` for ``t(a) = h o a o g``."""
    tA = push(A, {a: tuple(h[a[i]] for i in g) for a in A})
    before = theta_top(A, n_points)
    after = theta_top(tA, len(g))
    return {"theta": before, "theta_t": after, "passed": after >= before}


def section_tables(U) -> tuple[dict, list]:
    """Sections of an ensemble as maps ``simplex -> value`` on a fixed order of simplices."""
    L = U.group.L
    simplices = list(L.simplices)
    A = {}
    for v, c in U.terms.items():
        key = tuple(v.table[y] for y in simplices)
        A[key] = A.get(key, 0) + c
    return {a: c for a, c in A.items() if c}, simplices


def theta_section_vs_model(U, cap: int | None = None) -> dict:
    A, simplices = section_tables(U)
    top = len(simplices) if cap is None else cap
    model = theta_top(A, len(simplices), top)
    ens = ensemble_theta(U, top)
    return {"model": model, "ensemble": ens, "passed": model == ens}
