"""Modification of ensembles: the morphisms ``e``, ``e_z``, ``e_Z``, the maps
``V``, ``P_z``, ``P`` and the operator ``M``.

The pipeline is implemented for the *concentrated* case: ``E`` is the minimal
``n``-sphere and polyhedra have dimension ``<= n``.  Then ``G_k = 1`` for
``k < n`` and ``G_n`` is infinite cyclic on ``sigma``, so a section over
``L`` is an independent choice of a power of ``sigma`` on every ``n``-simplex.
Sections are stored sparsely as sorted ``((simplex, exponent), ...)``
tuples and ensembles as :class:`~stableorder.freealg.GroupRingElt` over
:class:`ExpGroup`.
"""
from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .complex import (
    INF,
    Polyhedron,
    PolyMorphism,
    generated,
    is_small,
    iterate_Delta,
    mu,
    neighbourhood,
    relabel,
    rho,
    separation,
    skey,
    subdivide_delta,
    subdivide_delta_prime,
    subtuples,
)
from .dummy import DummyGroup, DummyLevel, normalize_cell
from .errors import (
    BudgetExceeded,
    DegreeTooLow,
    EdgeEscapesB,
    LiftFailure,
    QueryTooLarge,
    SeparationFailure,
    SmallnessFailure,
)
from .freealg import (
    AtLeast,
    FreeGroup,
    FreeSimplicialGroup,
    GroupRingElt,
    aug_degree,
    delta,
    gen,
    magnus,
    linear_extension,
    word_pow,
)
from .simpset import DKPartition, SimplicialAbGroup, dk_split, sphere

# -- constants -----------------------------------------------------------------------


@dataclass(frozen=True)
class Constants:
    b1: int
    b2: int
    b3: int
    b4: int
    b5: int
    c: int
    r: int = 2
    m: int = 1
    n: int = 1
    mode: str = "semantic"

    def __post_init__(self):
        if self.mode not in ("strict", "semantic"):
            raise ValueError("mode must be 'strict' or 'semantic'")
        if self.mode == "strict":
            bad = self.violations()
            if bad:
                raise ValueError("constants violate: " + ", ".join(bad))
        if self.c < 1:
            raise ValueError("c must be >= 1")

    def violations(self) -> list:
        b1, b2, b3, b4, b5, c = self.b1, self.b2, self.b3, self.b4, self.b5, self.c
        rules = [
            ("b1>=2", b1 >= 2),
            ("b2>=b1+2", b2 >= b1 + 2),
            ("b3>=2b2", b3 >= 2 * b2),
            ("b4>=2b1+b3", b4 >= 2 * b1 + b3),
            ("b5>=2b2+b4", b5 >= 2 * b2 + b4),
            ("2^(c-1)>=2b5+1", 2 ** (c - 1) >= 2 * b5 + 1),
            ("m<=2n-1", self.m <= 2 * self.n - 1),
            ("r>=2", self.r >= 2),
        ]
        return [name for name, ok in rules if not ok]

    @classmethod
    def strict(cls, r: int = 2, m: int = 1, n: int = 1):
        return cls(2, 4, 8, 12, 20, 7, r, m, n, "strict")

    @property
    def strict_ok(self) -> bool:
        return not self.violations()


# -- the morphism e and its local modifications ---------------------------------------


class Subdivided:
    """``L = Delta^c K`` with ``e: L -> K`` and the centre map to ``L_1 = delta Delta^{c-1} K``."""

    def __init__(self, K: Polyhedron, c: int):
        self.K = K
        self.c = c
        Lc1, e_prev, self.levels = iterate_Delta(K, c - 1)
        self.L1, _ = subdivide_delta(Lc1)
        raw, _ = subdivide_delta_prime(self.L1)
        self.L, names = relabel(raw)
        self.centre = {t: v for v, t in names.items()}
        self.vertex_of = names
        self.evmap = {t: e_prev.vmap[self.centre[t][0][-1]] for t in self.L.vertices}
        self.e = PolyMorphism(self.L, K, self.evmap)

    def image(self, s: tuple, overrides: Mapping | None = None) -> tuple:
        if overrides:
            vs = [overrides.get(v, self.evmap[v]) for v in s]
        else:
            vs = [self.evmap[v] for v in s]
        out = []
        for v in vs:
            if not out or out[-1] != v:
                out.append(v)
        return tuple(out)


def build_e(K: Polyhedron, const: Constants, check_all: bool = False) -> Subdivided:
    """``L = Delta^c K`` and ``e``; optionally verify ``e(O_L(z, b5))`` small for every ``z``."""
    sub = Subdivided(K, const.c)
    if check_all and not _is_simplex_closure(K):
        for z in sub.L.simplices:
            ball = neighbourhood(sub.L, [z], const.b5)
            if is_small(K, sub.image_set(ball)) is None:
                raise SmallnessFailure("e(O(z, b5)) is not small", z)
    return sub


def _is_simplex_closure(K: Polyhedron) -> bool:
    return K.simplex_on(K.vertices) is not None


def _image_set(self, T):
    return {self.image(s) for s in T}


Subdivided.image_set = _image_set


@dataclass
class Patch:
    """``e_z`` as an override of ``e`` on the vertices of ``B``."""

    z: tuple
    u: object
    x: tuple
    B: frozenset
    ball2: frozenset

    def overrides(self) -> dict:
        return {t: self.u for t in self.B}


def build_e_z(sub: Subdivided, z: tuple, const: Constants, verify: bool = True) -> Patch:
    L, K = sub.L, sub.K
    ball2 = neighbourhood(L, [z], const.b2)
    x = is_small(K, sub.image_set(ball2))
    if x is None:
        raise SmallnessFailure("e(O(z, b2)) is not small", z)
    u = x[-1] if x else None
    near = neighbourhood(L, [z], const.b1 + 1)
    gens = [sub.centre[s[0]] for s in near if len(s) == 1]
    B1 = set()
    for g in gens:
        B1.update(subtuples(g))
    B = frozenset(sub.vertex_of[c] for c in B1)
    patch = Patch(z, u, x, B, ball2)
    if verify:
        check_e_z(sub, patch, const)
    return patch


def check_e_z(sub: Subdivided, patch: Patch, const: Constants):
    L, K = sub.L, sub.K
    ov = patch.overrides()
    # no edges going out of B, and e_z is a morphism near B
    touched = set()
    for t in patch.B:
        touched.update(L.star_index[t])
    for s in touched:
        inB = [v in patch.B for v in s]
        if any(a and not b for a, b in zip(inB, inB[1:])):
            raise EdgeEscapesB("an edge leaves B", s)
        img = sub.image(s, ov)
        if K.simplex_on(img) != img:
            raise SmallnessFailure("e_z is not a morphism", s)
    ball1 = neighbourhood(L, [patch.z], const.b1)
    if any(sub.image(s, ov) != (patch.u,) for s in ball1):
        raise SmallnessFailure("property (1) fails", patch.z)
    xs = set(patch.x)
    if any(not set(sub.image(s, ov)) <= xs for s in patch.ball2):
        raise SmallnessFailure("property (2) fails", patch.z)
    if any((t,) not in patch.ball2 for t in patch.B):
        raise SmallnessFailure("property (3) fails", patch.z)


def build_e_Z(sub: Subdivided, patches: Sequence[Patch]) -> dict:
    """Overrides defining ``e_Z``; patches must have pairwise disjoint ``O(z, b2)``."""
    ov = {}
    seen = set()
    for p in patches:
        if seen & p.ball2:
            raise SeparationFailure("patches overlap")
        seen |= p.ball2
        ov.update(p.overrides())
    return ov


# -- ring splitting <G> = <1> + G^+ + D -----------------------------------------------


class RingSplitting:
    """``d, f, g, k, l, q`` for the group ring of a free group (one level of ``FE``)."""

    def __init__(self, F: FreeGroup):
        self.F = F

    def q(self, w) -> dict:
        out = defaultdict(int)
        for g, e in w:
            out[g] += e
        return {g: c for g, c in out.items() if c}

    def d(self, x: GroupRingElt) -> GroupRingElt:
        return x - GroupRingElt.one(self.F) * x.augmentation()

    def f(self, x: GroupRingElt) -> dict:
        out = defaultdict(int)
        for w, c in x.terms.items():
            for g, e in self.q(w).items():
                out[g] += c * e
        return {g: c for g, c in out.items() if c}

    def g(self, a: Mapping) -> GroupRingElt:
        out = GroupRingElt.zero(self.F)
        for e, c in a.items():
            out = out + delta(self.F, gen(e)) * c
        return out

    def k(self, x: GroupRingElt) -> GroupRingElt:
        return x

    def l(self, x: GroupRingElt) -> GroupRingElt:
        return self.d(x) - self.g(self.f(x))

    def check(self, samples: Iterable[GroupRingElt]) -> bool:
        for x in samples:
            if self.f(self.g(self.f(x))) != self.f(x):
                return False
            lx = self.l(x)
            if aug_degree(lx, 1) < 2:
                return False
            if self.l(self.k(lx)) != lx:
                return False
            if self.k(self.l(x)) + self.g(self.f(x)) != self.d(x):
                return False
        for e in self.F.gens:
            w = gen(e)
            if self.f(GroupRingElt.of(self.F, w)) != self.q(w):
                return False
        return True


# -- partitions of sections of a sum of free simplicial abelian groups ------------------


class Partition:
    """``h_z`` for ``D = D^1 (+) ... (+) D^r`` (pieces given as pointed simplicial sets)."""

    def __init__(self, pieces: Sequence, L: Polyhedron, m: int):
        self.D = SimplicialAbGroup(list(pieces), m + 1)
        self.split = dk_split(self.D, m)
        self.inner = DKPartition(self.split, L)
        self.L = L

    def h(self, z: tuple, w: Mapping) -> dict:
        return self.inner.h(z, w)

    def piece_of(self, k: int) -> list:
        """Index of the piece owning each basis vector in dimension ``k``."""
        return [idx for idx, _ in self.D.basis[k]]

    def check(self, w: Mapping) -> dict:
        L, D = self.L, self.D
        total = {y: [0] * D.rank(len(y) - 1) for y in L.simplices}
        support_ok = True
        pieces_ok = True
        used = {idx for y in L.simplices for idx, v in zip(self.piece_of(len(y) - 1), w[y]) if v}
        for z in L.simplices:
            hz = self.h(z, w)
            ball = neighbourhood(L, [z], 1)
            for y, vec in hz.items():
                if any(vec):
                    support_ok &= y in ball
                    owners = {idx for idx, v in zip(self.piece_of(len(y) - 1), vec) if v}
                    pieces_ok &= owners <= used
                total[y] = [a + b for a, b in zip(total[y], vec)]
        return {"sum": all(list(total[y]) == list(w[y]) for y in L.simplices),
                "support": support_ok, "pieces": pieces_ok}


def random_ab_section(D: SimplicialAbGroup, L: Polyhedron, rng: random.Random, terms: int = 2,
                      pieces: Sequence[int] | None = None, spread: int = 2) -> dict:
    """Sum of pullbacks of random vectors along order-respecting maps ``L -> [k]``."""
    order = linear_extension(L, rng)
    w = {y: [0] * D.rank(len(y) - 1) for y in L.simplices}
    for _ in range(terms):
        k = rng.randint(0, min(L.dim + 1, D.bound, max(len(order) - 1, 0)))
        cuts = sorted(rng.sample(range(1, len(order)), k)) if k else []
        vmap = {v: sum(1 for c in cuts if c <= pos) for pos, v in enumerate(order)}
        vec = [0] * D.rank(k)
        for i, (idx, _) in enumerate(D.basis[k]):
            if pieces is None or idx in pieces:
                vec[i] = rng.randint(-spread, spread)
        for y in L.simplices:
            img = D.apply_at(k, vec, tuple(vmap[v] for v in y))
            w[y] = [a + b for a, b in zip(w[y], img)]
    return w


# -- Laurent polynomials in one variable (the group ring of G_n = <sigma>) --------------


def laurent_mul(a: Mapping, b: Mapping) -> dict:
    out = defaultdict(int)
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] += x * y
    return {k: v for k, v in out.items() if v}


def laurent_add(a: Mapping, b: Mapping, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def laurent_div_sq(p: Mapping) -> dict:
    """``p / (t - 1)^2``; raises if ``p`` is not in the square of the augmentation ideal."""
    if not p:
        return {}
    lo, hi = min(p), max(p)
    coeffs = [p.get(lo + i, 0) for i in range(hi - lo + 1)]
    # divide by t - 1 twice (synthetic division from the top)
    for _ in range(2):
        q = [0] * (len(coeffs) - 1)
        acc = 0
        for i in range(len(coeffs) - 1, 0, -1):
            acc += coeffs[i]
            q[i - 1] = acc
        if acc + coeffs[0] != 0:
            raise DegreeTooLow("not divisible by (t-1)^2")
        coeffs = q
    return {lo + i: c for i, c in enumerate(coeffs) if c}


def l_of_power(k: int) -> dict:
    """``l(<sigma^k>) = <sigma^k> - 1 - k(<sigma> - 1)``."""
    return laurent_add(laurent_add({k: 1}, {0: 1}, -1), {1: k, 0: -k}, -1)


def laurent_aug_degree(p: Mapping, N: int):
    if not p:
        return INF
    x = GroupRingElt(FreeGroup(["s"]), {word_pow(gen("s"), k): c for k, c in p.items()})
    return aug_degree(x, N)


# -- sparse sections and ensembles ------------------------------------------------


class ExpGroup:
    """Sections of ``G = F(S^n)`` over a polyhedron of dimension ``<= n``: exponent vectors."""

    one = ()

    @staticmethod
    def make(d: Mapping) -> tuple:
        return tuple(sorted(((y, k) for y, k in d.items() if k), key=lambda yk: skey(yk[0])))

    def mul(self, a: tuple, b: tuple) -> tuple:
        if not a:
            return b
        if not b:
            return a
        d = dict(a)
        for y, k in b:
            d[y] = d.get(y, 0) + k
        return self.make(d)

    def inv(self, a):
        return tuple((y, -k) for y, k in a)

    def magnus(self, key, N):
        from .freealg import NCSeries
        out = NCSeries.one(N)
        for y, k in key:
            out = out * magnus(word_pow(gen("s"), k), N, slot=y)
        return out


EXP = ExpGroup()


def exp_value(v: tuple, y: tuple) -> int:
    for yy, k in v:
        if yy == y:
            return k
    return 0


def ens_support(V: GroupRingElt) -> frozenset:
    out = set()
    for v in V.terms:
        out.update(y for y, _ in v)
    return frozenset(out)


def ens_quasirestrict(V: GroupRingElt, T: Sequence) -> dict:
    Ts = set(T)
    acc = defaultdict(int)
    for v, c in V.terms.items():
        acc[tuple((y, k) for y, k in v if y in Ts)] += c
    return {k: c for k, c in acc.items() if c}


def ens_eta(V: GroupRingElt, N: int):
    return aug_degree(V, N)


def ens_theta(V: GroupRingElt, cap: int):
    """``theta`` for sparse ensembles; minimal ``T`` lies inside the union of supports."""
    if not V.terms:
        return INF
    pool = sorted(ens_support(V), key=skey)
    for size in range(min(cap, len(pool)) + 1):
        for T in combinations(pool, size):
            if ens_quasirestrict(V, T):
                return size
    return INF if cap >= len(pool) else AtLeast(cap + 1)


def ens_from_sections(items: Iterable[tuple[int, Mapping]]) -> GroupRingElt:
    out = defaultdict(int)
    for c, d in items:
        out[EXP.make(d)] += c
    return GroupRingElt(EXP, out)


def ens_fusion_at(V: GroupRingElt, y: tuple) -> dict:
    """``J(V)`` at ``y`` as a Laurent polynomial in ``sigma``."""
    acc = defaultdict(int)
    for v, c in V.terms.items():
        acc[exp_value(v, y)] += c
    return {k: c for k, c in acc.items() if c}


# -- the lift X and the maps V, P_z ---------------------------------------------------


class Pipeline:
    """Concentrated-case construction of ``X``, ``V``, ``P_z`` for ``E`` the minimal ``S^n``."""

    def __init__(self, n: int, rng: random.Random | None = None):
        self.n = n
        self.E = sphere(n)
        self.G = FreeSimplicialGroup(self.E)
        self.DG = DummyGroup(self.G, n + 1)
        self.sigma = gen(self.G.level(n).gens[0])
        self._lifts(rng)
        self._pattern_cache = {}
        self._X_cache = {}

    def _lifts(self, rng):
        G, DG, n = self.G, self.DG, self.n
        sig = self.sigma
        xs = [G.degen(sig, j, n) for j in range(n + 1)]
        y = ()
        for j, xj in enumerate(xs):
            y = G.mul(y, xj if j % 2 == 0 else G.inv(xj))
        unit = DG.unit(n)
        a_t = DG.lift(xs[0], n + 1, {n + 1: unit}, 0, rng)
        y_t = DG.lift(y, n + 1, {i: unit for i in range(1, n + 1)}, 0, rng)
        self.alpha = DG.face(a_t, 0)
        self.beta = DG.face(y_t, 0)
        if DG.project(self.alpha) != sig or DG.project(self.beta) != sig:
            raise LiftFailure("lifts do not lie over sigma")

    def alpha_power(self, k: int):
        DG = self.DG
        base = self.alpha if k >= 0 else DG.inv(self.alpha)
        out = DG.unit(self.n)
        for _ in range(abs(k)):
            out = DG.mul(out, base)
        return out

    def X(self, w: Mapping) -> GroupRingElt:
        """Lift of ``w`` in the square of the augmentation ideal of ``<G_n>``."""
        key = tuple(sorted(w.items()))
        if key in self._X_cache:
            return self._X_cache[key]
        P = laurent_div_sq(w)
        lev = self.DG.level(self.n)
        poly = GroupRingElt(lev, {})
        for k, c in P.items():
            poly = poly + GroupRingElt.of(lev, self.alpha_power(k), c)
        out = delta(lev, self.alpha) * delta(lev, self.beta) * poly
        self._X_cache[key] = out
        return out

    def X_faces_vanish(self, w: Mapping) -> bool:
        x = self.X(w)
        for i in range(self.n + 1):
            acc = defaultdict(int)
            for g, c in x.terms.items():
                acc[self.DG.face(g, i)] += c
            if any(acc.values()):
                return False
        return True

    def projected(self, w: Mapping) -> dict:
        """``<p>(X(w))`` as a Laurent polynomial."""
        acc = defaultdict(int)
        for g, c in self.X(w).terms.items():
            acc[sum(e for _, e in self.DG.project(g))] += c
        return {k: c for k, c in acc.items() if c}

    def _pattern(self, g, t: tuple) -> int:
        key = (g, t)
        if key not in self._pattern_cache:
            word = self.DG.value(g, t)
            self._pattern_cache[key] = sum(e for _, e in word)
        return self._pattern_cache[key]

    def V_local(self, L: Polyhedron, z: tuple, w_z: Mapping, mu_z: int | None = None) -> GroupRingElt:
        """``V`` of the section of ``D`` equal to ``w_z`` at the n-simplex ``z`` and zero elsewhere."""
        if not w_z:
            return GroupRingElt.zero(EXP)
        mu_z = mu(L, z) if mu_z is None else mu_z
        if not mu_z:
            return GroupRingElt.zero(EXP)
        near = set()
        for v in z:
            near.update(y for y in L.star_index[v] if len(y) == self.n + 1)
        pos = {v: i for i, v in enumerate(z)}
        ts = {y: tuple(pos.get(v) for v in y) for y in near}
        out = defaultdict(int)
        for g, c in self.X(w_z).terms.items():
            sec = {}
            for y, t in ts.items():
                k = self._pattern(g, t)
                if k:
                    sec[y] = k
            out[EXP.make(sec)] += mu_z * c
        return GroupRingElt(EXP, out)

    def V(self, L: Polyhedron, w: Mapping) -> GroupRingElt:
        """``V`` on a section of ``D`` (n-simplex -> Laurent polynomial)."""
        out = GroupRingElt.zero(EXP)
        for z, wz in w.items():
            out = out + self.V_local(L, z, wz)
        return out

    def V_general(self, L: Polyhedron, w: Mapping) -> GroupRingElt:
        """Same map through :func:`realize_R` on full sections (small ``L`` only)."""
        from .dummy import project_ensemble, realize_R
        table = {}
        for y in L.simplices:
            lev = self.DG.level(len(y) - 1)
            table[y] = self.X(w[y]) if y in w and w[y] else GroupRingElt(lev, {})
        R = realize_R(L, self.DG, table)
        P = project_ensemble(R, self.G)
        out = defaultdict(int)
        for sec, c in P.terms.items():
            out[EXP.make({y: sum(e for _, e in val) for y, val in sec.table.items() if len(y) == self.n + 1})] += c
        return GroupRingElt(EXP, out)


# -- the modification M ------------------------------------------------------------


class Modifier:
    """``M: <G(K)> -> <G(L)>`` with ``L = Delta^c K`` (concentrated case, dim K <= n)."""

    def __init__(self, K: Polyhedron, const: Constants, pipeline: Pipeline | None = None,
                 sub: Subdivided | None = None):
        if K.dim > const.n:
            raise ValueError("the concentrated pipeline needs dim K <= n")
        self.K = K
        self.const = const
        self.pipe = pipeline or Pipeline(const.n)
        self.sub = sub or build_e(K, const)
        self.L = self.sub.L
        self.n = const.n
        self._patches = {}
        self._Pz = {}
        self._ue = {}

    # -- e and sections ---------------------------------------------------------
    def patch(self, z) -> Patch:
        if z not in self._patches:
            self._patches[z] = build_e_z(self.sub, z, self.const)
        return self._patches[z]

    def u_circ_e(self, u: tuple) -> dict:
        """``u o e`` as ``{n-simplex of L: exponent}``."""
        if u not in self._ue:
            uk = dict(u)
            out = {}
            if uk:
                for y in self.L.of_dim(self.n):
                    img = self.sub.image(y)
                    if len(img) == self.n + 1 and uk.get(img):
                        out[y] = uk[img]
            self._ue[u] = out
        return self._ue[u]

    def u_circ_eZ(self, u: tuple, Z: Sequence) -> dict:
        base = dict(self.u_circ_e(u))
        if not Z:
            return base
        ov = build_e_Z(self.sub, [self.patch(z) for z in Z])
        uk = dict(u)
        touched = set()
        for t in ov:
            touched.update(y for y in self.L.star_index[t] if len(y) == self.n + 1)
        for y in touched:
            img = self.sub.image(y, ov)
            k = uk.get(img, 0) if len(img) == self.n + 1 else 0
            if k:
                base[y] = k
            else:
                base.pop(y, None)
        return base

    # -- P_z and P ---------------------------------------------------------------
    def w_z(self, u: tuple, z: tuple) -> dict:
        """``h_z(l o j o u o e |_zbar)`` at ``z`` (Laurent polynomial)."""
        if len(z) != self.n + 1:
            return {}
        k = self.u_circ_e(u).get(z, 0)
        return l_of_power(k)

    def P_z(self, u: tuple, z: tuple) -> GroupRingElt:
        key = (u, z)
        if key not in self._Pz:
            self._Pz[key] = self.pipe.V_local(self.L, z, self.w_z(u, z))
        return self._Pz[key]

    def active(self, u: tuple) -> list:
        """Simplices ``z`` with ``P_z(u) != 0``."""
        return [z for z in self.u_circ_e(u) if self.P_z(u, z).terms]

    def P(self, u: tuple) -> GroupRingElt:
        out = GroupRingElt.zero(EXP)
        for z in self.u_circ_e(u):
            out = out + self.P_z(u, z)
        return out

    # -- M ---------------------------------------------------------------------------
    def separated_subsets(self, pool: Sequence, budget: int = 200000):
        """Subsets of ``pool`` with separation ``>= b3`` (including the empty set)."""
        pool = sorted(pool, key=skey)
        b3 = self.const.b3
        far = {}
        for i, a in enumerate(pool):
            dist = self.L.distances(a, radius=b3)
            far[a] = {b for b in pool[i + 1:] if min((dist.get(v, INF) for v in b), default=INF) >= b3}
        out = []

        def grow(cur, cand):
            out.append(tuple(cur))
            if len(out) > budget:
                raise BudgetExceeded("too many separated subsets")
            for i, a in enumerate(cand):
                grow(cur + [a], [b for b in cand[i + 1:] if b in far[a]])

        grow([], pool)
        return out

    def _term(self, u: tuple, Z: Sequence, restrict=None) -> GroupRingElt:
        sec = self.u_circ_eZ(u, Z)
        if restrict is not None:
            sec = {y: k for y, k in sec.items() if y in restrict}
        out = GroupRingElt.of(EXP, EXP.make(sec), (-1) ** len(Z))
        for z in Z:
            Pz = self.P_z(u, z)
            if restrict is not None:
                Pz = GroupRingElt(EXP, ens_quasirestrict(Pz, restrict))
            out = out * Pz
            if not out.terms:
                break
        return out

    def M_section(self, u: tuple, budget: int = 200000) -> GroupRingElt:
        """``M(<u>)`` materialized; summands with some ``P_z(u) = 0`` are dropped."""
        subsets = self.separated_subsets(self.active(u), budget)
        cost = sum(math.prod(len(self.P_z(u, z).terms) for z in Z) for Z in subsets)
        if cost > budget:
            raise BudgetExceeded(f"M(<u>) needs about {cost} products")
        out = GroupRingElt.zero(EXP)
        for Z in subsets:
            out = out + self._term(u, Z)
        return out

    def M(self, U: GroupRingElt, budget: int = 200000) -> GroupRingElt:
        out = GroupRingElt.zero(EXP)
        for u, c in U.terms.items():
            out = out + self.M_section(u, budget) * c
            if len(out.terms) > budget:
                raise BudgetExceeded("M(U) has too many terms")
        return out

    # -- queries --------------------------------------------------------------------
    def query_pruned(self, U: GroupRingElt, T: Sequence, budget: int = 200000) -> dict:
        """``M(U)||_T`` summing only over ``Z`` inside ``O_L(T, b1)``."""
        T = list(T)
        ball = neighbourhood(self.L, T, self.const.b1) if T else frozenset()
        acc = GroupRingElt.zero(EXP)
        for u, c in U.terms.items():
            pool = [z for z in ball if z in self.u_circ_e(u)]
            for Z in self.separated_subsets(pool, budget):
                acc = acc + self._term(u, Z, restrict=set(T)) * c
        return ens_quasirestrict(acc, T)

    def query_full(self, U: GroupRingElt, T: Sequence, limit: int = 12) -> dict:
        """``M(U)||_T`` by brute force over every ``Z`` in ``L`` (tiny ``L`` only)."""
        if len(self.L) > limit:
            raise QueryTooLarge(f"L has {len(self.L)} > {limit} simplices")
        simplices = list(self.L.simplices)
        acc = GroupRingElt.zero(EXP)
        for u, c in U.terms.items():
            for r in range(len(simplices) + 1):
                for Z in combinations(simplices, r):
                    if len(Z) > 1 and separation(self.L, Z) < self.const.b3:
                        continue
                    if any(not self.P_z(u, z).terms for z in Z):
                        continue
                    acc = acc + self._term(u, Z) * c
        return ens_quasirestrict(acc, T)

    def query_product(self, U: GroupRingElt, T: Sequence) -> dict:
        """``prod_y <t_y>(<u o e>|_ybar - P(u)|_ybar)`` (valid when ``eps(T) >= b4``)."""
        acc = GroupRingElt.zero(EXP)
        for u, c in U.terms.items():
            ue = self.u_circ_e(u)
            P = self.P(u)
            prod = GroupRingElt.one(EXP)
            for y in T:
                factor = GroupRingElt.of(EXP, EXP.make({y: ue.get(y, 0)}))
                part = defaultdict(int)
                for v, cv in P.terms.items():
                    part[EXP.make({y: exp_value(v, y)})] += cv
                factor = factor - GroupRingElt(EXP, part)
                prod = prod * factor
            acc = acc + prod * c
        return ens_quasirestrict(acc, T)

    def query_closure(self, U: GroupRingElt, T: Sequence) -> dict:
        """``M(U)|_{Tbar}``: restriction to the subpolyhedron generated by ``T``."""
        closure = generated(self.L, T)
        return self.query_pruned(U, [y for y in closure.simplices if len(y) == self.n + 1])


class LazyEnsemble:
    """``M(U)`` answered by queries, cross-checked between evaluators."""

    def __init__(self, mod: Modifier, U: GroupRingElt):
        self.mod = mod
        self.U = U
        self._full = None

    @property
    def L(self):
        return self.mod.L

    def quasirestrict(self, T: Sequence, cross_check: bool = True) -> dict:
        got = self.mod.query_pruned(self.U, T)
        if cross_check and separation(self.L, T) >= self.mod.const.b4:
            other = self.mod.query_product(self.U, T)
            if other != got:
                raise AssertionError(f"product formula disagrees on {T}")
        return got

    def restrict_closure(self, T: Sequence) -> dict:
        return self.mod.query_closure(self.U, T)

    def materialize(self, budget: int = 200000) -> GroupRingElt:
        if self._full is None:
            self._full = self.mod.M(self.U, budget)
        return self._full


# -- checks ----------------------------------------------------------------------------


def random_section_K(K: Polyhedron, n: int, rng: random.Random, spread: int = 3) -> tuple:
    return EXP.make({y: rng.randint(-spread, spread) for y in K.of_dim(n)})


def check_15_1(pipe: Pipeline, L: Polyhedron, w: Mapping) -> bool:
    V = pipe.V(L, w)
    for y in L.of_dim(pipe.n):
        if ens_fusion_at(V, y) != dict(w.get(y, {})):
            return False
    return V.augmentation() == 0


def check_15_2(pipe: Pipeline, L: Polyhedron, w: Mapping) -> bool:
    V = pipe.V(L, w)
    supp = [y for y, p in w.items() if p]
    if not supp:
        return not V.terms
    return ens_support(V) <= neighbourhood(L, supp, 1)


def check_15_3(pipe: Pipeline, L: Polyhedron, w: Mapping, s: int) -> bool:
    V = pipe.V(L, w)
    return aug_degree(V, s) >= s


def check_15_4(mod: Modifier, U: GroupRingElt, Ts: Iterable[Sequence], theta_U, eta_U) -> dict:
    bound = min(theta_U + 1, eta_U)
    tested, failures = 0, []
    for T in Ts:
        if len(T) >= bound:
            continue
        tested += 1
        if mod.query_pruned(U, T):
            failures.append(tuple(T))
    return {"bound": bound, "tested": tested, "failures": failures,
            "passed": not failures, "coverage": "sampled"}


def check_15_5(mod: Modifier, U: GroupRingElt, eta_U, N: int) -> dict:
    target = min(eta_U, mod.const.r)
    MU = mod.M(U)
    d = aug_degree(MU, N)
    return {"target": target, "eta_M": d, "passed": d >= target}


def adversarial_Ts(mod: Modifier, U: GroupRingElt, size: int, rng: random.Random, count: int = 20) -> list:
    """Sets near the supports, mixing close and far pairs."""
    near = set()
    for u in U.terms:
        near.update(mod.active(u))
        near.update(mod.u_circ_e(u))
    near = sorted(neighbourhood(mod.L, near, mod.const.b1) if near else set(), key=skey)
    everything = list(mod.L.simplices)
    out = []
    for _ in range(count):
        T = set()
        while len(T) < size:
            pool = near if near and rng.random() < 0.7 else everything
            T.add(rng.choice(pool))
        out.append(sorted(T, key=skey))
    return out


def main_procedure(K: Polyhedron, U: GroupRingElt, s: int, const: Constants, pipe: Pipeline | None = None,
                   eta_cap: int | None = None, budget: int = 200000):
    """Apply ``(Delta^c, M)`` ``s`` times; returns ``(L, V, history)``."""
    cap = s if eta_cap is None else eta_cap
    e = aug_degree(U, cap)
    if e < s:
        raise DegreeTooLow(f"eta(U) = {e} < {s}")
    pipe = pipe or Pipeline(const.n)
    const_r = Constants(const.b1, const.b2, const.b3, const.b4, const.b5, const.c,
                        max(s, 2), const.m, const.n, const.mode)
    cur_K, cur_U, history = K, U, []
    for step in range(s):
        mod = Modifier(cur_K, const_r, pipe)
        cur_U = mod.M(cur_U, budget)
        cur_K = mod.L
        history.append({"step": step + 1, "simplices": len(cur_K), "terms": len(cur_U.terms)})
    return cur_K, cur_U, history
