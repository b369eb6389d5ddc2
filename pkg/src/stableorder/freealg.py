"""Free groups, group rings, Magnus expansion and the filtration machinery.

Words are tuples of ``(generator, +1 | -1)`` pairs, freely reduced.  Group ring
elements carry the group they live over so that products can be formed.
Degrees that exceed a truncation are reported as :class:`AtLeast`.
"""
from __future__ import annotations

import math
import random
from collections import defaultdict
from itertools import combinations, product
from typing import Hashable, Iterable, Mapping, Sequence

from .complex import Polyhedron, subtuples
from .errors import DegreeTooLow, NotAdditive, TargetNotFree, UnknownGenerator
from .simpset import Section, SimplicialSet, embed_op, surjections

INF = math.inf


class AtLeast(int):
    """A capped degree: the true value is ``>= int(self)``."""

    exact = False

    def __repr__(self):
        return f">={int(self)}"

    __str__ = __repr__


def is_exact(d) -> bool:
    return not isinstance(d, AtLeast)


# -- words -------------------------------------------------------------------------


def reduce(letters: Iterable, star=None) -> tuple:
    """Free reduction, erasing letters on the marked generator ``star``."""
    out = []
    for g, e in letters:
        if star is not None and g == star:
            continue
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def word_mul(u: tuple, v: tuple) -> tuple:
    i = 0
    while i < len(u) and i < len(v) and u[-1 - i][0] == v[i][0] and u[-1 - i][1] == -v[i][1]:
        i += 1
    return u[:len(u) - i] + v[i:]


def word_inv(u: tuple) -> tuple:
    return tuple((g, -e) for g, e in reversed(u))


def word_pow(u: tuple, k: int) -> tuple:
    base = u if k >= 0 else word_inv(u)
    out = ()
    for _ in range(abs(k)):
        out = word_mul(out, base)
    return out


def commutator(u: tuple, v: tuple) -> tuple:
    """``[u, v] = u v u^-1 v^-1``."""
    return word_mul(word_mul(u, v), word_mul(word_inv(u), word_inv(v)))


def gen(g) -> tuple:
    return ((g, 1),)


class FreeGroup:
    """Free group on ``gens``; the optional ``star`` generator is the identity."""

    def __init__(self, gens: Iterable, star=None):
        self.gens = tuple(g for g in gens if g != star)
        self.star = star
        self._gset = set(self.gens)
        self.one = ()

    def __repr__(self):
        return f"FreeGroup({list(self.gens)!r})"

    def word(self, letters: Iterable) -> tuple:
        letters = list(letters)
        for g, e in letters:
            if g != self.star and g not in self._gset:
                raise UnknownGenerator(f"{g!r} is not a generator")
            if e not in (1, -1):
                raise ValueError("exponents must be +1 or -1")
        return reduce(letters, self.star)

    def mul(self, u, v):
        return word_mul(u, v)

    def inv(self, u):
        return word_inv(u)

    def magnus(self, w, N: int) -> "NCSeries":
        return magnus(w, N)

    def random(self, rng: random.Random, length: int) -> tuple:
        if not self.gens:
            return ()
        return reduce((rng.choice(self.gens), rng.choice((1, -1))) for _ in range(length))


class ProductGroup:
    """Finite product of free groups; elements are tuples of words."""

    def __init__(self, factors: Sequence[FreeGroup]):
        self.factors = tuple(factors)
        self.one = tuple(() for _ in self.factors)

    def mul(self, u, v):
        return tuple(word_mul(a, b) for a, b in zip(u, v))

    def inv(self, u):
        return tuple(word_inv(a) for a in u)

    def magnus(self, w, N: int) -> "NCSeries":
        return magnus_tuple(w, N)

    def project(self, u, J: Sequence[int]):
        return tuple(u[j] for j in J)

    def random(self, rng, length):
        return tuple(f.random(rng, length) for f in self.factors)


# -- group rings -------------------------------------------------------------------


class GroupRingElt:
    """Finite integer combination of group elements of ``group``."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms: Mapping | None = None):
        self.group = group
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, group, g, coeff: int = 1):
        return cls(group, {g: coeff})

    @classmethod
    def one(cls, group):
        return cls(group, {group.one: 1})

    @classmethod
    def zero(cls, group):
        return cls(group, {})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}<{k!r}>" for k, c in self.terms.items())

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, GroupRingElt) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _combine(self, other, sign):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + sign * c
        return GroupRingElt(self.group, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return GroupRingElt(self.group, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElt(self.group, {k: c * other for k, c in self.terms.items()})
        out = defaultdict(int)
        mul = self.group.mul
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                out[mul(a, b)] += ca * cb
        return GroupRingElt(self.group, out)

    __rmul__ = lambda self, k: self.__mul__(k)

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def map_keys(self, f, group=None) -> "GroupRingElt":
        """Image under the ring map induced by a group map ``f``."""
        out = defaultdict(int)
        for k, c in self.terms.items():
            out[f(k)] += c
        return GroupRingElt(group if group is not None else self.group, out)


def delta(group, g) -> GroupRingElt:
    """``<g> - 1``."""
    return GroupRingElt.of(group, g) - GroupRingElt.one(group)


def ring_product(factors: Sequence[GroupRingElt], group) -> GroupRingElt:
    out = GroupRingElt.one(group)
    for f in factors:
        out = out * f
    return out


# -- noncommutative series ------------------------------------------------------


class NCSeries:
    """Truncated noncommutative power series with integer coefficients.

    Monomials are tuples of ``(slot, generator)`` symbols.  Symbols in
    different slots commute, so monomials are kept stably sorted by slot.
    """

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms: Mapping | None = None):
        self.N = N
        self.terms = {m: c for m, c in (terms or {}).items() if c and len(m) <= N}

    @classmethod
    def one(cls, N):
        return cls(N, {(): 1})

    @classmethod
    def var(cls, N, g, slot=0, coeff=1):
        return cls(N, {((slot, g),): coeff})

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({(): other} if other else {})
        return isinstance(other, NCSeries) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return NCSeries(min(self.N, other.N), out)

    def __neg__(self):
        return NCSeries(self.N, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "NCSeries":
        return NCSeries(self.N, {m: c * k for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        N = min(self.N, other.N)
        out = defaultdict(int)
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                if len(a) + len(b) <= N:
                    out[_canon(a + b)] += ca * cb
        return NCSeries(N, out)

    def order(self):
        """Least degree of a nonzero monomial; ``inf`` for the zero series."""
        return min((len(m) for m in self.terms), default=INF)

    def homogeneous(self, d: int) -> dict:
        return {m: c for m, c in self.terms.items() if len(m) == d}

    def truncate(self, N: int) -> "NCSeries":
        return NCSeries(min(N, self.N), self.terms)

    def lines(self) -> list:
        """Canonical text form, one ``monomial:coefficient`` per line."""
        def label(m):
            return "1" if not m else "*".join(f"{s}.{g!r}" if s else f"{g!r}" for s, g in m)
        rows = sorted(self.terms.items(), key=lambda kv: (len(kv[0]), [(s, repr(g)) for s, g in kv[0]]))
        return [f"{label(m)}:{c}" for m, c in rows]

    def __repr__(self):
        return "NCSeries(" + ", ".join(self.lines()) + f"; N={self.N})"


def _canon(m: tuple) -> tuple:
    if len({s for s, _ in m}) <= 1:
        return m
    return tuple(sorted(m, key=lambda sym: sym[0]))


def _letter_series(g, e, N, slot):
    if e == 1:
        return NCSeries(N, {(): 1, ((slot, g),): 1})
    terms = {}
    for k in range(N + 1):
        terms[((slot, g),) * k] = (-1) ** k
    return NCSeries(N, terms)


def magnus(w: tuple, N: int, slot=0) -> NCSeries:
    """Magnus expansion ``x -> 1 + X`` truncated at degree ``N``."""
    if N < 0:
        raise ValueError("truncation must be >= 0")
    out = NCSeries.one(N)
    for g, e in w:
        out = out * _letter_series(g, e, N, slot)
    return out


def magnus_tuple(ws: Sequence[tuple], N: int) -> NCSeries:
    out = NCSeries.one(N)
    for slot, w in enumerate(ws):
        if w:
            out = out * magnus(w, N, slot)
    return out


def magnus_ring(V: GroupRingElt, N: int) -> NCSeries:
    out = NCSeries(N)
    for k, c in V.terms.items():
        out = out + V.group.magnus(k, N).scale(c)
    return out


def aug_degree(V: GroupRingElt, N: int):
    """Largest ``s`` with ``V`` in the s-th augmentation power, capped at ``N``.

    Exact for products of free groups (Magnus order).  Returns ``inf`` for
    ``V = 0`` and ``AtLeast(N + 1)`` if no monomial of degree ``<= N`` survives.
    """
    if not V.terms:
        return INF
    if V.augmentation() != 0:
        return 0
    order = magnus_ring(V, N).order()
    return AtLeast(N + 1) if order == INF else order


def gamma_member(w: tuple, s: int) -> bool:
    if s < 1:
        raise ValueError("s must be >= 1")
    return magnus(w, s - 1) == NCSeries.one(s - 1)


def gamma_sample(group: FreeGroup, s: int, rng: random.Random, length: int = 2) -> tuple:
    """Left-normed commutator of ``s`` random words (a random word for ``s = 1``)."""
    w = group.random(rng, length)
    for _ in range(s - 1):
        w = commutator(w, group.random(rng, length))
    return w


def basic_commutators(gens: Sequence, weight: int) -> list:
    """Left-normed commutators ``[...[g_1, g_2], ..., g_weight]`` with ``g_1 > g_2 <= g_3 ...``.

    Weight <= 3 gives Hall basic commutators on ordered generators.
    """
    gens = list(gens)
    if weight == 1:
        return [gen(g) for g in gens]
    out = []
    if weight == 2:
        for i, j in combinations(range(len(gens)), 2):
            out.append(commutator(gen(gens[j]), gen(gens[i])))
        return out
    if weight == 3:
        for i, j in combinations(range(len(gens)), 2):
            c = commutator(gen(gens[j]), gen(gens[i]))
            for k in range(i, len(gens)):
                out.append(commutator(c, gen(gens[k])))
        return out
    raise ValueError("basic commutators are listed through weight 3")


# -- the free simplicial group FE ----------------------------------------------


class FreeSimplicialGroup:
    """``G = FE`` for a pointed simplicial set ``E``.

    ``G_n`` is free on the non-base ``n``-simplices of ``E``.
    """

    def __init__(self, E: SimplicialSet):
        if E.basepoint is None:
            from .errors import NotPointed
            raise NotPointed("FE needs a pointed simplicial set")
        self.E = E
        self._levels = {}

    def level(self, n: int) -> FreeGroup:
        if n not in self._levels:
            self._levels[n] = FreeGroup([x for x in self.E.simplices(n) if not self.E.is_base(x)])
        return self._levels[n]

    def canonical(self, x):
        """``i(x)``: the generator word of a simplex."""
        return () if self.E.is_base(x) else gen(x)

    def apply(self, w: tuple, theta: tuple) -> tuple:
        E = self.E
        images = ((E.apply(g, theta), e) for g, e in w)
        return reduce((y, e) for y, e in images if not E.is_base(y))

    def face(self, w, i, n):
        from .simpset import coface
        return self.apply(w, coface(n, i))

    def degen(self, w, i, n):
        from .simpset import codegeneracy
        return self.apply(w, codegeneracy(n, i))

    @staticmethod
    def is_unit(w) -> bool:
        return w == ()

    mul = staticmethod(word_mul)
    inv = staticmethod(word_inv)


class SectionGroup:
    """``G(L)`` under pointwise multiplication."""

    def __init__(self, L: Polyhedron, G: FreeSimplicialGroup):
        self.L = L
        self.G = G
        self.one = Section(L, G, {y: () for y in L.simplices})

    def mul(self, u: Section, v: Section) -> Section:
        return Section(self.L, self.G, {y: word_mul(u.table[y], v.table[y]) for y in self.L.simplices})

    def inv(self, u: Section) -> Section:
        return Section(self.L, self.G, {y: word_inv(u.table[y]) for y in self.L.simplices})

    def power(self, u: Section, k: int) -> Section:
        return Section(self.L, self.G, {y: word_pow(u.table[y], k) for y in self.L.simplices})

    def product_group(self, T: Sequence) -> ProductGroup:
        return ProductGroup([self.G.level(len(y) - 1) for y in T])

    def commutator(self, u, v):
        return self.mul(self.mul(u, v), self.mul(self.inv(u), self.inv(v)))


def ensemble(group: SectionGroup, sections: Iterable[tuple[int, Section]]) -> GroupRingElt:
    V = GroupRingElt.zero(group)
    for c, v in sections:
        V = V + GroupRingElt.of(group, v, c)
    return V


def quasirestriction(V: GroupRingElt, T: Sequence) -> GroupRingElt:
    """``V||_T`` as an element of the group ring of ``prod_{y in T} G_{dim y}``."""
    SG = V.group
    out = defaultdict(int)
    for v, c in V.terms.items():
        out[tuple(v.table[y] for y in T)] += c
    return GroupRingElt(SG.product_group(T) if isinstance(SG, SectionGroup) else None, out)


def eta(V: GroupRingElt, N: int):
    """Augmentation degree of ``V||_L`` (capped at ``N``)."""
    SG = V.group
    if not isinstance(SG, SectionGroup) or not isinstance(SG.G, FreeSimplicialGroup):
        raise TargetNotFree("eta needs sections of a free simplicial group")
    return aug_degree(quasirestriction(V, SG.L.simplices), N)


def theta(V: GroupRingElt, cap: int, simplices: Sequence | None = None):
    """Least ``#T`` with ``V||_T != 0``; ``AtLeast(cap + 1)`` if none up to ``cap``."""
    if not V.terms:
        return INF
    SG = V.group
    pool = list(simplices if simplices is not None else SG.L.simplices)
    for size in range(min(cap, len(pool)) + 1):
        for T in combinations(pool, size):
            acc = defaultdict(int)
            for v, c in V.terms.items():
                acc[tuple(v.table[y] for y in T)] += c
            if any(acc.values()):
                return size
    if cap >= len(pool):
        # V||_L = 0 forces V = 0 (sections are determined by their values)
        return INF
    return AtLeast(cap + 1)


# -- sections of FE: pullbacks along maps to standard simplices ------------------


def linear_extension(L: Polyhedron, rng: random.Random | None = None):
    """A total order of vertices refining every simplex order, or None."""
    succ = defaultdict(set)
    indeg = {v: 0 for v in L.vertices}
    for s in L.simplices:
        for a, b in zip(s, s[1:]):
            if b not in succ[a]:
                succ[a].add(b)
                indeg[b] += 1
    ready = [v for v, d in indeg.items() if d == 0]
    out = []
    while ready:
        ready.sort(key=repr)
        v = ready.pop(rng.randrange(len(ready)) if rng else 0)
        out.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return out if len(out) == len(indeg) else None


def pullback_section(L: Polyhedron, G: FreeSimplicialGroup, vmap: Mapping, k: int, g: tuple) -> Section:
    """``g o f`` for ``g in G_k`` and an order-respecting vertex map ``f: L -> [k]``."""
    table = {}
    for y in L.simplices:
        table[y] = G.apply(g, tuple(vmap[v] for v in y))
    return Section(L, G, table)


def cycle_generators(G: FreeSimplicialGroup, k: int) -> list:
    """Generators of ``G_k`` all of whose faces are trivial."""
    if k == 0:
        return list(G.level(0).gens)
    return [x for x in G.level(k).gens
            if all(G.E.is_base(G.E.face(x, i)) for i in range(k + 1))]


def bump_section(L: Polyhedron, G: FreeSimplicialGroup, y: tuple, z: tuple) -> Section:
    """Section equal to ``z`` at a maximal simplex ``y`` and trivial elsewhere."""
    table = {x: () for x in L.simplices}
    table[y] = z
    return Section(L, G, table)


def random_section(L: Polyhedron, G: FreeSimplicialGroup, rng: random.Random,
                   s: int = 1, factors: int = 2, k: int | None = None, length: int = 2) -> Section:
    """Random element of ``(gamma_s G)(L)``.

    A product of pullbacks of ``gamma_s G_k`` along surjective monotone maps
    ``L -> [k]`` and of bumps at maximal simplices.
    """
    order = linear_extension(L, rng)
    if order is None:
        raise ValueError("polyhedron has no compatible total vertex order")
    SG = SectionGroup(L, G)
    maximal = [y for y in L.simplices if len(L.cofaces(y)) == 1]
    out = SG.one
    for _ in range(factors):
        if rng.random() < 0.5:
            y = rng.choice(maximal)
            cyc = cycle_generators(G, len(y) - 1)
            if cyc:
                sub = FreeGroup(cyc)
                out = SG.mul(out, bump_section(L, G, y, gamma_sample(sub, s, rng, length)))
                continue
        kk = rng.randint(1, max(L.dim, 1) + 1) if k is None else k
        kk = min(kk, max(len(order) - 1, 0))
        cuts = sorted(rng.sample(range(1, len(order)), kk)) if kk else []
        vmap = {v: sum(1 for c in cuts if c <= pos) for pos, v in enumerate(order)}
        g = gamma_sample(G.level(kk), s, rng, length)
        out = SG.mul(out, pullback_section(L, G, vmap, kk, g))
    return out


def Is_generator_sample(SG: SectionGroup, s: int, rng: random.Random, k_max: int = 3) -> GroupRingElt:
    """``(<v_1> - 1) ... (<v_k> - 1)`` with ``v_l`` in ``gamma_{s_l} G`` and ``sum s_l >= s``."""
    if s == 0 and rng.random() < 0.3:
        return GroupRingElt.one(SG)
    parts = []
    remaining = s
    while remaining > 0 or not parts:
        sl = rng.randint(1, max(1, min(remaining, 3))) if remaining > 0 else 1
        parts.append(sl)
        remaining -= sl
        if len(parts) >= k_max and remaining > 0:
            parts[-1] += remaining
            remaining = 0
    out = GroupRingElt.one(SG)
    for sl in parts:
        v = random_section(SG.L, SG.G, rng, s=sl)
        out = out * delta(SG, v)
    return out


# -- fusion --------------------------------------------------------------------


def fusion(V: GroupRingElt) -> dict:
    """``J(V)``: simplex ``y`` -> element of the group ring of ``G_{dim y}``."""
    SG = V.group
    out = {}
    for y in SG.L.simplices:
        grp = SG.G.level(len(y) - 1)
        acc = defaultdict(int)
        for v, c in V.terms.items():
            acc[v.table[y]] += c
        out[y] = GroupRingElt(grp, acc)
    return out


def fusion_inverse_simplex(G: FreeSimplicialGroup, y: tuple, value: GroupRingElt) -> GroupRingElt:
    """Inverse of fusion over the closure of a single simplex ``y``."""
    closure = Polyhedron(subtuples(y))
    SG = SectionGroup(closure, G)
    out = GroupRingElt.zero(SG)
    for g, c in value.terms.items():
        table = {f: g if f == y else G.apply(g, embed_op(f, y)) for f in closure.simplices}
        out = out + GroupRingElt.of(SG, Section(closure, G, table), c)
    return out


# -- (6.1): products of free groups ----------------------------------------------


def sample_S(PG: ProductGroup, J: Sequence[int], rng: random.Random, terms: int = 2, length: int = 2) -> GroupRingElt:
    """Random element of ``S(J)``: tensor of augmentation-ideal elements on ``J``, ``<1>`` elsewhere."""
    out = GroupRingElt.one(PG)
    for i in J:
        piece = GroupRingElt.zero(PG)
        for _ in range(terms):
            w = PG.factors[i].random(rng, length)
            elt = tuple(w if j == i else () for j in range(len(PG.factors)))
            piece = piece + delta(PG, elt) * rng.choice((-2, -1, 1, 2))
        out = out * piece
    return out


def project_ring(V: GroupRingElt, J: Sequence[int]) -> GroupRingElt:
    return V.map_keys(lambda u: tuple(u[j] for j in J), group=None)


def check_6_1(alphabets: Sequence[Sequence], s: int, samples: int, rng: random.Random) -> dict:
    """Sample ``(+)_{#J >= s} S(J)`` and check kernel membership and degree ``>= s``."""
    PG = ProductGroup([FreeGroup(a) for a in alphabets])
    I = range(len(alphabets))
    big = [J for r in range(s, len(alphabets) + 1) for J in combinations(I, r)]
    small = [J for r in range(0, min(s, len(alphabets) + 1)) for J in combinations(I, r)]
    failures = []
    for n in range(samples):
        if not big:
            break
        V = GroupRingElt.zero(PG)
        for _ in range(rng.randint(1, 3)):
            V = V + sample_S(PG, rng.choice(big), rng)
        in_kernel = all(not project_ring(V, J).terms for J in small)
        deg = aug_degree(V, s)
        if not in_kernel or deg < s:
            failures.append((n, V, in_kernel, deg))
    return {"samples": samples if big else 0, "failures": failures, "passed": not failures}


# -- (8.1): products of affine functions ------------------------------------------


class AdditiveMap:
    """Homomorphism from a free group to the additive group of a ring, given on generators."""

    def __init__(self, values: Mapping, zero):
        self.values = dict(values)
        self.zero = zero

    def __call__(self, w: tuple):
        out = self.zero
        for g, e in w:
            out = out + (self.values[g] if e == 1 else -self.values[g])
        return out


def check_additive(a: AdditiveMap, group: FreeGroup, rng: random.Random, trials: int = 10):
    for _ in range(trials):
        u, v = group.random(rng, 3), group.random(rng, 3)
        if a(word_mul(u, v)) != a(u) + a(v):
            raise NotAdditive(f"a(uv) != a(u) + a(v) for u={u!r}, v={v!r}")


def affine_product_Q(maps: Sequence[AdditiveMap], V: GroupRingElt, one):
    """``Q(sum m_v <v>) = sum m_v prod_s (1 + a_s(v))``."""
    out = one * 0 if hasattr(one, "scale") else one - one
    for v, c in V.terms.items():
        p = one
        for a in maps:
            p = p * (one + a(v))
        out = out + p.scale(c)
    return out


def random_series(N: int, gens: Sequence, rng: random.Random, density: int = 3, lo: int = 1) -> NCSeries:
    terms = {}
    for _ in range(density):
        d = rng.randint(lo, N) if N >= lo else 0
        m = tuple((0, rng.choice(gens)) for _ in range(d))
        terms[m] = terms.get(m, 0) + rng.randint(-3, 3)
    return NCSeries(N, terms)


def augmentation_power_generator(group, s: int, rng: random.Random, length: int = 2) -> GroupRingElt:
    out = GroupRingElt.one(group)
    for _ in range(s):
        out = out * delta(group, group.random(rng, length))
    return out


def check_8_1(r: int, group: FreeGroup, N: int, samples: int, rng: random.Random) -> dict:
    """Q vanishes on sampled generators of the (r+1)-st augmentation power."""
    gens = list(group.gens)
    one = NCSeries.one(N)
    maps = []
    for _ in range(r):
        a = AdditiveMap({g: random_series(N, gens, rng, lo=0) for g in gens}, NCSeries(N))
        check_additive(a, group, rng)
        maps.append(a)
    failures = []
    for n in range(samples):
        x = augmentation_power_generator(group, r + 1, rng)
        q = affine_product_Q(maps, x, one)
        if q != NCSeries(N):
            failures.append((n, x, q))
    return {"samples": samples, "failures": failures, "passed": not failures}


# -- (9.2): strictness ----------------------------------------------------------


def hom_map(t, target_group):
    """``<t>`` for a group homomorphism ``t`` given as a callable on elements."""

    def f(V: GroupRingElt) -> GroupRingElt:
        return V.map_keys(t, group=target_group)

    return f


def free_hom(images: Mapping, target: FreeGroup):
    """Homomorphism between free groups determined by generator images."""

    def t(w):
        out = ()
        for g, e in w:
            out = word_mul(out, images[g] if e == 1 else word_inv(images[g]))
        return out

    return t


def product_strict(f, g, target_group):
    """``h(<v>) = f(<v>) g(<v>)``, extended additively."""

    def h(V: GroupRingElt) -> GroupRingElt:
        out = GroupRingElt.zero(target_group)
        for v, c in V.terms.items():
            gv = GroupRingElt.of(V.group, v)
            out = out + (f(gv) * g(gv)) * c
        return out

    return h


def strictness_check(h, group, r: int, samples: int, rng: random.Random, N: int | None = None) -> dict:
    """Check ``h`` maps sampled augmentation-power generators into the same power, ``s <= r``."""
    N = r if N is None else N
    failures = []
    for n in range(samples):
        for s in range(0, r + 1):
            x = augmentation_power_generator(group, s, rng) if s else \
                GroupRingElt.of(group, group.random(rng, 2))
            d = aug_degree(h(x), N)
            if d < s:
                failures.append((n, s, x, d))
    return {"samples": samples, "failures": failures, "passed": not failures}


# -- group ring of a free group: the splitting by smash powers ---------------------


def k_s(group: FreeGroup, s: int, elt: Mapping) -> GroupRingElt:
    """``k_s`` on ``sum c (<(e_1..e_s)> - <*>)``; ``elt`` maps s-tuples of generators to ``c``."""
    out = GroupRingElt.zero(group)
    for es, c in elt.items():
        if len(es) != s:
            raise ValueError("tuple length must equal s")
        term = GroupRingElt.one(group)
        for e in es:
            term = term * delta(group, gen(e))
        out = out + term * c
    return out


def smash_part(x: GroupRingElt, s: int) -> dict:
    """Degree-``s`` Magnus part of ``x`` read as a combination of s-tuples."""
    series = magnus_ring(x, s)
    return {tuple(g for _, g in m): c for m, c in series.homogeneous(s).items()}


def split_Ds(x: GroupRingElt, s: int, N: int | None = None):
    """``x = component + remainder`` with ``component`` in ``D^s`` and remainder one degree deeper."""
    N = s + 1 if N is None else N
    d = aug_degree(x, s)
    if d < s:
        raise DegreeTooLow(f"element has augmentation degree {d} < {s}")
    comp = k_s(x.group, s, smash_part(x, s))
    rem = x - comp
    return comp, rem
