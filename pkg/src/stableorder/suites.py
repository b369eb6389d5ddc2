"""Claim-by-claim verification suites.

Every suite takes a seeded ``random.Random`` and a ``scale`` factor (``1.0``
runs the full sample counts) and returns a :class:`Report`.
"""
from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from itertools import combinations, product
from typing import Callable

from . import complex as cx
from . import dummy as dm
from . import freealg as fa
from . import invariant as inv
from . import modify as md
from .corpus import complexes_up_to, seeds, seeds_subdivided, small_corpus
from .simpset import smash_power, sphere, standard_simplex


@dataclass
class Report:
    claim: str
    status: str = "pass"
    samples: int = 0
    elapsed: float = 0.0
    coverage: str = "exhaustive"
    counterexample: object = None
    note: str = ""
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, payload, note: str = ""):
        if self.status == "pass":
            self.status = "fail"
            self.counterexample = payload
            if note:
                self.note = note

    def as_dict(self) -> dict:
        d = asdict(self)
        d["counterexample"] = None if self.counterexample is None else repr(self.counterexample)
        return d


def _n(count: int, scale: float) -> int:
    return max(1, int(round(count * scale)))


SUITES: dict = {}


def suite(name: str):
    def deco(fn: Callable):
        def run(rng: random.Random, scale: float = 1.0) -> Report:
            rep = Report(name)
            t = time.perf_counter()
            fn(rep, rng, scale)
            rep.elapsed = round(time.perf_counter() - t, 3)
            return rep
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        SUITES[name] = run
        return run
    return deco


# -- polyhedra ------------------------------------------------------------------------


def moebius_corpus(max_vertices: int = 5) -> list:
    return list(complexes_up_to(max_vertices)) + seeds_subdivided()


@suite("12.1")
def moebius(rep: Report, rng, scale):
    """Sum of mu over x with x & y = z is [y = z], for every pair y, z in L with the empty simplex."""
    for L in moebius_corpus(5 if scale >= 1 else 4):
        mus = cx.mu_table(L)
        # group x by vertex set once per y
        for y in L.diamond:
            ys = set(y)
            acc = Counter()
            for x, m in mus.items():
                acc[frozenset(v for v in x if v in ys)] += m
            for z in L.diamond:
                if not set(z) <= ys:
                    continue
                rep.samples += 1
                if acc[frozenset(z)] != (1 if z == y else 0):
                    rep.fail((L.simplices, y, z))
            # z not a face of y never arises as x & y; the sum is empty
            rep.samples += sum(1 for z in L.diamond if not set(z) <= ys)


@suite("2.subdivision")
def subdivision_metric(rep: Report, rng, scale):
    """Distance halving under Phi and smallness of Phi-star images."""
    corpus = list(complexes_up_to(5 if scale >= 1 else 4)) + seeds()
    for L in corpus:
        DL, Phi = cx.subdivide_Delta(L)
        dL = {v: L.distances([v]) for v in L.vertices}
        for u in DL.vertices:
            du = DL.distances([u])
            for v in DL.vertices:
                d = du.get(v, cx.INF)
                if d == cx.INF:
                    continue
                half = -(-d // 2)
                rep.samples += 1
                if dL[Phi.vmap[u]].get(Phi.vmap[v], cx.INF) > half:
                    rep.fail((L.simplices, u, v))
        stars = DL.simplices if len(DL) <= 5000 else [(v,) for v in DL.vertices]
        for s in stars:
            rep.samples += 1
            if not cx.star_image_small(L, DL, Phi, s):
                rep.fail((L.simplices, s), "star image not small")
    rep.note = "pairs checked on vertices; simplex distances are vertex minima"


# -- free groups -----------------------------------------------------------------


@suite("lcs")
def magnus_lcs(rep: Report, rng, scale):
    """Nested commutators of weight s have augmentation degree >= s; basic ones exactly s."""
    rep.coverage = "sampled"
    for _ in range(_n(500, scale)):
        k = rng.randint(1, 3)
        F = fa.FreeGroup("xyz"[:k])
        s = rng.randint(1, 5)
        w = fa.gamma_sample(F, s, rng, length=2)
        d = fa.aug_degree(fa.delta(F, w), s)
        rep.samples += 1
        if d < s:
            rep.fail((w, s, d))
    for k in (2, 3):
        F = fa.FreeGroup("xyz"[:k])
        for weight in (1, 2, 3):
            for w in fa.basic_commutators(F.gens, weight):
                d = fa.aug_degree(fa.delta(F, w), weight + 1)
                rep.samples += 1
                if d != weight:
                    rep.fail((w, weight, d), "basic commutator degree")


@suite("6.1")
def claim_6_1(rep: Report, rng, scale):
    rep.coverage = "sampled"
    per = _n(200, scale)
    for i in range(per):
        k = rng.randint(1, 3)
        s = rng.randint(1, min(3, k))
        alph = [[f"{c}{j}" for c in "ab"[:rng.randint(1, 2)]] for j in range(k)]
        res = fa.check_6_1(alph, s, 1, rng)
        rep.samples += res["samples"]
        if not res["passed"]:
            rep.fail(res["failures"][0])


@suite("7.2")
def claim_7_2(rep: Report, rng, scale):
    """theta <= eta on seeded ensembles over small polyhedra, E the minimal 2-sphere."""
    rep.coverage = "sampled"
    G = fa.FreeSimplicialGroup(sphere(2))
    corpus = [L for L in small_corpus(2, 4) if L.dim == 2 and len(L) <= 14]
    values = Counter()
    for i in range(_n(200, scale)):
        L = rng.choice(corpus)
        SG = fa.SectionGroup(L, G)
        s = rng.randint(0, 3)
        V = fa.GroupRingElt.zero(SG)
        for attempt in range(50):
            for _ in range(rng.randint(1, 2)):
                V = V + fa.Is_generator_sample(SG, s, rng) * rng.choice((-1, 1, 2))
            if V.terms:
                break
        th = fa.theta(V, len(L))
        if th == fa.INF:
            values["zero"] += 1
            rep.samples += 1
            continue
        et = fa.eta(V, max(th, 4))
        values[(th, min(et, 5))] += 1
        rep.samples += 1
        if not et >= th:
            rep.fail((L.simplices, V, th, et))
    rep.details = {"(theta, eta) histogram": {repr(k): v for k, v in sorted(values.items(), key=repr)}}


@suite("8.1")
def claim_8_1(rep: Report, rng, scale):
    rep.coverage = "sampled"
    F = fa.FreeGroup("xy")
    for r in (1, 2, 3):
        res = fa.check_8_1(r, F, r + 2, _n(100, scale), rng)
        rep.samples += res["samples"]
        if not res["passed"]:
            rep.fail(res["failures"][0])


@suite("9.2")
def claim_9_2(rep: Report, rng, scale):
    """Pointwise products of strict maps stay strict."""
    rep.coverage = "sampled"
    F = fa.FreeGroup("xy")
    H = fa.FreeGroup("uvw")
    for r in (1, 2, 3):
        for _ in range(_n(10, scale)):
            t1 = fa.free_hom({g: H.random(rng, 2) for g in F.gens}, H)
            t2 = fa.free_hom({g: H.random(rng, 2) for g in F.gens}, H)
            h = fa.product_strict(fa.hom_map(t1, H), fa.hom_map(t2, H), H)
            res = fa.strictness_check(h, F, r, 3, rng)
            rep.samples += res["samples"]
            if not res["passed"]:
                rep.fail(res["failures"][0])


@suite("10")
def splitting(rep: Report, rng, scale):
    """Splitting of the s-th augmentation power into the smash part and the next power."""
    rep.coverage = "sampled"
    F = fa.FreeGroup("xy")
    for i in range(_n(100, scale)):
        s = 1 + i % 3
        x = fa.GroupRingElt.zero(F)
        for _ in range(rng.randint(1, 3)):
            x = x + fa.augmentation_power_generator(F, s, rng) * rng.choice((-2, -1, 1, 3))
        comp, rem = fa.split_Ds(x, s)
        rep.samples += 1
        if comp + rem != x or fa.aug_degree(rem, s + 1) < s + 1:
            rep.fail((x, s))


# -- dummy and realization ---------------------------------------------------------------


def _dummy_setup(L):
    G = fa.FreeSimplicialGroup(sphere(2))
    return G, dm.DummyGroup(G, max(L.dim, 1) + 1)


def _words_upto2(F: fa.FreeGroup) -> list:
    letters = [(g, e) for g in F.gens for e in (1, -1)]
    out = {()}
    for a in letters:
        out.add((a,))
        for b in letters:
            out.add(fa.word_mul((a,), (b,)))
    return sorted(out, key=repr)


@suite("13.3")
def claim_13_3(rep: Report, rng, scale):
    edge = cx.Polyhedron(cx.subtuples((0, 1)))
    tri = cx.Polyhedron(cx.subtuples((0, 1, 2)))
    sub = cx.subdivide_delta(edge)[0]
    for L in (edge, tri, sub):
        G, DG = _dummy_setup(L)
        for x in (cx.EMPTY,) + L.simplices:
            if not x:
                res = dm.check_13_3(L, DG, x, None)
                rep.samples += 1
                if not all(res.values()):
                    rep.fail((L.simplices, x, res))
                continue
            n = len(x) - 1
            for w in _words_upto2(G.level(n)):
                gs = [DG.section(w, n)] + [DG.section(w, n, rng, 2) for _ in range(2)]
                for g in gs:
                    res = dm.check_13_3(L, DG, x, g)
                    rep.samples += 1
                    if not all(res.values()):
                        rep.fail((L.simplices, x, w, res))
    rep.note = "every word of length <= 2 at every simplex, canonical and two randomized lifts"


def _factored_samples(rng, count, L=None):
    L = L or cx.Polyhedron(list(cx.subtuples((0, 1, 2))) + list(cx.subtuples((2, 3))))
    G, DG = _dummy_setup(L)
    S = dm.DummySections(L, DG)
    for _ in range(count):
        s = rng.randint(1, 3)
        terms = [(rng.choice([1, -1, 2]), [dm.random_dummy_section(L, DG, rng, factors=1) for _ in range(s)])
                 for _ in range(rng.randint(1, 2))]
        V = fa.GroupRingElt.zero(S)
        for c, vs in terms:
            V = V + dm.fusion_of_factored(S, vs, c)
        yield L, G, DG, s, terms, V


@suite("13.4")
def claim_13_4(rep: Report, rng, scale):
    rep.coverage = "sampled"
    for L, G, DG, s, terms, V in _factored_samples(rng, _n(100, scale)):
        w = dm.dummy_fusion(V)
        R = dm.realize_R(L, DG, w)
        rep.samples += 1
        if dm.dummy_fusion(R) != w:
            rep.fail((terms,))


@suite("13.5")
def claim_13_5(rep: Report, rng, scale):
    rep.coverage = "sampled"
    for L, G, DG, s, terms, V in _factored_samples(rng, _n(100, scale)):
        w = dm.dummy_fusion(V)
        R = dm.realize_R(L, DG, w)
        supp = dm.ring_section_support(w)
        rep.samples += 1
        ok = dm.ensemble_support(R) <= cx.neighbourhood(L, supp, 1) if supp else not R.terms
        if not ok:
            rep.fail((terms,))


@suite("13.6")
def claim_13_6(rep: Report, rng, scale):
    rep.coverage = "sampled"
    for L, G, DG, s, terms, V in _factored_samples(rng, _n(50, scale)):
        R = dm.realize_R(L, DG, dm.dummy_fusion(V))
        rep.samples += 1
        if dm.factored_R(L, DG, terms) != R:
            rep.fail((terms,), "factorization route differs")
            continue
        if fa.eta(dm.project_ensemble(R, G), s) < s:
            rep.fail((terms,), "degree below s")


# -- partition and modification ---------------------------------------------------


@suite("14.1")
def claim_14_1(rep: Report, rng, scale):
    rep.coverage = "sampled"
    E = standard_simplex(1)
    corpus = [L for L in small_corpus(2, 4) if len(L) <= 15]
    parts = {}
    for i in range(_n(100, scale)):
        r = 1 + i % 3
        L = corpus[rng.randrange(len(corpus))]
        key = (r, L)
        if key not in parts:
            parts[key] = md.Partition([smash_power(E, s, 3) for s in range(1, r + 1)], L, 2)
        P = parts[key]
        only = [rng.randrange(r)] if rng.random() < 0.5 else None
        w = md.random_ab_section(P.D, L, rng, pieces=only)
        res = P.check(w)
        rep.samples += 1
        if not all(res.values()):
            rep.fail((L.simplices, r, res))
    rep.note = "D is the sum of reduced Z[(Delta^1)^(smash s)], s <= r, m = 2"


def _laurent_sample(rng, s):
    q = {k: rng.randint(-2, 2) for k in range(rng.randint(-1, 0), rng.randint(1, 2))}
    base = {0: 1}
    for _ in range(s):
        base = md.laurent_mul(base, {1: 1, 0: -1})
    return md.laurent_mul(base, {k: c for k, c in q.items() if c} or {0: 1})


@suite("15.1")
def claim_15_1(rep: Report, rng, scale):
    """Fusion of V(w) recovers w; P is the sum of the P_z; support and degree of V."""
    rep.coverage = "sampled"
    pipe = md.Pipeline(1)
    corpus = [L for L in small_corpus(1, 4) if L.dim == 1]
    for i in range(_n(40, scale)):
        L = rng.choice(corpus)
        s = rng.randint(2, 3)
        w = {y: _laurent_sample(rng, s) for y in L.of_dim(1) if rng.random() < 0.7}
        rep.samples += 1
        if not md.check_15_1(pipe, L, w):
            rep.fail((L.simplices, w), "15.1")
        if not md.check_15_2(pipe, L, w):
            rep.fail((L.simplices, w), "15.2")
        if not md.check_15_3(pipe, L, w, s):
            rep.fail((L.simplices, w), "15.3")
    K = cx.Polyhedron([(0,), (1,), (2,), (0, 1), (1, 2)])
    mod = md.Modifier(K, md.Constants(2, 4, 8, 12, 20, 2), pipe)
    for _ in range(_n(20, scale)):
        u = md.random_section_K(K, 1, rng)
        total = fa.GroupRingElt.zero(md.EXP)
        for z in mod.L.simplices:
            Pz = mod.P_z(u, z)
            if Pz.augmentation() != 0:
                rep.fail((u, z), "P_z not in the augmentation ideal")
            total = total + Pz
        rep.samples += 1
        if total != mod.pipe.V(mod.L, {y: md.l_of_power(k) for y, k in mod.u_circ_e(u).items()}):
            rep.fail((u,), "sum of P_z differs from P")


@suite("15.strict")
def strict_chain(rep: Report, rng, scale):
    """Strict constants end to end on a point and on one edge."""
    const = md.Constants.strict()
    pipe = md.Pipeline(1)
    point = cx.Polyhedron([(0,)])
    edge = cx.Polyhedron(cx.subtuples((0, 1)))
    for K in (point, edge):
        mod = md.Modifier(K, const, pipe)
        rep.details[f"|L| for {len(K)} simplices"] = len(mod.L)
        if K is edge:
            e = lambda k: fa.GroupRingElt.of(md.EXP, md.EXP.make({(0, 1): k}))
            U = e(2) - e(1) * 2 + e(0)
            for u in U.terms:
                for z in mod.active(u):
                    md.check_e_z(mod.sub, mod.patch(z), const)
                    rep.samples += 1
            MU = mod.M(U)
            th = md.ens_theta(MU, 2)
            et = fa.aug_degree(MU, 2)
            rep.details["theta, eta of M(U)"] = (th, et)
            rep.samples += 1
            if th < 2 or et < 2:
                rep.fail((th, et))
        else:
            U = fa.GroupRingElt.of(md.EXP, ())
            rep.samples += 1
            if mod.M(U) != U:
                rep.fail("M changes the unit ensemble on a point")


def _edge_ensembles():
    e = lambda k: fa.GroupRingElt.of(md.EXP, md.EXP.make({(0, 1): k}))
    return {(1, 1): e(3) - e(1), (1, 2): e(2) - e(1) * 2 + e(0)}


@suite("15.3q")
def query_consistency(rep: Report, rng, scale):
    """Pruned, brute-force and product-formula evaluators of M(U) agree."""
    pipe = md.Pipeline(1)
    const = md.Constants(2, 4, 8, 12, 20, 1)
    tiny = [cx.Polyhedron([(0,)]), cx.Polyhedron(cx.subtuples((0, 1))),
            cx.Polyhedron([(0,), (1,), (2,), (0, 1)])]
    for K in tiny:
        mod = md.Modifier(K, const, pipe)
        if len(mod.L) > 12:
            continue
        Us = [fa.GroupRingElt.zero(md.EXP)]
        for _ in range(3):
            Us.append(fa.GroupRingElt.of(md.EXP, md.random_section_K(K, 1, rng))
                      - fa.GroupRingElt.of(md.EXP, md.random_section_K(K, 1, rng)))
        for U in Us:
            for size in range(3):
                for T in combinations(mod.L.simplices, size):
                    a = mod.query_pruned(U, T)
                    rep.samples += 1
                    if a != mod.query_full(U, T):
                        rep.fail((K.simplices, U, T), "pruned vs full")
                    if cx.separation(mod.L, T) >= const.b4 and a != mod.query_product(U, T):
                        rep.fail((K.simplices, U, T), "pruned vs product")
    # far-apart sets on a large L, where only the product route is independent
    K = cx.Polyhedron([(0,), (1,), (2,), (0, 1), (1, 2)])
    mod = md.Modifier(K, md.Constants.strict(), pipe)
    e = lambda a, b: fa.GroupRingElt.of(md.EXP, md.EXP.make({(0, 1): a, (1, 2): b}))
    U = e(2, 1) - e(1, 1) * 2 + e(0, 3) + e(1, -1) - e(0, 0)
    near = sorted(set().union(*(set(mod.active(u)) for u in U.terms)), key=cx.skey)
    for _ in range(_n(30, scale)):
        T = sorted(set(near + [rng.choice(mod.L.simplices)]), key=cx.skey)
        if cx.separation(mod.L, T) >= mod.const.b4:
            rep.samples += 1
            if mod.query_pruned(U, T) != mod.query_product(U, T):
                rep.fail((T,), "pruned vs product (strict L)")


@suite("15.4")
def claim_15_4(rep: Report, rng, scale):
    rep.coverage = "sampled"
    pipe = md.Pipeline(1)
    K = cx.Polyhedron(cx.subtuples((0, 1)))
    for c in (2, 3):
        mod = md.Modifier(K, md.Constants(2, 4, 8, 12, 20, c), pipe)
        for (th, et), U in _edge_ensembles().items():
            bound = min(th + 1, et)
            for size in range(bound):
                res = md.check_15_4(mod, U, md.adversarial_Ts(mod, U, size, rng, _n(20, scale)), th, et)
                rep.samples += res["tested"]
                if not res["passed"]:
                    rep.fail(res["failures"][0])
    rep.details["(0,1)"] = "no ensemble has theta = 0 and eta = 1: theta = 0 means nonzero augmentation, so eta = 0"


@suite("15.5")
def claim_15_5(rep: Report, rng, scale):
    rep.coverage = "sampled"
    pipe = md.Pipeline(1)
    K = cx.Polyhedron(cx.subtuples((0, 1)))
    for c in (2, 3):
        mod = md.Modifier(K, md.Constants(2, 4, 8, 12, 20, c), pipe)
        for (th, et), U in _edge_ensembles().items():
            res = md.check_15_5(mod, U, et, 3)
            rep.samples += 1
            if not res["passed"]:
                rep.fail(res)


@suite("16.1")
def claim_16_1(rep: Report, rng, scale):
    rep.coverage = "sampled"
    K = cx.Polyhedron(cx.subtuples((0, 1)))
    const = md.Constants(2, 4, 8, 12, 20, 2)
    e = lambda k: fa.GroupRingElt.of(md.EXP, md.EXP.make({(0, 1): k}))
    for s, U in ((1, e(3) - e(1)), (2, e(2) - e(1) * 2 + e(0))):
        L, V, hist = md.main_procedure(K, U, s, const)
        th = md.ens_theta(V, s)
        rep.samples += 1
        rep.details[f"s={s}"] = {"simplices": len(L), "terms": len(V.terms), "theta": th}
        if th < s:
            rep.fail((s, th))


# -- invariants ------------------------------------------------------------------------


@suite("17.1")
def claim_17_1(rep: Report, rng, scale):
    rep.coverage = "sampled"
    for _ in range(_n(100, scale)):
        nx, ny = rng.randint(1, 3), rng.randint(1, 3)
        M = inv.FiniteModel(range(nx), range(ny))
        A = {}
        for _ in range(rng.randint(1, 4)):
            a, b = rng.choice(M.maps), rng.choice(M.maps)
            c = rng.choice((1, -1, 2))
            A[a] = A.get(a, 0) + c
            A[b] = A.get(b, 0) - c
        g = [rng.randrange(nx) for _ in range(rng.randint(1, 3))]
        h = {y: rng.randrange(3) for y in range(ny)}
        res = inv.check_17_1(g, h, A, nx)
        rep.samples += 1
        if not res["passed"]:
            rep.fail((A, g, h, res))


@suite("17.2")
def claim_17_2(rep: Report, rng, scale):
    """Both order tests agree for every f on models with #X, #Y <= 3 and r <= 2."""
    Z2 = inv.Cyclic((2,))
    for nx in range(1, 4):
        for ny in range(1, 4):
            M = inv.FiniteModel(range(nx), range(ny))
            for r in range(3):
                rep.samples += 1
                if not inv.routes_same_kernel(M, r):
                    rep.fail((nx, ny, r), "kernels differ")
            n = len(M.maps)
            fs = product(range(2), repeat=n) if 2 ** n <= 512 else \
                (tuple(rng.randrange(2) for _ in range(n)) for _ in range(_n(300, scale)))
            for vals in fs:
                f = dict(zip(M.maps, vals))
                for r in range(3):
                    rep.samples += 1
                    if inv.order_finite_model(M, Z2, f, r) != inv.order_via_theta(M, Z2, f, r):
                        rep.fail((nx, ny, r, vals))
    rep.note = ("equal kernels (any target group) on every model; all Z/2-valued f where "
                "#C(X,Y) <= 9, sampled f on the 27-map model")


@suite("1.deg")
def degree_oracles(rep: Report, rng, scale):
    rep.coverage = "sampled"
    values = Counter()
    for i in range(_n(300, scale)):
        P = inv.random_filtered_group(rng)
        U = inv.Cyclic(tuple(rng.choice([2, 4, 3, 0]) for _ in range(rng.randint(1, 2))))
        additive = i % 2 == 1
        f = inv.random_additive(P, U, rng) if additive else inv.random_polynomial(P, U, rng)
        ex = inv.deg_exact(P, U, f)
        r = ex.value if ex.value != inv.INF else 0
        br = inv.deg_brute(P, U, f, r + P.s_max + 2)
        values[ex.value] += 1
        rep.samples += 1
        if not inv.brute_agrees(ex, br):
            rep.fail((P.T.orders, P.gens, U.orders, f, ex, br), "brute vs exact")
        if additive and ex.value != inv.additive_degree(P, U, f):
            rep.fail((P.T.orders, P.gens, U.orders, f), "additive example")
    rep.details["degree histogram"] = {repr(k): v for k, v in sorted(values.items(), key=repr)}


@suite("18.1")
def claim_18_1(rep: Report, rng, scale):
    rep.coverage = "sampled"
    G = fa.FreeSimplicialGroup(sphere(2))
    corpus = [L for L in small_corpus(2, 4) if L.dim == 2 and len(L) <= 12]
    values = Counter()
    for _ in range(_n(100, scale)):
        L = rng.choice(corpus)
        SG = fa.SectionGroup(L, G)
        V = fa.GroupRingElt.zero(SG)
        for _ in range(rng.randint(1, 3)):
            V = V + fa.Is_generator_sample(SG, rng.randint(0, 3), rng) * rng.choice((-1, 1))
        res = inv.theta_section_vs_model(V)
        values[str(res["model"])] += 1
        rep.samples += 1
        if not res["passed"]:
            rep.fail((L.simplices, V, res))
    rep.details["theta histogram"] = dict(sorted(values.items()))


def select(selector: str) -> list:
    """Suite names for a claim number, a dotted prefix, a range ``a-b`` or ``all``."""
    order = list(SUITES)
    if selector == "all":
        return order
    if "-" in selector:
        lo, hi = selector.split("-")
        if lo not in SUITES or hi not in SUITES:
            raise KeyError(f"unknown range {selector!r}")
        return order[order.index(lo):order.index(hi) + 1]
    names = [n for n in order if n == selector or n.startswith(selector + ".")
             or (n.startswith(selector) and not n[len(selector):len(selector) + 1].isdigit())]
    if not names:
        raise KeyError(f"no suite named {selector!r}; known: {', '.join(order)}")
    return names


def run(selector: str, seed: int = 0, scale: float = 1.0) -> list:
    return [SUITES[n](random.Random(f"{seed}:{n}"), scale) for n in select(selector)]
