"""Finitely presented simplicial sets, sections over polyhedra, and simplicial
abelian groups with the Dold-Kan normalization and splitting.

Simplicial operators are encoded as nondecreasing tuples: ``theta`` of length
``m + 1`` with entries in ``[0, n]`` is the map ``[m] -> [n]``.  Acting on an
``n``-simplex it produces an ``m``-simplex (``x . theta``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Hashable, Iterable, Mapping

from . import intlinalg as la
from .complex import EMPTY, Polyhedron, PolyMorphism, subtuples
from .errors import (
    IndexOutOfRange,
    NotConnectedEnough,
    NotPointed,
    ShapeMismatch,
)

# -- simplicial operators -------------------------------------------------------


def coface(n: int, i: int) -> tuple:
    """``delta_i: [n-1] -> [n]`` skipping ``i``."""
    return tuple(j for j in range(n + 1) if j != i)


def codegeneracy(n: int, i: int) -> tuple:
    """``sigma_i: [n+1] -> [n]`` hitting ``i`` twice."""
    return tuple(range(i + 1)) + tuple(range(i, n + 1))


def compose_ops(theta: tuple, phi: tuple) -> tuple:
    """``theta o phi`` as maps (``phi`` first)."""
    return tuple(theta[p] for p in phi)


def epi_mono(theta: tuple) -> tuple[tuple, tuple]:
    """Factor a monotone map as ``mono o epi``; returns ``(epi, mono)``."""
    image = sorted(set(theta))
    pos = {v: i for i, v in enumerate(image)}
    return tuple(pos[t] for t in theta), tuple(image)


@lru_cache(maxsize=None)
def surjections(k: int, j: int) -> tuple:
    """Nondecreasing surjections ``[k] -> [j]``."""
    out = []
    for steps in combinations(range(1, k + 1), j):
        eta, cur, st = [], 0, set(steps)
        for p in range(k + 1):
            if p in st:
                cur += 1
            eta.append(cur)
        out.append(tuple(eta))
    return tuple(out)


@lru_cache(maxsize=None)
def injections(n: int, k: int) -> tuple:
    """Strictly increasing maps ``[n] -> [k]``."""
    return tuple(combinations(range(k + 1), n + 1))


def degeneracy_word(eta: tuple) -> tuple:
    """Indices ``j_1 > ... > j_p`` with ``s_{j_1}...s_{j_p}`` realizing ``eta``."""
    return tuple(sorted((j for j in range(len(eta) - 1) if eta[j] == eta[j + 1]), reverse=True))


def eta_from_word(degens: Iterable[int], k: int) -> tuple:
    """Inverse of :func:`degeneracy_word` for a target of dimension ``k``."""
    eta = tuple(range(k + 1))
    for j in sorted(degens):
        eta = eta[:j + 1] + eta[j:]
    return eta


# -- simplicial sets ---------------------------------------------------------------


@dataclass(frozen=True)
class SimplexElt:
    """A simplex in Eilenberg-Zilber normal form: nondegenerate ``cell`` pulled back along ``eta``."""

    cell: Hashable
    eta: tuple

    @property
    def dim(self) -> int:
        return len(self.eta) - 1

    @property
    def degens(self) -> tuple:
        return degeneracy_word(self.eta)

    @property
    def nondegenerate(self) -> bool:
        return len(set(self.eta)) == len(self.eta)

    def __repr__(self):
        d = self.degens
        pre = "".join(f"s{j}" for j in d)
        return f"{pre}{'.' if pre else ''}{self.cell!r}"


class SimplicialSet:
    """Simplicial set stored by its nondegenerate cells.

    ``faces[c]`` lists ``d_0 c, ..., d_k c`` as :class:`SimplexElt` for a
    ``k``-cell with ``k >= 1``.
    """

    def __init__(self, cells: Mapping, faces: Mapping, basepoint=None):
        self.cells = dict(cells)
        self.faces = {c: tuple(fs) for c, fs in faces.items()}
        self.basepoint = basepoint
        for c, k in self.cells.items():
            if k >= 1 and len(self.faces.get(c, ())) != k + 1:
                raise ShapeMismatch(f"cell {c!r} of dim {k} needs {k + 1} faces")
        self._apply_cache = {}

    def __repr__(self):
        return f"SimplicialSet({len(self.cells)} cells, dim {self.dim})"

    @property
    def dim(self) -> int:
        return max(self.cells.values(), default=-1)

    def cell(self, c) -> SimplexElt:
        return SimplexElt(c, tuple(range(self.cells[c] + 1)))

    def base(self, k: int = 0) -> SimplexElt:
        if self.basepoint is None:
            raise NotPointed("simplicial set is not pointed")
        return SimplexElt(self.basepoint, (0,) * (k + 1))

    def is_base(self, x: SimplexElt) -> bool:
        return x.cell == self.basepoint

    def apply(self, x: SimplexElt, theta: tuple) -> SimplexElt:
        """``x . theta`` for a monotone ``theta: [m] -> [dim x]``."""
        if len(x.eta) - 1 < max(theta, default=0):
            raise IndexOutOfRange(f"operator {theta} does not act on {x!r}")
        key = (x, theta)
        got = self._apply_cache.get(key)
        if got is None:
            got = self._apply(x.cell, compose_ops(x.eta, theta))
            self._apply_cache[key] = got
        return got

    def _apply(self, c, theta: tuple) -> SimplexElt:
        epi, mono = epi_mono(theta)
        k = self.cells[c]
        if len(mono) == k + 1:
            return SimplexElt(c, epi)
        missing = max(j for j in range(k + 1) if j not in mono)
        f = self.faces[c][missing]
        rest = tuple(m - 1 if m > missing else m for m in mono)
        y = self.apply(f, rest)
        return self.apply(y, epi)

    def face(self, x: SimplexElt, i: int) -> SimplexElt:
        n = x.dim
        if n < 1 or not 0 <= i <= n:
            raise IndexOutOfRange(f"d_{i} undefined on a {n}-simplex")
        return self.apply(x, coface(n, i))

    def degen(self, x: SimplexElt, i: int) -> SimplexElt:
        n = x.dim
        if not 0 <= i <= n:
            raise IndexOutOfRange(f"s_{i} undefined on a {n}-simplex")
        return self.apply(x, codegeneracy(n, i))

    def simplices(self, k: int) -> list:
        out = []
        for c, j in self.cells.items():
            if j <= k:
                out.extend(SimplexElt(c, eta) for eta in surjections(k, j))
        return out

    def check_identities(self) -> bool:
        """Verify ``d_i d_j = d_{j-1} d_i`` (``i < j``) on all cells."""
        for c, k in self.cells.items():
            if k < 2:
                continue
            x = self.cell(c)
            for j in range(k + 1):
                for i in range(j):
                    if self.face(self.face(x, j), i) != self.face(self.face(x, i), j - 1):
                        return False
        return True


def normalize(E: SimplicialSet, cell, word: Iterable) -> SimplexElt:
    """Normal form of ``op_1 op_2 ... op_p cell``; ops are ``('d', i)`` / ``('s', i)``.

    The word is written left to right as in ``d_2 s_0 x``: the rightmost
    operator acts first.
    """
    x = E.cell(cell)
    for op, i in reversed(list(word)):
        if op == "d":
            x = E.face(x, i)
        elif op == "s":
            x = E.degen(x, i)
        else:
            raise ValueError(f"unknown operator {op!r}")
    return x


def completion(L: Polyhedron) -> SimplicialSet:
    """The simplicial set obtained by adding degenerate simplices to ``L``."""
    cells = {s: len(s) - 1 for s in L.simplices}
    faces = {}
    for s in L.simplices:
        if len(s) > 1:
            faces[s] = [SimplexElt(s[:i] + s[i + 1:], tuple(range(len(s) - 1)))
                        for i in range(len(s))]
    return SimplicialSet(cells, faces)


def completion_map(f: PolyMorphism):
    """The simplicial map of completions induced by a morphism."""

    def hat(x: SimplexElt) -> SimplexElt:
        img = f.image(x.cell)
        pos = {v: i for i, v in enumerate(img)}
        return SimplexElt(img, tuple(pos[f.vmap[x.cell[e]]] for e in x.eta))

    return hat


def sphere(n: int) -> SimplicialSet:
    """Minimal ``S^n``: base vertex ``'*'`` and one ``n``-cell ``'sigma'``."""
    if n == 0:
        return SimplicialSet({"*": 0, "sigma": 0}, {}, basepoint="*")
    f = SimplexElt("*", (0,) * n)
    return SimplicialSet({"*": 0, "sigma": n}, {"sigma": [f] * (n + 1)}, basepoint="*")


def standard_simplex(n: int, basepoint: int | None = 0) -> SimplicialSet:
    """``Delta^n`` as a simplicial set, pointed at a vertex."""
    L = Polyhedron(subtuples(tuple(range(n + 1))))
    E = completion(L)
    E.basepoint = (basepoint,) if basepoint is not None else None
    return E


def skeleton(E: SimplicialSet, m: int) -> SimplicialSet:
    if m < 0:
        raise IndexOutOfRange("skeleton dimension must be >= 0")
    cells = {c: k for c, k in E.cells.items() if k <= m}
    return SimplicialSet(cells, {c: E.faces[c] for c in cells if cells[c] >= 1}, E.basepoint)


def _joint_normal(xs: tuple) -> tuple[tuple, tuple]:
    """Split a tuple of same-dimension simplices into a jointly nondegenerate tuple and an epi."""
    n = xs[0].dim
    keep = [j for j in range(n) if not all(x.eta[j] == x.eta[j + 1] for x in xs)]
    # positions j where every coordinate repeats are collapsed
    epi, cur = [0], 0
    for j in range(n):
        if j in keep:
            cur += 1
        epi.append(cur)
    epi = tuple(epi)
    k = cur
    reps = [epi.index(i) for i in range(k + 1)]
    reduced = tuple(SimplexElt(x.cell, tuple(x.eta[p] for p in reps)) for x in xs)
    return reduced, epi


def smash_power(E: SimplicialSet, s: int, max_dim: int | None = None) -> SimplicialSet:
    """``E^{^s}``; cells are tuples of simplices of ``E``, listed up to ``max_dim``.

    ``E^{^0}`` is the 0-sphere.
    """
    if E.basepoint is None:
        raise NotPointed("smash power needs a pointed simplicial set")
    if s == 0:
        return SimplicialSet({"*": 0, "pt": 0}, {}, basepoint="*")
    top = s * E.dim if max_dim is None else max_dim
    cells, faces = {"*": 0}, {}
    for k in range(top + 1):
        nonbase = [x for x in E.simplices(k) if not E.is_base(x)]
        for xs in product(nonbase, repeat=s):
            if k > 0 and any(all(x.eta[j] == x.eta[j + 1] for x in xs) for j in range(k)):
                continue
            cells[xs] = k
    out = SimplicialSet({"*": 0}, {}, basepoint="*")
    out.cells = cells

    def face_of(xs, i):
        ys = tuple(E.face(x, i) for x in xs)
        if any(E.is_base(y) for y in ys):
            return SimplexElt("*", (0,) * len(ys[0].eta))
        red, epi = _joint_normal(ys)
        return SimplexElt(red, epi)

    for xs, k in cells.items():
        if k >= 1:
            faces[xs] = tuple(face_of(xs, i) for i in range(k + 1))
    out.faces = faces
    return out


# -- sections ----------------------------------------------------------------------


def embed_op(face: tuple, simplex: tuple) -> tuple:
    """Injective operator placing the vertices of ``face`` inside ``simplex``."""
    pos = {v: i for i, v in enumerate(simplex)}
    return tuple(pos[v] for v in face)


class Section:
    """A simplicial map from the completion of ``base`` to ``target``.

    ``target`` is anything with an ``apply(value, theta)`` method: a
    :class:`SimplicialSet`, a free simplicial group, the dummy group ...
    Only values on the simplices of ``base`` are stored.
    """

    __slots__ = ("base", "target", "table", "_key")

    def __init__(self, base: Polyhedron, target, table: Mapping):
        self.base = base
        self.target = target
        self.table = dict(table)
        self._key = None

    def __call__(self, y):
        return self.table[y]

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(self.table[y] for y in self.base.simplices)
        return self._key

    def __eq__(self, other):
        return isinstance(other, Section) and self.base == other.base and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Section(" + ", ".join(f"{y}: {v!r}" for y, v in self.table.items()) + ")"

    def check(self) -> bool:
        for y in self.base.simplices:
            if len(y) > 1:
                for i in range(len(y)):
                    f = y[:i] + y[i + 1:]
                    if self.target.apply(self.table[y], coface(len(y) - 1, i)) != self.table[f]:
                        return False
        return True

    def value(self, x: SimplexElt):
        """Value on a possibly degenerate simplex of the completion."""
        v = self.table[x.cell]
        if x.nondegenerate:
            return v
        return self.target.apply(v, x.eta)


def restrict(v: Section, K: Polyhedron) -> Section:
    for y in K.simplices:
        if y not in v.base:
            raise ShapeMismatch(f"{y!r} is not in the base of the section")
    return Section(K, v.target, {y: v.table[y] for y in K.simplices})


def compose_morphism(v: Section, f: PolyMorphism) -> Section:
    """``v o f`` for a morphism ``f: K -> base``."""
    if f.cod != v.base:
        raise ShapeMismatch("morphism codomain differs from the section's base")
    hat = completion_map(f)
    return Section(f.dom, v.target,
                   {x: v.value(hat(SimplexElt(x, tuple(range(len(x)))))) for x in f.dom.simplices})


def pushforward(t, v: Section, target=None) -> Section:
    """``t_#(v)`` for a simplicial map ``t`` given as a callable on values."""
    return Section(v.base, target if target is not None else v.target,
                   {y: t(val) for y, val in v.table.items()})


def support(v: Section, is_unit) -> frozenset:
    """``sigma(v)``: simplices ``y`` whose restriction to the closure of ``y`` is nontrivial."""
    return frozenset(y for y, val in v.table.items() if not is_unit(val))


def quasirestrict(v: Section, T: Iterable) -> tuple:
    """``v||_T`` as the tuple of values at the simplices of ``T`` (in the given order)."""
    return tuple(v.table[y] for y in T)


def quasicompose(w: Mapping, f: PolyMorphism, target) -> dict:
    """``w o f`` for a quasisection ``w`` (simplex -> value at that simplex)."""
    out = {}
    for x in f.dom.simplices:
        img = f.image(x)
        pos = {u: i for i, u in enumerate(img)}
        eta = tuple(pos[f.vmap[u]] for u in x)
        out[x] = target.apply(w[img], eta)
    return out


def yoneda(target, y: tuple, v: Section):
    """Section over the closure of ``y`` -> its value at ``y``."""
    return v.table[y]


def yoneda_inverse(target, base: Polyhedron, y: tuple, value) -> Section:
    """Element of ``target`` in dimension ``dim y`` -> section over the closure of ``y``."""
    table = {}
    for f in subtuples(y):
        table[f] = value if f == y else target.apply(value, embed_op(f, y))
    closure = Polyhedron(table)
    return Section(closure, target, table)


# -- simplicial abelian groups -------------------------------------------------


class SimplicialAbGroup:
    """Free simplicial abelian group with a finite basis in each dimension up to ``bound``.

    Built from pointed simplicial sets (reduced free abelian group, basis =
    non-base simplices) and direct sums of those.  Vectors are lists of ints.
    """

    def __init__(self, sets: list, bound: int, labels=None):
        self.sets = list(sets)
        self.bound = bound
        self.labels = list(labels) if labels is not None else list(range(len(self.sets)))
        self.basis = []
        self._pos = []
        for k in range(bound + 1):
            keys = []
            for idx, E in enumerate(self.sets):
                keys.extend((idx, x) for x in E.simplices(k) if not E.is_base(x))
            self.basis.append(keys)
            self._pos.append({key: i for i, key in enumerate(keys)})

    @classmethod
    def reduced(cls, E: SimplicialSet, bound: int):
        return cls([E], bound)

    def rank(self, k: int) -> int:
        return len(self.basis[k])

    def zero(self, k: int) -> list:
        return [0] * self.rank(k)

    def unit(self, k: int, key) -> list:
        v = self.zero(k)
        v[self._pos[k][key]] = 1
        return v

    def apply(self, vec: list, theta: tuple) -> list:
        n = len(theta) and max(theta)
        k_from = None
        m = len(theta) - 1
        out = self.zero(m)
        k_from = self._dim_of(vec)
        basis = self.basis[k_from]
        for coeff, (idx, x) in zip(vec, basis):
            if coeff:
                E = self.sets[idx]
                y = E.apply(x, theta)
                if not E.is_base(y):
                    out[self._pos[m][(idx, y)]] += coeff
        return out

    def _dim_of(self, vec):
        for k, b in enumerate(self.basis):
            if len(b) == len(vec):
                candidates = [j for j, bb in enumerate(self.basis) if len(bb) == len(vec)]
                if len(candidates) > 1:
                    raise ShapeMismatch("ambiguous vector dimension; use apply_at")
                return k
        raise ShapeMismatch("vector length matches no dimension")

    def apply_at(self, k: int, vec: list, theta: tuple) -> list:
        m = len(theta) - 1
        out = self.zero(m)
        for coeff, (idx, x) in zip(vec, self.basis[k]):
            if coeff:
                E = self.sets[idx]
                y = E.apply(x, theta)
                if not E.is_base(y):
                    out[self._pos[m][(idx, y)]] += coeff
        return out

    def operator_matrix(self, k: int, theta: tuple) -> list:
        """Matrix (rows: target basis) of ``x -> x . theta`` from dimension ``k``."""
        m = len(theta) - 1
        cols = [self.apply_at(k, self.unit(k, key), theta) for key in self.basis[k]]
        return la.transpose(cols, self.rank(m)) if cols else [[] for _ in range(self.rank(m))]

    def face_matrix(self, k: int, i: int) -> list:
        return self.operator_matrix(k, coface(k, i))


class DKSplit:
    """Normalization of a free simplicial abelian group and its two-term splitting."""

    def __init__(self, D: SimplicialAbGroup, m: int, check: bool = True):
        self.D = D
        self.m = m
        top = min(m + 1, D.bound)
        self.top = top
        # normalized basis N_k as columns in D_k coordinates
        self.N = []
        for k in range(top + 1):
            if k == 0:
                self.N.append([D.unit(0, key) for key in D.basis[0]])
                continue
            rows = []
            for i in range(1, k + 1):
                rows.extend(D.face_matrix(k, i))
            _, K, _ = la.kernel_and_complement(rows, D.rank(k)) if rows else (0, [D.unit(k, key) for key in D.basis[k]], [])
            self.N.append(K)
        # boundary d_0 : N_k -> N_{k-1} in N coordinates
        self.bd = [None]
        for k in range(1, top + 1):
            d0 = D.face_matrix(k, 0)
            cols = []
            Nprev = la.transpose(self.N[k - 1], D.rank(k - 1)) if self.N[k - 1] else [[] for _ in range(D.rank(k - 1))]
            for col in self.N[k]:
                img = la.matvec(d0, col)
                cols.append(la.solve_integer(Nprev, img) if self.N[k - 1] else [])
            self.bd.append(la.transpose(cols, len(self.N[k - 1])) if cols else [[] for _ in self.N[k - 1]])
        # cycles Z_k and complements Cc_k, in N_k coordinates
        self.Z, self.Cc = [], []
        for k in range(top + 1):
            nk = len(self.N[k])
            if k == 0 or not self.N[k - 1]:
                self.Z.append([la.identity(nk)[i] for i in range(nk)])
                self.Cc.append([])
            else:
                _, K, C = la.kernel_and_complement(self.bd[k], nk)
                self.Z.append(K)
                self.Cc.append(C)
        if check:
            self._check_connected()

    def homology_rank(self, k):
        return len(self.Z[k]) - (len(self.Cc[k + 1]) if k + 1 <= self.top else 0)

    def _check_connected(self):
        for k in range(min(self.m, self.top - 1) + 1):
            zk = len(self.Z[k])
            cc = self.Cc[k + 1]
            if len(cc) != zk:
                raise NotConnectedEnough(f"homology of the normalization is nonzero in dim {k}", k)
            # image of the complement must be all of Z_k, not a finite-index sublattice
            imgs = [la.matvec(self.bd[k + 1], c) for c in cc]
            if zk:
                Zm = la.transpose(self.Z[k], len(self.N[k]))
                coords = [la.solve_integer(Zm, v) for v in imgs]
                factors = la.smith_diagonal(la.transpose(coords, zk), len(coords))
                if len(factors) != zk or any(f != 1 for f in factors):
                    raise NotConnectedEnough(f"torsion homology in dim {k}", k)

    # -- the C^n pieces -------------------------------------------------------
    def piece(self, n: int) -> dict:
        """Basis of ``C^n`` as ``{n: Z_n, n+1: Cc_{n+1}}`` (N coordinates)."""
        out = {}
        if n <= self.top:
            out[n] = self.Z[n]
        if n + 1 <= self.top:
            out[n + 1] = self.Cc[n + 1]
        return out

    def boundary_is_iso(self, n: int) -> bool:
        return n + 1 <= self.top and len(self.Cc[n + 1]) == len(self.Z[n])

    def to_D(self, k: int, ncoords: list) -> list:
        out = [0] * self.D.rank(k)
        for c, col in zip(ncoords, self.N[k]):
            if c:
                for i, x in enumerate(col):
                    out[i] += c * x
        return out

    @lru_cache(maxsize=None)
    def _gamma(self, k: int):
        """Columns ``s_eta(N_j basis)``, labelled by ``(eta, j, index)``."""
        cols, labels = [], []
        for j in range(k + 1):
            if j > self.top:
                break
            for eta in surjections(k, j):
                for idx, col in enumerate(self.N[j]):
                    cols.append(self.D.apply_at(j, col, eta))
                    labels.append((eta, j, idx))
        return cols, labels

    def decompose(self, k: int, vec: list) -> dict:
        """``vec = sum s_eta(a_eta)`` with ``a_eta`` in ``N_j``; returns ``{eta: N-coords}``."""
        cols, labels = self._gamma(k)
        A = la.transpose(cols, self.D.rank(k)) if cols else [[] for _ in range(self.D.rank(k))]
        coeffs = la.solve_integer(A, vec) if cols else []
        out = {}
        for c, (eta, j, idx) in zip(coeffs, labels):
            if c:
                out.setdefault(eta, [0] * len(self.N[j]))[idx] += c
        return out

    def _split_n(self, j: int, ncoords: list) -> dict:
        """Split N_j coordinates into the ``C^j`` (cycle) and ``C^{j-1}`` parts."""
        basis = self.Z[j] + self.Cc[j]
        if not basis:
            return {}
        A = la.transpose(basis, len(self.N[j]))
        coeffs = la.solve_integer(A, ncoords)
        nz = len(self.Z[j])
        z = [0] * len(self.N[j])
        c = [0] * len(self.N[j])
        for a, col in zip(coeffs[:nz], self.Z[j]):
            for i, x in enumerate(col):
                z[i] += a * x
        for a, col in zip(coeffs[nz:], self.Cc[j]):
            for i, x in enumerate(col):
                c[i] += a * x
        return {j: z, j - 1: c}

    def project(self, k: int, vec: list, n: int) -> list:
        """Component of ``vec`` in ``D^n_k`` (D coordinates)."""
        out = [0] * self.D.rank(k)
        for eta, a in self.decompose(k, vec).items():
            j = max(eta)
            part = self._split_n(j, a).get(n)
            if part and any(part):
                v = self.D.apply_at(j, self.to_D(j, part), eta)
                out = [x + y for x, y in zip(out, v)]
        return out

    def pieces_of(self, k: int) -> list:
        """Indices ``n`` with ``D^n_k`` possibly nonzero (degeneracies of ``C^n`` reach every ``k >= n``)."""
        return [n for n in range(k + 1) if n <= self.top]


def normalization(D: SimplicialAbGroup, bound: int) -> tuple:
    """Normalized chain complex: ``(N, boundary)`` through ``bound``."""
    s = DKSplit(D, bound - 1, check=False)
    return s.N[:bound + 1], s.bd[:bound + 1]


def dk_split(D: SimplicialAbGroup, m: int) -> DKSplit:
    return DKSplit(D, m)


# -- sections of simplicial abelian groups, cochains and partitions ------------------


class AbTarget:
    """Adapter so :class:`Section` can hold vectors of a :class:`SimplicialAbGroup`."""

    def __init__(self, D: SimplicialAbGroup):
        self.D = D

    def apply(self, value, theta):
        k, vec = value
        return (len(theta) - 1, tuple(self.D.apply_at(k, list(vec), theta)))

    @staticmethod
    def is_unit(value):
        return not any(value[1])


def ab_section(D: SimplicialAbGroup, L: Polyhedron, values: Mapping) -> Section:
    return Section(L, AbTarget(D), {y: (len(y) - 1, tuple(values[y])) for y in L.simplices})


def _extend_piece(split: DKSplit, n: int, cochain: Mapping, L: Polyhedron) -> dict:
    """Unique section of ``D^n`` whose value on each n-simplex is given by ``cochain``."""
    D = split.D
    table = {}
    for y in L.simplices:
        k = len(y) - 1
        if k < n or k > split.top:
            table[y] = [0] * D.rank(k)
            continue
        if k == n:
            table[y] = list(cochain.get(y, [0] * D.rank(k)))
            continue
        # basis of D^n_k: s_eta(C^n_j)
        cols = []
        for j, basis in split.piece(n).items():
            if j > k:
                continue
            for eta in surjections(k, j):
                for b in basis:
                    cols.append(D.apply_at(j, split.to_D(j, b), eta))
        rows, rhs = [], []
        for iota in injections(n, k):
            face = tuple(y[i] for i in iota)
            target = cochain.get(face, [0] * D.rank(n))
            images = [D.apply_at(k, c, iota) for c in cols]
            for r in range(D.rank(n)):
                rows.append([img[r] for img in images])
                rhs.append(target[r])
        coeffs = la.solve_integer(rows, rhs) if cols else []
        val = [0] * D.rank(k)
        for c, col in zip(coeffs, cols):
            if c:
                val = [a + c * b for a, b in zip(val, col)]
        table[y] = val
    return table


def dk_section_as_cochain(split: DKSplit, n: int, section_values: Mapping, L: Polyhedron) -> dict:
    """Section of ``D^n`` (values by simplex) -> n-cochain (values on n-simplices)."""
    return {y: list(section_values[y]) for y in L.of_dim(n)}


def dk_cochain_as_section(split: DKSplit, n: int, cochain: Mapping, L: Polyhedron) -> dict:
    return _extend_piece(split, n, cochain, L)


class DKPartition:
    """Partition ``(h_z)`` of sections of a free m-connected ``D`` over ``L``.

    For each Dold-Kan piece ``D^n`` with ``n <= m`` the component of a
    section is an n-cochain; ``h_z`` extends its value at ``z`` by zero when
    ``dim z = n``.  Pieces with ``n > m`` vanish on ``L``.
    """

    def __init__(self, split: DKSplit, L: Polyhedron):
        if L.dim > split.m:
            raise NotConnectedEnough(f"dim L = {L.dim} exceeds m = {split.m}", L.dim)
        self.split = split
        self.L = L

    def h(self, z: tuple, restricted: Mapping) -> dict:
        """``h_z(w|_zbar)``; ``restricted`` maps faces of ``z`` to vectors."""
        n = len(z) - 1
        split = self.split
        comp = split.project(n, list(restricted[z]), n)
        if not any(comp):
            return {y: [0] * split.D.rank(len(y) - 1) for y in self.L.simplices}
        return _extend_piece(split, n, {z: comp}, self.L)

    def components(self, w: Mapping) -> dict:
        """Per-piece n-cochains of a section ``w``."""
        out = {}
        for n in range(self.L.dim + 1):
            out[n] = {y: self.split.project(n, list(w[y]), n) for y in self.L.of_dim(n)}
        return out
