"""JSON file formats for complexes, morphisms, simplicial sets, ensembles,
filtered groups and finite models.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .complex import Polyhedron, PolyMorphism, skey, validate, validate_morphism
from .errors import ComplexError, ParseError
from .freealg import FreeSimplicialGroup, GroupRingElt, SectionGroup, reduce
from .simpset import Section, SimplexElt, SimplicialSet, eta_from_word, sphere


def read_json(path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    return loads(text)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_default)


def _default(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x, key=repr)
    if x == float("inf"):
        return "inf"
    return repr(x)


def _need(raw, key, kind=None):
    if not isinstance(raw, dict) or key not in raw:
        raise ParseError(f"missing field {key!r}")
    val = raw[key]
    if kind is not None and not isinstance(val, kind):
        raise ParseError(f"field {key!r} must be {kind.__name__}")
    return val


def _vertex(v):
    if isinstance(v, list):
        return tuple(_vertex(x) for x in v)
    return v


# -- complexes and morphisms ---------------------------------------------------------


def complex_from(raw) -> Polyhedron:
    if isinstance(raw, dict):
        simplices = _need(raw, "simplices", list)
        raw = {"simplices": [[_vertex(v) for v in s] for s in simplices],
               "vertices": [_vertex(v) for v in raw.get("vertices", [])]}
    try:
        return validate(raw)
    except TypeError as exc:
        raise ParseError(str(exc)) from None


def complex_to(L: Polyhedron) -> dict:
    return {"vertices": [list(v) if isinstance(v, tuple) else v for v in L.vertices],
            "simplices": [[list(v) if isinstance(v, tuple) else v for v in s] for s in L.simplices if len(s) > 1]}


def load_complex(path) -> Polyhedron:
    return complex_from(read_json(path))


def morphism_from(raw, named: dict | None = None) -> PolyMorphism:
    named = named or {}

    def side(key):
        val = _need(raw, key)
        if isinstance(val, str):
            if val not in named:
                raise ParseError(f"unknown complex {val!r}")
            return named[val]
        return complex_from(val)

    vmap = _need(raw, "vmap", dict)
    dom, cod = side("dom"), side("cod")
    # JSON keys are strings; match them against the domain's vertices
    by_text = {str(v): v for v in dom.vertices}
    table = {}
    for k, v in vmap.items():
        if k not in by_text:
            raise ParseError(f"vmap key {k!r} is not a vertex of the domain")
        table[by_text[k]] = _vertex(v)
    return validate_morphism({"dom": dom, "cod": cod, "vmap": table}, dom, cod)


def morphism_to(f: PolyMorphism) -> dict:
    return {"dom": complex_to(f.dom), "cod": complex_to(f.cod),
            "vmap": {str(v): f.vmap[v] for v in f.dom.vertices}}


# -- simplicial sets ---------------------------------------------------------------


def _elt_from(raw, dim_of) -> SimplexElt:
    cell = _need(raw, "cell")
    degens = raw.get("degens", [])
    if cell not in dim_of:
        raise ParseError(f"unknown cell {cell!r}")
    return SimplexElt(cell, eta_from_word(degens, dim_of[cell]))


def simplicial_set_from(raw) -> SimplicialSet:
    cells = _need(raw, "cells", list)
    dim_of = {}
    for c in cells:
        dim_of[_need(c, "id")] = _need(c, "dim", int)
    faces = {}
    for cell, fs in raw.get("faces", {}).items():
        if cell not in dim_of:
            raise ParseError(f"faces given for unknown cell {cell!r}")
        if len(fs) != dim_of[cell] + 1:
            raise ParseError(f"cell {cell!r} needs {dim_of[cell] + 1} faces")
        faces[cell] = [_elt_from(f, dim_of) for f in fs]
    E = SimplicialSet(dim_of, faces, basepoint=raw.get("basepoint"))
    if not E.check_identities():
        raise ParseError("faces violate the simplicial identities")
    return E


def simplicial_set_to(E: SimplicialSet) -> dict:
    return {"cells": [{"id": c, "dim": k} for c, k in E.cells.items()],
            "faces": {c: [{"cell": f.cell, "degens": list(f.degens)} for f in fs] for c, fs in E.faces.items()},
            "basepoint": E.basepoint}


# -- ensembles over the minimal sphere ----------------------------------------------
#
# {"complex": {...}, "sphere": n,
#  "terms": [{"coefficient": c, "table": [[simplex, word], ...]}]}
#
# A word is a list of [letter, exponent] pairs and a letter is
# {"cell": "sigma", "degens": [...]} (an ``k``-simplex of ``S^n``).  Simplices
# left out of a table carry the unit.


def ensemble_from(raw) -> GroupRingElt:
    L = complex_from(_need(raw, "complex"))
    n = _need(raw, "sphere", int)
    E = sphere(n)
    G = FreeSimplicialGroup(E)
    SG = SectionGroup(L, G)
    out = GroupRingElt.zero(SG)
    for i, term in enumerate(_need(raw, "terms", list)):
        c = _need(term, "coefficient", int)
        table = {y: () for y in L.simplices}
        for entry in _need(term, "table", list):
            if not isinstance(entry, list) or len(entry) != 2:
                raise ParseError(f"term {i}: table entries are [simplex, word] pairs")
            y = tuple(_vertex(v) for v in entry[0])
            if y not in L:
                raise ParseError(f"term {i}: {y!r} is not a simplex")
            k = len(y) - 1
            letters = []
            for letter, e in entry[1]:
                x = SimplexElt(_need(letter, "cell"), eta_from_word(letter.get("degens", []), E.cells.get(letter["cell"], 0)))
                if x.dim != k:
                    raise ParseError(f"term {i}: letter {x!r} has the wrong dimension for {y!r}")
                letters.append((x, int(e)))
            table[y] = reduce(letters, star=None)
            table[y] = tuple((g, e) for g, e in table[y] if not E.is_base(g))
        sec = Section(L, G, table)
        if not sec.check():
            raise ParseError(f"term {i}: table is not a simplicial map")
        out = out + GroupRingElt.of(SG, sec, c)
    return out


def ensemble_to(V: GroupRingElt, n: int) -> dict:
    L = V.group.L
    terms = []
    for v, c in sorted(V.terms.items(), key=lambda kv: repr(kv[0].key())):
        rows = []
        for y in L.simplices:
            if v.table[y]:
                rows.append([list(y), [[{"cell": g.cell, "degens": list(g.degens)}, e] for g, e in v.table[y]]])
        terms.append({"coefficient": c, "table": rows})
    return {"complex": complex_to(L), "sphere": n, "terms": terms}


# -- filtered groups and finite models ------------------------------------------------


def filtered_from(raw):
    from .invariant import Cyclic, FiltAbGroup
    orders = _need(raw, "cyclic", list)
    filt = _need(raw, "filtration", list)
    P = FiltAbGroup(orders, [[tuple(g) if isinstance(g, list) else (g,) for g in layer] for layer in filt])
    target = Cyclic(tuple(raw.get("target", [0])))
    table = {}
    for x, v in _need(raw, "map", list):
        table[P.T.norm(tuple(x) if isinstance(x, list) else (x,))] = tuple(v) if isinstance(v, list) else (v,)
    return P, target, table


def model_from(raw):
    from .invariant import Cyclic, FiniteModel
    M = FiniteModel(_need(raw, "X", list), _need(raw, "Y", list))
    target = Cyclic(tuple(raw.get("target", [0])))
    table = {}
    for a, v in _need(raw, "map", list):
        a = tuple(a)
        if a not in M.index:
            raise ParseError(f"{a!r} is not a map X -> Y")
        table[a] = tuple(v) if isinstance(v, list) else (v,)
    missing = [a for a in M.maps if a not in table]
    if missing:
        raise ParseError(f"map table misses {missing[0]!r}")
    return M, target, table
