import json

import pytest

from stableorder import complex as cx
from stableorder import io
from stableorder.cli import main
from stableorder.errors import ParseError

EDGE = {"vertices": ["a", "b"], "simplices": [["a", "b"]]}


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_parse_error_reports_line(files):
    with pytest.raises(ParseError) as exc:
        io.read_json(files("bad.cx", '{\n  "vertices": [1,\n}'))
    assert exc.value.line == 3


def test_complex_round_trip():
    L = io.complex_from(EDGE)
    assert io.complex_from(io.complex_to(L)) == L
    T = cx.subdivide_Delta(cx.Polyhedron(cx.subtuples((0, 1, 2))))[0]
    T, _ = cx.relabel(T)
    assert io.complex_from(json.loads(io.dumps(io.complex_to(T)))) == T


def test_morphism_round_trip():
    doc = {"dom": {"vertices": [0, 1], "simplices": [[0, 1]]}, "cod": {"vertices": [0], "simplices": []},
           "vmap": {"0": 0, "1": 0}}
    h = io.morphism_from(doc)
    assert h.image((0, 1)) == (0,)
    assert io.morphism_from(json.loads(io.dumps(io.morphism_to(h)))) == h


def test_simplicial_set_round_trip():
    from stableorder.simpset import sphere
    E = sphere(2)
    F = io.simplicial_set_from(json.loads(io.dumps(io.simplicial_set_to(E))))
    assert F.cells == E.cells and F.basepoint == E.basepoint
    with pytest.raises(ParseError):
        io.simplicial_set_from({"cells": [{"id": "x", "dim": 1}], "faces": {"x": [{"cell": "x"}]}})


def test_ensemble_round_trip():
    import random
    from stableorder.freealg import FreeSimplicialGroup, GroupRingElt, SectionGroup, random_section
    from stableorder.simpset import sphere
    L = cx.Polyhedron(cx.subtuples((0, 1, 2)))
    SG = SectionGroup(L, FreeSimplicialGroup(sphere(2)))
    rng = random.Random(0)
    V = GroupRingElt.of(SG, random_section(L, SG.G, rng), 2) - GroupRingElt.of(SG, random_section(L, SG.G, rng))
    back = io.ensemble_from(json.loads(io.dumps(io.ensemble_to(V, 2))))
    assert back == V


def test_subdivide_edge_delta(files, capsys):
    code, out = run(capsys, "subdivide", files("edge.cx", EDGE), "1", "Δ")
    assert code == 0
    assert "counts: [5, 4]" in out


def test_subdivide_variants(files, capsys):
    path = files("edge.cx", EDGE)
    for variant, edges in (("delta", 2), ("delta_prime", 2), ("Delta", 4)):
        code, out = run(capsys, "subdivide", path, "1", variant, "--format", "structured")
        doc = json.loads(out)
        assert code == 0 and doc["counts"][1] == edges


def test_validate_reports_errors(files, capsys):
    code, out = run(capsys, "validate", files("bad.cx", {"simplices": [["a", "b"]]}))
    assert code == 2 and "MissingFace" in out
    code, out = run(capsys, "validate", files("ok.cx", EDGE))
    assert code == 0 and "valid: True" in out


def test_moebius_command(files, capsys):
    code, out = run(capsys, "moebius", files("edge.cx", EDGE))
    assert code == 0 and "identity: pass" in out


def test_eta_theta_of_zero_ensemble(files, capsys):
    path = files("zero.json", {"complex": EDGE, "sphere": 2, "terms": []})
    code, out = run(capsys, "eta", path)
    assert code == 0 and "eta: inf" in out
    code, out = run(capsys, "theta", path)
    assert "theta: inf" in out


def test_deg_and_ord(files, capsys):
    fg = {"cyclic": [4], "filtration": [[[1]], [[2]]], "target": [4], "map": [[[x], [x]] for x in range(4)]}
    code, out = run(capsys, "deg", files("f.json", fg), "--check")
    assert code == 0 and "deg: 2" in out and "agree: True" in out
    model = {"X": [0, 1], "Y": [0, 1], "target": [2],
             "map": [[[0, 0], 1], [[0, 1], 0], [[1, 0], 0], [[1, 1], 0]]}
    code, out = run(capsys, "ord", files("m.json", model))
    assert code == 0 and "ord: 2" in out and "violation_at: 1" in out


def test_manifest_recorded_and_deterministic(capsys):
    argv = ("suite", "10", "--seed", "5", "--scale", "0.1", "--format", "structured", "--cap", "3")
    code, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert code == 0 and first == second
    doc = json.loads(first)
    assert doc["manifest"]["seed"] == 5 and doc["manifest"]["cap"] == 3
    assert {"claim", "status", "samples", "elapsed", "counterexample"} <= set(doc["reports"][0])


def test_strict_mode_rejects_bad_constants(capsys):
    code, out = run(capsys, "suite", "10", "--constants", "2,4,8,12,20,6", "--mode", "strict")
    assert code == 2 and "2^(c-1)" in out


def test_unknown_suite(capsys):
    code, out = run(capsys, "suite", "99.9")
    assert code == 2
