import json
import pathlib

import pytest

import scissors

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def load(name):
    return json.loads((DATA / name).read_text())


def nonzero(report):
    return {g["degree"]: (g["rank"], g["torsion"]) for g in report["homology"] if g["rank"] or g["torsion"]}


def test_twisted_circle_homology():
    assert nonzero(scissors.homology(load("ssigma.json"))) == {1: (1, [])}


def test_three_point_building():
    r = scissors.homology(load("circle3_family.json"))
    assert r["input"] == "family"
    assert nonzero(r) == {1: (2, [])}


def test_string_input_and_coefficients():
    text = (DATA / "ssigma.json").read_text()
    assert nonzero(scissors.homology(text, coeff="q")) == {1: (1, [])}


def test_malformed_input_raises():
    with pytest.raises(scissors.ScissorsError, match="ParseError"):
        scissors.homology((DATA / "malformed.json").read_text())


def test_cube_and_tetrahedron():
    cube = scissors.classical(load("cube.json"))
    assert cube["dehn_invariant"]["zero"]
    assert cube["volume"]["value"] == pytest.approx(1.0, abs=1e-12)
    tet = scissors.classical(load("tetrahedron.json"))
    d = tet["dehn_invariant"]
    assert not d["zero"] and d["heuristic"]
    assert len(d["terms"]) == 1
    assert float(d["terms"][0]["length"]) == pytest.approx(6.0)
    assert tet["volume"]["value"] == pytest.approx(2**0.5 / 12, rel=1e-12)


def test_ccs_rotation():
    r = scissors.ccs(load("ccs_rotation.json"))
    assert r["sign"] == 1
    assert r["volume"]["value"] == pytest.approx(0.3, abs=1e-12)


def test_dehn_complex_of_circle():
    r = scissors.dehn_complex(load("circle8_family.json"), load("square_group.json"))
    assert r["spectral_sequence"]["bottom_row_matches"]
    assert r["group_order"] == 8


def test_selftest_levels():
    assert scissors.criteria_for_level("fast") == [1, 2, 3, 6]
    with pytest.raises(scissors.ScissorsError, match="UsageError"):
        scissors.criteria_for_level("bogus")
    r = scissors.run_criterion(3)
    assert r.passed and r.id == 3
