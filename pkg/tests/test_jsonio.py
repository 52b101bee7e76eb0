"""Wire-format round trips.  Scalars travel as exact strings or {a, b}
dicts, never as floats."""

import json
from fractions import Fraction

import pytest

from arrangekit.arrangements import Arrangement, Subspace, build_poset
from arrangekit.cyclo import CycRat
from arrangekit.errors import InvalidArrangement
from arrangekit.jsonio import (
    arrangement_from_json,
    arrangement_to_json,
    complex_to_json,
    dump_json,
    graph_from_json,
    graph_to_json,
    load_json,
    matrix_to_json,
    scalar_from_json,
    scalar_to_json,
    subspace_to_json,
    vector_to_json,
    window_from_json,
)
from arrangekit.lattices import gram_matrix
from arrangekit.presets import boolean_hyperplanes, dynkin_graph


def test_scalar_round_trips():
    for x in (Fraction(3, 7), Fraction(-2), Fraction(0)):
        assert scalar_from_json(scalar_to_json(x), "Q") == x
    assert scalar_to_json(Fraction(3, 7)) == "3/7"
    z = CycRat(Fraction(1, 2), -3, 6)
    assert scalar_to_json(z) == {"a": "1/2", "b": "-3"}
    assert scalar_from_json(scalar_to_json(z), "Qw") == z


def test_scalar_compact_forms():
    assert scalar_from_json(5, "Q") == Fraction(5)
    assert scalar_from_json(5, "Qi") == CycRat(5, 0, 4)
    assert scalar_from_json("1 + 2*z", "Qi") == CycRat(1, 2, 4)
    assert scalar_from_json({"a": "2"}, "Qw") == CycRat(2, 0, 6)
    with pytest.raises(ValueError):
        scalar_from_json({"a": "1"}, "Q")


def test_vector_and_matrix_round_trip():
    v = (CycRat(1, 2, 4), CycRat(0, -1, 4))
    enc = vector_to_json(v)
    assert json.loads(json.dumps(enc)) == enc
    M = gram_matrix(dynkin_graph("A2"), 6)
    enc = matrix_to_json(M)
    back = [[scalar_from_json(x, "Qw") for x in row] for row in enc]
    assert back == [list(r) for r in M]


def test_complex_encoding():
    assert complex_to_json(1.5 - 2j) == {"re": 1.5, "im": -2.0}


def test_graph_round_trip():
    g = dynkin_graph("D4")
    obj = graph_to_json(g, 6)
    g2, k = graph_from_json(json.loads(json.dumps(obj)))
    assert k == 6
    assert g2.vertex_count == g.vertex_count
    assert tuple(g2.edges) == tuple(g.edges)
    default_ring, k = graph_from_json({"vertices": 1})
    assert k == 4 and default_ring.vertex_count == 1


def test_arrangement_round_trip():
    arr = Arrangement("Q", 3, boolean_hyperplanes(3))
    back = arrangement_from_json(json.loads(json.dumps(arrangement_to_json(arr))))
    assert back.field == arr.field
    assert back.ambient_dim == 3
    assert back.hyperplanes == arr.hyperplanes

    i = CycRat(0, 1, 4)
    one = CycRat(1, 0, 4)
    zero = CycRat(0, 0, 4)
    garr = Arrangement("Qi", 2, [((one, i), zero), ((one, -i), one)])
    back = arrangement_from_json(arrangement_to_json(garr))
    assert back.hyperplanes == garr.hyperplanes


def test_arrangement_json_validation():
    with pytest.raises(InvalidArrangement):
        arrangement_from_json({"field": "Qx", "dim": 2, "hyperplanes": []})
    # offset defaults to zero
    arr = arrangement_from_json(
        {"field": "Q", "dim": 2, "hyperplanes": [{"covector": ["1", "0"]}]}
    )
    assert arr.hyperplanes[0][1] == 0


def test_subspace_json_shape():
    poset = build_poset(Arrangement("Q", 3, boolean_hyperplanes(3)))
    origin = next(L for L in poset.elements if L.dim == 0)
    obj = subspace_to_json(origin)
    assert obj["dim"] == 0
    assert len(obj["equations"]) == 3
    assert obj["equations"][0]["coeffs"] == ["1", "0", "0"]
    assert obj["equations"][0]["rhs"] == "0"
    assert "x0" in obj["text"]


def test_window_from_explicit_vectors():
    gram = [[CycRat(1, 0, 4), CycRat(0, 0, 4)], [CycRat(0, 0, 4), CycRat(-1, 0, 4)]]
    w = window_from_json({"vectors": [[0, 1], [0, {"a": "0", "b": "1"}]]}, gram)
    assert w.ambient_dim_n == 1
    assert w.vectors == (
        (CycRat(0, 0, 4), CycRat(1, 0, 4)),
        (CycRat(0, 0, 4), CycRat(0, 1, 4)),
    )


def test_window_from_orbit_spec():
    gram = gram_matrix(dynkin_graph("A2"), 6)
    obj = {
        "orbit": {
            "seeds": [[1, 0]],
            "reflections": [
                {"root": [1, 0], "mu": {"a": "-1", "b": "1"}},
                {"root": [0, 1], "mu": {"a": "-1", "b": "1"}},
            ],
            "depth": 6,
        }
    }
    w = window_from_json(obj, gram)
    assert w.ambient_dim_n == 1
    assert len(w.vectors) == 24


def test_load_json_inline_and_file(tmp_path):
    assert load_json('{"x": 1}') == {"x": 1}
    assert load_json("[1, 2]") == [1, 2]
    p = tmp_path / "doc.json"
    p.write_text('{"y": [3]}', encoding="utf-8")
    assert load_json(str(p)) == {"y": [3]}


def test_dump_json_is_stable():
    text = dump_json({"b": 1, "a": [Fraction(1, 2).__str__()]})
    assert text == '{\n  "a": [\n    "1/2"\n  ],\n  "b": 1\n}\n'
