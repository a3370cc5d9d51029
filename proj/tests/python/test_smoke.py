import json
from fractions import Fraction
from pathlib import Path

import pytest

import endoquant

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def test_graph_table_degree_one():
    out = endoquant.graphs(FIXTURES / "flat.json", order=1)
    assert out["family"] == "M"
    assert out["classes"]
    for row in out["classes"]:
        assert row["degree"] <= 1
        assert row["aut"] >= 1
        Fraction(row["c"])


def test_flat_product_is_anti_wick():
    # zbar * z = zbar z + nu on the flat line
    cfg = endoquant.load_config(FIXTURES / "flat.json")
    cfg["sections"] = {"f": {"0": [[[["1", [0, 1]]]]]}, "g": {"0": [[[["1", [1, 0]]]]]}}
    for route in ("graph", "oracle"):
        terms = endoquant.mul(cfg, route=route)["product"]["terms"]
        assert terms == {"0": [[[["1", [1, 1]]]]], "1": [[[["1", [0, 0]]]]]}


def test_routes_agree_on_bundle():
    a = endoquant.mul(FIXTURES / "bundle2.json", route="graph")
    b = endoquant.mul(FIXTURES / "bundle2.json", route="oracle")
    assert a == b


def test_verify_passes_and_is_deterministic():
    r1 = endoquant.verify(FIXTURES / "bundle2.json", order=1, seed=3)
    r2 = endoquant.verify(FIXTURES / "bundle2.json", order=1, seed=3)
    assert r1.status == endoquant.EXIT_OK
    assert r1.output["all_pass"]
    assert json.dumps(r1.output) == json.dumps(r2.output)


def test_input_errors_name_the_field():
    with pytest.raises(endoquant.InvalidInput, match="route"):
        endoquant.mul(FIXTURES / "bundle2.json", route="bogus")
    with pytest.raises(ValueError, match="potentials"):
        endoquant.tensor({"m": 1})
    with pytest.raises(endoquant.InvalidInput):
        endoquant.run_command("frobnicate", FIXTURES / "flat.json")
