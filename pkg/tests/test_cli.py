import json

import jsonschema
import pytest
from click.testing import CliRunner

from mdg import cli, graphs


REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "claims"],
    "properties": {
        "schema": {"const": 1},
        "claims": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "status", "computed", "expected", "ms"],
                "properties": {
                    "id": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "skipped", "asserted"]},
                    "ms": {"type": "integer"},
                },
            },
        },
    },
}


def run(*args):
    return CliRunner().invoke(cli.main, args)


def test_verify_group_n2():
    r = run("verify", "group", "-n", "2")
    assert r.exit_code == 0, r.output
    assert "order: computed=256" in r.output


def test_verify_group_json_schema():
    r = run("verify", "group", "-n", "2", "--json")
    assert r.exit_code == 0
    doc = json.loads(r.output)
    jsonschema.validate(doc, REPORT_SCHEMA)
    ids = [c["id"] for c in doc["claims"]]
    assert len(ids) == len(set(ids))  # claim ids unique


def test_verify_group_dihedral():
    r = run("verify", "group", "--dihedral", "4,4")
    assert r.exit_code == 0
    assert "mixed-dihedral: computed=True" in r.output
    # an odd factor fails the predicate and the exit code reflects it
    assert run("verify", "group", "--dihedral", "3").exit_code == 1


def test_verify_group_invalid_n():
    assert run("verify", "group", "-n", "1").exit_code != 0
    assert run("verify", "group", "-n", "9").exit_code != 0


def test_verify_graphs_n2():
    r = run("verify", "graphs", "-n", "2")
    assert r.exit_code == 0, r.output
    assert "'2-arc': False" in r.output
    assert "'2-geodesic': True" in r.output


def test_verify_graphs_json_schema():
    r = run("verify", "graphs", "-n", "2", "--json")
    assert r.exit_code == 0
    jsonschema.validate(json.loads(r.output), REPORT_SCHEMA)


def test_aut_n2_full_search():
    r = run("aut", "-n", "2", "--full-search")
    assert r.exit_code == 0, r.output
    assert "18432" in r.output


def test_aut_n2_sigma_full_search():
    r = run("aut", "-n", "2", "--target", "sigma", "--full-search")
    assert r.exit_code == 0, r.output
    assert "full-automorphism-order-sigma" in r.output
    assert "18432" in r.output


def test_aut_without_search_is_asserted():
    r = run("aut", "-n", "2", "--json")
    assert r.exit_code == 0
    doc = json.loads(r.output)
    by_id = {c["id"]: c for c in doc["claims"]}
    assert by_id["generated-order"]["status"] == "pass"
    assert by_id["full-automorphism-order-gamma"]["status"] == "asserted"
    assert by_id["full-automorphism-order-gamma"]["expected"] == 18432


def test_export_edgelist_gamma():
    r = run("export", "-n", "2", "--target", "gamma", "--format", "edgelist")
    assert r.exit_code == 0
    assert len(r.output.strip().splitlines()) == 768
    again = run("export", "-n", "2", "--target", "gamma", "--format", "edgelist")
    assert again.output == r.output  # byte-stable


def test_export_graph6_sigma_roundtrip():
    r = run("export", "-n", "2", "--target", "sigma", "--format", "graph6")
    assert r.exit_code == 0
    g = graphs.from_graph6(r.output.strip())
    assert g.n == 128 and g.is_regular() == 4


def test_export_graph6_kbip():
    r = run("export", "-n", "2", "--target", "kbip", "--format", "graph6")
    assert r.exit_code == 0
    assert graphs.from_graph6(r.output.strip()) == graphs.complete_bipartite(4, 4)


def test_export_to_file(tmp_path):
    out = tmp_path / "g.el"
    r = run("export", "-n", "2", "-o", str(out))
    assert r.exit_code == 0
    assert len(out.read_text().strip().splitlines()) == 768


def test_diagram_json():
    r = run("diagram", "-n", "2")
    assert r.exit_code == 0, r.output
    doc = json.loads(r.output)
    by_dist = {}
    for c in doc["cells"]:
        by_dist.setdefault(c["distance"], []).append(c["size"])
    assert [sorted(by_dist[d]) for d in sorted(by_dist)] == \
        [[1], [6], [18], [18, 36], [9, 36, 72], [18, 36], [6]]


def test_diagram_table_stable():
    a = run("diagram", "-n", "2", "--format", "table")
    b = run("diagram", "-n", "2", "--format", "table")
    assert a.exit_code == 0 and a.output == b.output
    assert "dist" in a.output
