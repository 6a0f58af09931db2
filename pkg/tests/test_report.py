import json

from dyerkit.dyg import parse_dyg
from dyerkit.graph import validate_dyer
from dyerkit.oracle import INAPPLICABLE
from dyerkit.report import emit_report

from tests.helpers import edge, triangle


def test_final_figure_report(final_figure, expected):
    report = emit_report(final_figure).to_dict()
    pinned = expected["final_figure"]
    assert report["schema"] == 1
    assert report["quasi_perfect"] == {"result": True, "witness": None}
    assert report["virtually_free"] == {"result": True, "witness": None}
    assert report["abelianization"] == pinned["abelianization"]
    assert report["even_quotient"] == pinned["even_quotient"]
    assert report["derived_length_lower_bound"] == pinned["derived_length_lower_bound"]
    assert "graph_product_dl" not in report
    assert "oracle" not in report


def test_final_figure_oracle_is_inapplicable(final_figure):
    report = emit_report(final_figure, with_oracle=True).to_dict()
    assert report["oracle"]["applicable"] is False
    assert report["oracle"]["note"] == INAPPLICABLE


def test_s3_report_with_oracle():
    report = emit_report(edge(3), with_oracle=True, enumerate_cosets=True).to_dict()
    assert report["quasi_perfect"]["result"] is False
    assert report["quasi_perfect"]["witness"]["kind"] == "prime"
    assert report["oracle"]["agreement"] is True
    assert report["oracle"]["derived_index"] == 2
    assert report["oracle"]["derived_abelianization"] == {"torsion": [3], "free_rank": 0}
    assert report["oracle"]["group_order"] == 6


def test_single_vertex_report():
    report = emit_report(validate_dyer({"a": 2}, [])).to_dict()
    assert report["quasi_perfect"]["result"] is True
    assert report["graph_product_dl"] == 1


def test_graph_echo_reparses(final_figure):
    report = emit_report(final_figure).to_dict()
    assert parse_dyg(report["graph"]) == final_figure


def test_reports_are_byte_identical(final_figure):
    first = emit_report(final_figure, with_oracle=True).to_json()
    assert emit_report(final_figure, with_oracle=True).to_json() == first
    assert list(json.loads(first))[:3] == ["schema", "graph", "even"]


def test_infinity_is_spelled_inf(final_figure):
    assert '"inf"' in emit_report(final_figure).to_json()
    text = emit_report(validate_dyer({"a": 3, "b": 3}, [])).to_text()
    assert 'graph_product_dl: "inf"' in text


def test_virtually_free_witness_is_serialised(affine_a2):
    report = emit_report(affine_a2).to_dict()
    witness = report["virtually_free"]["witness"]
    assert witness["kind"] == "infinite_coxeter_clique"
    assert witness["clique"] == ["a", "b", "c"]


def test_oracle_section_of_skipped_summary():
    g = triangle(2, 2, 2, f=(3, 3, 3))
    oracle = emit_report(g, with_oracle=True, max_index=10).to_dict()["oracle"]
    assert oracle["note"].startswith("skipped: commutator subgroup index 27")
    assert "quasi_perfect" not in oracle and "derived_index" not in oracle
    assert oracle["derived_series"]["stopped"] == "index"
