import pytest

from algebra.sympoly import parse_poly
from benchmark.metrics.poly_diff import calculate_jaccard_similarity, poly_diff
from benchmark.selftest import run_selftest, summary_lines


@pytest.fixture(scope="module")
def selftest_report():
    return run_selftest()


def test_selftest_passes(selftest_report):
    ok, report = selftest_report
    assert ok
    assert report["passed"]
    for name in ("mould_length_2", "mould_length_4", "closed_forms", "formulas", "odd_depth", "oracle",
                 "fundamental_lemma"):
        assert report[name]["passed"] == report[name]["total"], name


def test_random_spec_coverage(selftest_report):
    _, report = selftest_report
    # 4 symbolic odd cases plus depths 3 and 5 on 50 random specs
    assert report["odd_depth"]["total"] == 4 + 2 * 50
    # 10 symbolic oracle checks plus depths 2, 4 and 6 on 50 random specs
    assert report["oracle"]["total"] == 10 + 3 * 50


def test_summary(selftest_report):
    _, report = selftest_report
    lines = summary_lines(report)
    assert "4/4 length-2 entries" in lines[0]
    assert "44/44 length-4 entries" in lines[0]
    assert lines[2] == "correction formulas: 4/4 binding"


def test_diagnostics(selftest_report):
    _, report = selftest_report
    diagnostics = {entry["id"]: entry for entry in report["diagnostics"]}
    assert set(diagnostics) == {"quartic_ca4_42_as_printed", "cubic_ca4_322", "quadratic_ca4_2222"}
    printed = diagnostics["quartic_ca4_42_as_printed"]
    assert not printed["matches"]
    assert printed["diff"]["coefficient_mismatch"]
    assert printed["diff"]["monomial_similarity"] == 1.0


def test_poly_diff():
    left = parse_poly("p[0,1]*~p[0,1] + (2)*p[-1,2]*~p[-1,2]")
    right = parse_poly("p[0,1]*~p[0,1] + (3)*p[-1,2]*~p[-1,2] + p[1,1]")
    diff = poly_diff(left, right)
    assert not diff["equal"]
    assert diff["monomial_similarity"] == round(2 / 3, 4)
    assert diff["missing"] == []
    assert diff["unexpected"] == ["(1)*p[1,1]"]
    assert len(diff["coefficient_mismatch"]) == 1
    assert poly_diff(left, left)["equal"]
    assert calculate_jaccard_similarity(set(), set()) == 1.0
