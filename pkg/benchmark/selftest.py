"""
Golden self-test.

Reproduces the tabulated mould values of the quadratic field, the
closed-form correction terms of the quadratic, cubic and quartic examples,
odd-depth vanishing, the bracket/oracle equivalence and the Fundamental
Lemma. Binding mismatches fail the run; printed formulas known to disagree
with the computation are reported as diagnostics.
"""

import json
import random
from typing import Dict, List, Optional, Tuple

from algebra.gaussrat import gr_imag_unit, parse_gaussrat
from algebra.sympoly import parse_poly
from benchmark.metrics.poly_diff import poly_diff
from generation.alphabet import parse_word, weight_key
from generation.constraints import reduce_poly, symbolic_spec
from generation.correction import correction_oracle, correction_term, fundamental_lemma_value
from generation.mould import (carr_by_recursion, carr_closed_form_C1, carr_closed_form_C2,
                              carr_closed_form_C3, carr_value)
from utils.configure import get_benchmark_config_path, get_output_file_name
from utils.dump import save_result
from verification.theorems import random_spec

MOULD_TABLES_PATH = get_benchmark_config_path(
    "MOULD_TABLES_PATH") or "benchmark/dataset/mould_tables.json"
CORRECTION_FORMULAS_PATH = get_benchmark_config_path(
    "CORRECTION_FORMULAS_PATH") or "benchmark/dataset/correction_formulas.json"
SELFTEST_CONFIG_PATH = get_benchmark_config_path(
    "SELFTEST_CONFIG_PATH") or "benchmark/config/selftest.json"
SELFTEST_REPORT_FILE = get_output_file_name("SELFTEST_REPORT_FILE") or "selftest_report.json"


def load_json(path: str) -> dict:
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def check_mould_tables(tables: dict) -> Dict[str, dict]:
    """Compare every tabulated Carr value; one section per table length."""
    sections = {}
    for table in ("length_2", "length_4"):
        mismatches = []
        entries = tables[table]
        for entry in entries:
            word = parse_word(entry["word"])
            if list(weight_key(word)) != entry["weights"]:
                raise ValueError(f"{entry['word']}: weights {entry['weights']} do not match the letters")
            expected = parse_gaussrat(entry["value"])
            actual = carr_value(weight_key(word))
            if actual != expected:
                mismatches.append(f"{entry['word']} ({entry['location']}): expected {expected}, got {actual}")
        sections[table] = {"passed": len(entries) - len(mismatches), "total": len(entries),
                           "mismatches": mismatches}
    return sections


def _random_resonant_key(rng: random.Random, length: int, bound: int) -> Tuple[int, ...]:
    """Resonant key of nonzero weights whose proper prefix sums are nonzero."""
    if length == 1:
        return (0,)
    while True:
        head = [rng.choice([w for w in range(-bound, bound + 1) if w]) for _ in range(length - 1)]
        prefix_sums = [sum(head[:j]) for j in range(1, length)]
        if all(prefix_sums):
            return tuple(head) + (-sum(head),)


def check_closed_forms(count: int, bound: int, rng: random.Random) -> dict:
    """carr_value and the pure recursion against C1/C2/C3 on random resonant keys of length <= 3."""
    mismatches = []
    failed = 0
    for _ in range(count):
        key = _random_resonant_key(rng, rng.randint(1, 3), bound)
        zs = [gr_imag_unit(w) for w in key]
        expected = (carr_closed_form_C1, carr_closed_form_C2, carr_closed_form_C3)[len(key) - 1](*zs)
        wrong = [f"{name}{key}: expected {expected}, got {actual}"
                 for name, actual in (("carr_value", carr_value(key)), ("recursion", carr_by_recursion(key)))
                 if actual != expected]
        failed += bool(wrong)
        mismatches.extend(wrong)
    return {"passed": count - failed, "total": count, "mismatches": mismatches}


def check_formulas(formulas: dict) -> Tuple[dict, List[dict]]:
    """
    Compare the closed-form corrections.

    Returns:
        (binding section, diagnostics) where every diagnostic carries a term diff
    """
    mismatches, diagnostics = [], []
    binding = 0
    terms = {}
    for entry in formulas["formulas"]:
        components = tuple(entry["components"])
        key = (components, entry["depth"])
        if key not in terms:
            terms[key] = correction_term(symbolic_spec(components), entry["depth"])
        term = terms[key]
        actual = term.signature(*entry["signature"]) if entry["signature"] else term.total
        expected = reduce_poly(parse_poly(entry["poly"]), components, hamiltonian=True)
        diff = poly_diff(expected, actual)
        if entry["role"] == "binding":
            binding += 1
            if not diff["equal"]:
                mismatches.append({"id": entry["id"], "location": entry["location"], "diff": diff})
        else:
            diagnostics.append({"id": entry["id"], "location": entry["location"],
                                "printed": entry["printed"], "matches": diff["equal"],
                                "computed": str(actual), "diff": diff})
    return {"passed": binding - len(mismatches), "total": binding, "mismatches": mismatches}, diagnostics


def check_odd_depths(cases: List[dict], random_specs: List) -> dict:
    mismatches = []
    for case in cases:
        total = correction_term(symbolic_spec(case["components"]), case["depth"]).total
        if not total.is_zero():
            mismatches.append(f"components {case['components']}, depth {case['depth']}: {total}")
    for index, spec in enumerate(random_specs):
        for depth in (3, 5):
            total = correction_term(spec, depth).total
            if not total.is_zero():
                mismatches.append(f"random spec {index}, depth {depth}: {total}")
    total_checks = len(cases) + 2 * len(random_specs)
    return {"passed": total_checks - len(mismatches), "total": total_checks, "mismatches": mismatches}


def check_oracle(cases: List[dict], random_specs: List) -> dict:
    mismatches = []
    checks = [(symbolic_spec(case["components"]), depth, f"components {case['components']}")
              for case in cases for depth in case["depths"]]
    checks += [(spec, depth, f"random spec {index}")
               for index, spec in enumerate(random_specs) for depth in (2, 4, 6)]
    for spec, depth, label in checks:
        bracket = correction_term(spec, depth).total
        oracle = correction_oracle(spec, depth)
        if bracket != oracle:
            mismatches.append({"case": f"{label}, depth {depth}", "diff": poly_diff(oracle, bracket)})
    return {"passed": len(checks) - len(mismatches), "total": len(checks), "mismatches": mismatches}


def check_fundamental_lemma(cases: List[dict]) -> dict:
    mismatches = []
    for case in cases:
        spec = symbolic_spec(case["components"])
        r = case["r"]
        computed = correction_term(spec, 2 * (r - 1)).total
        closed = fundamental_lemma_value(r, spec)
        if computed != closed:
            mismatches.append({"r": r, "diff": poly_diff(closed, computed)})
    return {"passed": len(cases) - len(mismatches), "total": len(cases), "mismatches": mismatches}


def run_selftest(config_path: Optional[str] = None) -> Tuple[bool, dict]:
    """
    Run every golden check.

    Returns:
        (whether all binding checks passed, report dictionary)
    """
    config = load_json(config_path or SELFTEST_CONFIG_PATH)
    rng = random.Random(config.get("seed", 7))
    degrees = config.get("random_spec_degrees", [2, 3, 4, 5])
    random_specs = [random_spec(degrees[:rng.randint(1, len(degrees))], rng, forced=degrees[:1])
                    for _ in range(config.get("random_specs", 50))]

    mould = check_mould_tables(load_json(MOULD_TABLES_PATH))
    formulas, diagnostics = check_formulas(load_json(CORRECTION_FORMULAS_PATH))
    report = {
        "mould_length_2": mould["length_2"],
        "mould_length_4": mould["length_4"],
        "closed_forms": check_closed_forms(config.get("closed_form_keys", 1000),
                                           config.get("closed_form_weight_range", 6), rng),
        "formulas": formulas,
        "odd_depth": check_odd_depths(config.get("odd_depth_cases", []), random_specs),
        "oracle": check_oracle(config.get("oracle_cases", []), random_specs),
        "fundamental_lemma": check_fundamental_lemma(config.get("fundamental_lemma", [])),
    }
    passed = all(section["passed"] == section["total"] for section in report.values())
    report["diagnostics"] = diagnostics
    report["passed"] = passed
    return passed, report


def summary_lines(report: dict) -> List[str]:
    lines = [
        f"mould tables: {report['mould_length_2']['passed']}/{report['mould_length_2']['total']} length-2 entries, "
        f"{report['mould_length_4']['passed']}/{report['mould_length_4']['total']} length-4 entries",
        f"closed forms: {report['closed_forms']['passed']}/{report['closed_forms']['total']} random keys",
        f"correction formulas: {report['formulas']['passed']}/{report['formulas']['total']} binding",
        f"odd depths: {report['odd_depth']['passed']}/{report['odd_depth']['total']} vanish",
        f"oracle equivalence: {report['oracle']['passed']}/{report['oracle']['total']} cases",
        f"fundamental lemma: {report['fundamental_lemma']['passed']}/{report['fundamental_lemma']['total']} cases",
    ]
    for diagnostic in report["diagnostics"]:
        state = "matches" if diagnostic["matches"] else "differs from the computation"
        lines.append(f"diagnostic {diagnostic['id']}: printed formula {state} "
                     f"(monomial similarity {diagnostic['diff']['monomial_similarity']})")
    return lines


def print_failures(report: dict):
    for name, section in report.items():
        if isinstance(section, dict) and section.get("mismatches"):
            print(f"\n{name} mismatches:")
            for mismatch in section["mismatches"]:
                print(f"  {json.dumps(mismatch, ensure_ascii=False) if isinstance(mismatch, dict) else mismatch}")


if __name__ == '__main__':
    print("=" * 60)
    print("Self-test")
    print("=" * 60)
    ok, result = run_selftest()
    for line in summary_lines(result):
        print(line)
    print_failures(result)
    save_result(result, SELFTEST_REPORT_FILE, "self-test report")
    print("PASSED" if ok else "FAILED")
    raise SystemExit(0 if ok else 1)
