"""
Command-line entry point.

    python cli.py alphabet 3
    python cli.py mould --word "(1,0).(0,1)"
    python cli.py bracket --word "(1,0).(0,1)" field.vf
    python cli.py correction --depth 4 field.vf
    python cli.py check --max-depth 8 field.vf
    python cli.py theorem --theorem 2 --k 3 --l 2 field.vf
    python cli.py probe --theorem weak --degree 4 --samples 20
    python cli.py variety --degree 3 --max-depth 4 --format structured --out gens.json
    python cli.py selftest

Exit status: 0 on success, 1 on computation or input-file errors (and on a
failed self-test), 2 on usage errors.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

import utils.dump as dump
from benchmark.selftest import SELFTEST_REPORT_FILE, print_failures, run_selftest, summary_lines
from generation.alphabet import alphabet_of_component, format_word, parse_word, weight_key
from generation.correction import PROJECTION_NORMALIZATION, correction_oracle, correction_term
from generation.mould import carr_value
from generation.operators import bracket_coeffs, operators_for_spec
from generation.variety import export, generators, parse_export, split_real
from utils.configure import get_output_file_name, is_dump_enabled
from utils.load_field import read_field_file
from verification.isochrony import check_isochronous
from verification.theorems import THEOREMS, TheoremCondition, consistency_probe, theorem_applies

VERDICT_OUTPUT_FILE = get_output_file_name("VERDICT_OUTPUT_FILE") or "check_verdict.json"
PROBE_REPORT_FILE = get_output_file_name("PROBE_REPORT_FILE") or "probe_report.json"
VARIETY_OUTPUT_FILE = get_output_file_name("VARIETY_OUTPUT_FILE") or "variety_generators.txt"


def _word_arg(text: str):
    try:
        return parse_word(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _add_condition_args(parser: argparse.ArgumentParser):
    parser.add_argument("--theorem", required=True, choices=THEOREMS, help="Hypothesis class")
    for name in ("k", "l", "m", "n", "r", "degree"):
        parser.add_argument(f"--{name}", type=int, default=None, help=f"Class parameter {name}")


def _condition(args: argparse.Namespace) -> TheoremCondition:
    return TheoremCondition(theorem=args.theorem, k=args.k, l=args.l, m=args.m,
                            n=args.n, r=args.r, degree=args.degree)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isocenter",
        description="Exact correction terms and isochronicity checks of planar polynomial fields.")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    parser.add_argument("--no-dump", action="store_true", help="Do not write results into the workplace")
    commands = parser.add_subparsers(dest="command", required=True)

    alphabet = commands.add_parser("alphabet", help="Letters of the degree-r component")
    alphabet.add_argument("r", type=int)

    mould = commands.add_parser("mould", help="Correction mould value of a word")
    mould.add_argument("--word", type=_word_arg, required=True)

    bracket = commands.add_parser("bracket", help="Nested-bracket coefficients of a word")
    bracket.add_argument("--word", type=_word_arg, required=True)
    bracket.add_argument("field")

    correction = commands.add_parser("correction", help="Correction term Ca at one depth")
    correction.add_argument("--depth", type=int, required=True)
    correction.add_argument("--oracle", action="store_true", help="Also evaluate without brackets")
    correction.add_argument("field")

    check = commands.add_parser("check", help="Search for a nonzero correction term")
    check.add_argument("--max-depth", type=int, required=True)
    check.add_argument("--check-odd", action="store_true", help="Also evaluate odd depths")
    check.add_argument("field")

    theorem = commands.add_parser("theorem", help="Check the hypotheses of a nonisochronicity class")
    _add_condition_args(theorem)
    theorem.add_argument("field")

    probe = commands.add_parser("probe", help="Cross-check a class on random members")
    _add_condition_args(probe)
    probe.add_argument("--samples", type=int, default=None)
    probe.add_argument("--max-depth", type=int, default=None)
    probe.add_argument("--seed", type=int, default=None)

    variety = commands.add_parser("variety", help="Generators of the isochronous-center variety")
    variety.add_argument("--degree", type=int, required=True)
    variety.add_argument("--max-depth", type=int, required=True)
    variety.add_argument("--format", choices=("text", "structured"), default="text")
    variety.add_argument("--real", action="store_true", help="Split into real coordinates")
    variety.add_argument("--out", default=None, help="Write the export to this file")

    commands.add_parser("selftest", help="Reproduce the golden tables and formulas")
    return parser


def run_alphabet(args) -> int:
    for letter in alphabet_of_component(args.r):
        print(f"{letter} weight={letter.weight}")
    return 0


def run_mould(args) -> int:
    print(carr_value(weight_key(args.word)))
    return 0


def run_bracket(args) -> int:
    spec = read_field_file(args.field)
    coeffs = bracket_coeffs(args.word, operators_for_spec(spec))
    print(f"word: {format_word(args.word)}")
    print(f"P = {coeffs.P}")
    print(f"Q = {coeffs.Q}")
    print(f"total = ({coeffs.total[0]},{coeffs.total[1]})")
    return 0


def run_correction(args) -> int:
    spec = read_field_file(args.field)
    term = correction_term(spec, args.depth)
    print(f"Ca_{args.depth} = {term.total}")
    for length, part in term.parts.items():
        print(f"  length {length}: {part}")
    for signature, part in sorted(term.by_signature.items(), reverse=True):
        print(f"  components {signature}: {part}")
    if args.oracle:
        oracle = correction_oracle(spec, args.depth)
        print(f"oracle: {oracle}")
        if oracle != term.total:
            print("oracle and bracket assembly differ", file=sys.stderr)
            return 1
    return 0


def run_check(args) -> int:
    spec = read_field_file(args.field)
    verdict = check_isochronous(spec, args.max_depth, check_odd=args.check_odd)
    print(f"Verdict: {verdict.describe()}")
    for depth, value in verdict.table:
        print(f"  depth {depth}: Ca = {value}")
    dump.save_result(verdict.to_dict(), VERDICT_OUTPUT_FILE, "verdict")
    return 0


def run_theorem(args) -> int:
    applies, explanation = theorem_applies(read_field_file(args.field), _condition(args))
    print(f"{_condition(args).label}: {'applies' if applies else 'does not apply'}")
    print(f"  {explanation}")
    return 0


def run_probe(args) -> int:
    report = consistency_probe(_condition(args), args.samples, args.max_depth, args.seed)
    print(f"{report.condition}: {report.samples} samples, witness depths {report.witness_depths}")
    for text in report.undetermined:
        print(f"undetermined sample:\n{text}")
    for text in report.inapplicable:
        print(f"sample outside the class:\n{text}")
    dump.save_result(report.to_dict(), PROBE_REPORT_FILE, "probe report")
    return 0 if report.passed else 1


def run_variety(args) -> int:
    def generate():
        return json.loads(export(generators(args.degree, args.max_depth), "structured"))

    cached = dump.get_data_from_file_or_generate(
        f"variety_d{args.degree}_D{args.max_depth}_{PROJECTION_NORMALIZATION}.json", generate, "generator set")
    gs = parse_export(json.dumps(cached))
    if args.real:
        gs = split_real(gs)
    document = export(gs, args.format)
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(document)
    else:
        sys.stdout.write(document)
        dump.save_text(document, VARIETY_OUTPUT_FILE, "generator export")
    return 0


def run_selftest_command(args) -> int:
    print("=" * 60)
    print("Self-test")
    print("=" * 60)
    ok, report = run_selftest()
    for line in summary_lines(report):
        print(line)
    print_failures(report)
    dump.save_result(report, SELFTEST_REPORT_FILE, "self-test report")
    print("PASSED" if ok else "FAILED")
    return 0 if ok else 1


COMMANDS = {
    "alphabet": run_alphabet,
    "mould": run_mould,
    "bracket": run_bracket,
    "correction": run_correction,
    "check": run_check,
    "theorem": run_theorem,
    "probe": run_probe,
    "variety": run_variety,
    "selftest": run_selftest_command,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    dump.ENABLE_DUMP = is_dump_enabled() and not args.no_dump
    try:
        return COMMANDS[args.command](args)
    except (FileNotFoundError, ValueError, ArithmeticError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
