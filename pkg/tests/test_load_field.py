import random
from fractions import Fraction

import pytest

from algebra.gaussrat import GaussRat
from algebra.sympoly import p
from generation.constraints import DependentAssignmentError, RealityViolationError, numeric_spec, symbolic_spec
from utils.load_field import FieldSyntaxError, format_field, parse_field, read_field_file
from verification.theorems import random_spec

EXAMPLE = """hamiltonian: true
component 2:
p[0,1] = 2
p[-1,2] = 1+1*i
"""


def test_parse_example():
    spec = parse_field(EXAMPLE)
    assert spec.hamiltonian
    assert spec.normalized
    assert spec.value(p(0, 1)) == 2
    assert spec.value(p(-1, 2)) == GaussRat(1, 1)
    assert spec.value(p(1, 0)) == -1
    assert spec == numeric_spec({p(0, 1): GaussRat(2), p(-1, 2): GaussRat(1, 1)})


def test_dependent_assignment_is_rejected():
    with pytest.raises(DependentAssignmentError):
        parse_field("hamiltonian: true\ncomponent 2:\np[1,0] = 1\n")
    # a plain real field keeps p[1,0] independent
    assert parse_field("component 2:\np[1,0] = 1\n").value(p(1, 0)) == 1


@pytest.mark.parametrize("text, line", [
    ("component 2:\nq[1,0] = 1\n", 2),
    ("hamiltonian: true\ncomponent 3:\nq[0,2] = 1\n", 3),
    ("component 2:\n~p[0,1] = 2\n", 2),
])
def test_derived_coefficients_are_rejected(text, line):
    with pytest.raises(DependentAssignmentError) as info:
        parse_field(text)
    assert not isinstance(info.value, FieldSyntaxError)
    assert str(info.value).startswith(f"line {line}:")


def test_central_value_must_be_imaginary():
    with pytest.raises(RealityViolationError):
        parse_field("hamiltonian: true\ncomponent 3:\np[1,1] = 1/2\n")
    spec = parse_field("hamiltonian: true\ncomponent 3:\np[1,1] = -1/2*i\n")
    assert spec.value(p(1, 1)) == GaussRat(0, Fraction(-1, 2))


def test_empty_file():
    spec = parse_field("")
    assert spec.is_trivial()
    assert not spec.hamiltonian
    assert parse_field("# comment only\n\n").components == {}


def test_symbolic_components():
    spec = parse_field("hamiltonian: true\ncomponent 2 symbolic\ncomponent 3 symbolic\n")
    assert spec == symbolic_spec([2, 3])
    assert not spec.is_numeric()


@pytest.mark.parametrize("text, line", [
    ("hamiltonian: maybe\n", 1),
    ("component 2:\np[0,1] = 2\np[0,1] = 3\n", 3),
    ("component 2:\ncomponent 2:\n", 2),
    ("p[0,1] = 2\n", 1),
    ("component 1:\n", 1),
    ("component 2:\nre[0,1] = 1\n", 2),
    ("component 2:\np[0,2] = 1\n", 2),
    ("component 2:\n\n  p[0,1] = 2x\n", 3),
    ("hamiltonian: true\nhamiltonian: false\n", 2),
    ("component 2:\np[2,-1] = 1\n", 2),
    ("colour: red\n", 1),
])
def test_syntax_errors(text, line):
    with pytest.raises(FieldSyntaxError) as info:
        parse_field(text)
    assert info.value.line == line
    assert info.value.column >= 1
    assert str(info.value).startswith(f"line {line}, column")


def test_syntax_error_is_a_value_error():
    with pytest.raises(ValueError):
        parse_field("component two:\n")


def test_format_round_trip():
    spec = parse_field(EXAMPLE)
    assert format_field(spec) == "hamiltonian: true\ncomponent 2:\np[-1,2] = 1+i\np[0,1] = 2\n"
    assert parse_field(format_field(spec)) == spec
    rng = random.Random(41)
    for _ in range(30):
        spec = random_spec([2, 3, 4, 5], rng)
        assert parse_field(format_field(spec)) == spec
    mixed = parse_field("component 2 symbolic\ncomponent 3:\np[2,0] = 1/3-i\n")
    assert parse_field(format_field(mixed)) == mixed


def test_read_field_file(tmp_path):
    path = tmp_path / "quadratic.vf"
    path.write_text(EXAMPLE, encoding="utf-8")
    assert read_field_file(str(path)) == parse_field(EXAMPLE)
    with pytest.raises(FileNotFoundError):
        read_field_file(str(tmp_path / "missing.vf"))
