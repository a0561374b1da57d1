"""
Read and write field files.

A field file declares the perturbation of X_lin line by line:

    hamiltonian: true
    component 2:
    p[0,1] = 2
    p[-1,2] = 1+1*i
    component 3 symbolic

Blank lines and lines starting with '#' are ignored. Only independent
p-coefficients may be assigned; everything else is derived by
validate_assignment. Without a `hamiltonian:` line the field is a plain
real field.
"""

from typing import Dict, Optional, Set

import pyparsing as pp

from algebra.gaussrat import GAUSSRAT_GRAMMAR, GaussRat
from algebra.sympoly import VAR_GRAMMAR, CoeffVar
from generation.constraints import (DependentAssignmentError, FieldSpec, component_p_vars, is_hamiltonian_dependent,
                                   validate_assignment)


class FieldSyntaxError(ValueError):
    """Malformed field file; line and column are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_INT = pp.Word(pp.nums).set_parse_action(lambda tokens: int(tokens[0]))
_HAMILTONIAN = (pp.Keyword("hamiltonian") + pp.Suppress(":")
                + pp.one_of("true false", as_keyword=True)("flag"))
_HAMILTONIAN.set_parse_action(lambda tokens: [("hamiltonian", tokens.flag == "true")])
_SYMBOLIC = pp.Keyword("component") + _INT("degree") + pp.Keyword("symbolic")
_SYMBOLIC.set_parse_action(lambda tokens: [("symbolic", tokens.degree)])
_NUMERIC = pp.Keyword("component") + _INT("degree") + pp.Suppress(":")
_NUMERIC.set_parse_action(lambda tokens: [("component", tokens.degree)])
_ASSIGN = VAR_GRAMMAR("var") + pp.Suppress("=") + GAUSSRAT_GRAMMAR("value")
_ASSIGN.set_parse_action(lambda tokens: [("assign", (tokens.var, tokens.value))])

FIELD_LINE = _HAMILTONIAN | _SYMBOLIC | _NUMERIC | _ASSIGN


def parse_field(text: str) -> FieldSpec:
    """
    Parse a field file into a normalized FieldSpec.

    Raises:
        FieldSyntaxError: on malformed lines, unknown keys and duplicates
        DependentAssignmentError: when a derived coefficient is assigned
        RealityViolationError: when a central Hamiltonian value has a real part
    """
    hamiltonian: Optional[bool] = None
    components: Dict[int, Optional[Dict[CoeffVar, GaussRat]]] = {}
    current: Optional[int] = None
    assigned: Set[CoeffVar] = set()

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip())
        try:
            kind, payload = FIELD_LINE.parse_string(line, parse_all=True)[0]
        except pp.ParseBaseException as e:
            raise FieldSyntaxError(f"cannot parse {line!r}: {e.msg}", number, indent + e.col) from None

        if kind == "hamiltonian":
            if hamiltonian is not None:
                raise FieldSyntaxError("duplicate hamiltonian declaration", number, indent + 1)
            hamiltonian = payload
        elif kind in ("symbolic", "component"):
            if payload < 2:
                raise FieldSyntaxError(f"component degree must be at least 2, got {payload}", number, indent + 1)
            if payload in components:
                raise FieldSyntaxError(f"component {payload} declared twice", number, indent + 1)
            components[payload] = None if kind == "symbolic" else {}
            current = payload if kind == "component" else None
        else:
            var, value = payload
            if current is None:
                raise FieldSyntaxError(f"{var} assigned outside a numeric component block", number, indent + 1)
            if var.kind == "q" or (var.kind == "p" and var.conjugated):
                raise DependentAssignmentError(f"line {number}: {var} is derived by the reality relations")
            if var.kind != "p":
                raise FieldSyntaxError(f"only p-coefficients can be assigned, got {var}", number, indent + 1)
            if var.degree != current:
                raise FieldSyntaxError(f"{var} does not belong to component {current}", number, indent + 1)
            if var in assigned:
                raise FieldSyntaxError(f"duplicate assignment of {var}", number, indent + 1)
            assigned.add(var)
            components[current][var] = value

    return validate_assignment(FieldSpec(components=components, hamiltonian=bool(hamiltonian)))


def read_field_file(path: str) -> FieldSpec:
    with open(path, 'r', encoding='utf-8') as f:
        return parse_field(f.read())


def format_field(spec: FieldSpec) -> str:
    """Canonical field file of a spec; zero and derived coefficients are omitted."""
    if not spec.normalized:
        spec = validate_assignment(spec)
    lines = [f"hamiltonian: {'true' if spec.hamiltonian else 'false'}"]
    for r in spec.degrees:
        values = spec.components[r]
        if values is None:
            lines.append(f"component {r} symbolic")
            continue
        lines.append(f"component {r}:")
        for var in component_p_vars(r):
            if spec.hamiltonian and is_hamiltonian_dependent(var):
                continue
            value = values.get(var, GaussRat())
            if value:
                lines.append(f"{var} = {value}")
    return "\n".join(lines) + "\n"
