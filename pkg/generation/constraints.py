"""
Reality and Hamiltonian coefficient relations.

A real planar field written in the complex coordinates (x, y) = (z, ~z) has
q[a,b] = ~p[b,a]; a real Hamiltonian one additionally ties every p[a,b]
with a > b >= 0 to its mirror:

    p[a,b] = -((b+1)/(a+1)) * ~p[b,a]

and forces the central coefficient p[m,m] of an odd-degree component to be
purely imaginary. Everything downstream is expressed over the canonical
independent set: p[a,b] with a < b (edge p[-1,r] included) plus the central
p[m,m] of odd components.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional

from algebra.gaussrat import GaussRat
from algebra.sympoly import CoeffVar, SymPoly, poly_substitute
from generation.alphabet import alphabet_of_component

logger = logging.getLogger(__name__)

# Numeric assignment of one component: independent p-variable -> value.
Assignment = Dict[CoeffVar, GaussRat]


class DependentAssignmentError(ValueError):
    """A value was given for a coefficient that the constraints derive."""


class RealityViolationError(ValueError):
    """A central Hamiltonian coefficient was given a nonzero real part."""


@dataclass
class FieldSpec:
    """
    Perturbation X_lin + sum of X_r of a real (optionally Hamiltonian) planar field.

    Attributes:
        components: Degree r -> None for a symbolic component, or the numeric
            assignment of its p-coefficients (after normalization: all of them)
        hamiltonian: Whether the Hamiltonian relations are imposed
        normalized: Set by validate_assignment
    """
    components: Dict[int, Optional[Assignment]] = field(default_factory=dict)
    hamiltonian: bool = False
    normalized: bool = False

    @property
    def degrees(self) -> List[int]:
        return sorted(self.components)

    @property
    def degree(self) -> int:
        return max(self.components, default=1)

    def is_numeric(self) -> bool:
        return all(values is not None for values in self.components.values())

    def support(self) -> List[int]:
        """Degrees whose component is not identically zero (symbolic components count)."""
        return [r for r in self.degrees
                if self.components[r] is None or any(v for v in self.components[r].values())]

    def is_trivial(self) -> bool:
        return not self.support()

    def value(self, var: CoeffVar) -> GaussRat:
        """Numeric value of p-variable `var` in a normalized numeric spec."""
        values = self.components.get(var.degree)
        if values is None:
            raise ValueError(f"component {var.degree} is symbolic or absent")
        return values.get(var, GaussRat())


def component_p_vars(r: int) -> List[CoeffVar]:
    """The r + 1 p-coefficients of the degree-r component (the edge (r,-1) carries q only)."""
    return [CoeffVar(letter.n1, letter.n2) for letter in alphabet_of_component(r) if letter.n2 != -1]


def coefficient_count(d: int) -> int:
    """N(d): independent complex coefficients of a real field of degree d."""
    return (d - 1) * (d + 4) // 2


def is_central(var: CoeffVar) -> bool:
    return var.a == var.b


def is_hamiltonian_dependent(var: CoeffVar) -> bool:
    return var.a > var.b >= 0


def hamiltonian_factor(a: int, b: int) -> Fraction:
    """Scalar c with p[a,b] = c * ~p[b,a]."""
    return Fraction(-(b + 1), a + 1)


def reality_relations(r: int) -> Dict[CoeffVar, SymPoly]:
    """
    Rewrite every q-variable of degree r onto conjugated p-variables.

    Returns:
        q[a,b] -> ~p[b,a] and ~q[a,b] -> p[b,a]
    """
    if r < 2:
        raise ValueError(f"component degree must be at least 2, got {r}")
    relations: Dict[CoeffVar, SymPoly] = {}
    for letter in alphabet_of_component(r):
        if letter.n1 == -1:
            continue
        a, b = letter
        relations[CoeffVar(a, b, kind="q")] = SymPoly.variable(CoeffVar(b, a, conjugated=True))
        relations[CoeffVar(a, b, conjugated=True, kind="q")] = SymPoly.variable(CoeffVar(b, a))
    return relations


def hamiltonian_relations(r: int) -> Dict[CoeffVar, SymPoly]:
    """
    Rewrite the dependent coefficients of a Hamiltonian degree-r component.

    Returns:
        p[a,b] -> c*~p[b,a] and ~p[a,b] -> c*p[b,a] for a > b >= 0, and for odd r
        ~p[m,m] -> -p[m,m]
    """
    if r < 2:
        raise ValueError(f"component degree must be at least 2, got {r}")
    relations: Dict[CoeffVar, SymPoly] = {}
    for var in component_p_vars(r):
        if is_hamiltonian_dependent(var):
            factor = hamiltonian_factor(var.a, var.b)
            mirror = CoeffVar(var.b, var.a)
            relations[var] = SymPoly.variable(mirror.conj(), factor)
            relations[var.conj()] = SymPoly.variable(mirror, factor)
        elif is_central(var):
            relations[var.conj()] = SymPoly.variable(var, -1)
    return relations


def independent_set(d: int, hamiltonian: bool) -> List[CoeffVar]:
    """
    Canonical coordinates of degree-d perturbations, in variable order.

    Args:
        d: Field degree, at least 2
        hamiltonian: Restrict to real Hamiltonian fields

    Returns:
        All p[a,b] of degrees 2..d (N(d) of them) in the real case; otherwise
        p[a,b] with a < b plus the central p[m,m]
    """
    if d < 2:
        raise ValueError(f"field degree must be at least 2, got {d}")
    coords: List[CoeffVar] = []
    for r in range(2, d + 1):
        for var in component_p_vars(r):
            if hamiltonian and is_hamiltonian_dependent(var):
                continue
            coords.append(var)
    return sorted(coords, key=lambda var: var.sort_key)


def validate_assignment(spec: FieldSpec) -> FieldSpec:
    """
    Check a field specification and fill in every dependent coefficient.

    Args:
        spec: Specification with numeric components holding independent values only

    Returns:
        A normalized copy; numeric components list all r + 1 p-coefficients

    Raises:
        DependentAssignmentError: when a derived coefficient carries a value
        RealityViolationError: when a central Hamiltonian value has a real part
    """
    components: Dict[int, Optional[Assignment]] = {}
    for r in sorted(spec.components):
        if r < 2:
            raise ValueError(f"component degree must be at least 2, got {r}")
        given = spec.components[r]
        if given is None:
            components[r] = None
            continue
        for var, value in given.items():
            if var.kind == "q" or var.conjugated:
                raise DependentAssignmentError(
                    f"{var} is dependent via the reality relation; assign p-coefficients only")
            if var.kind != "p" or var.degree != r:
                raise ValueError(f"{var} does not belong to component {r}")
            if spec.hamiltonian and not spec.normalized and is_hamiltonian_dependent(var):
                raise DependentAssignmentError(
                    f"{var} is dependent via the Hamiltonian relation on p[{var.b},{var.a}]")
            if spec.hamiltonian and is_central(var) and value.re:
                raise RealityViolationError(
                    f"{var} = {value} must be purely imaginary in a Hamiltonian field")
        filled: Assignment = {}
        for var in component_p_vars(r):
            if spec.hamiltonian and is_hamiltonian_dependent(var):
                mirror = CoeffVar(var.b, var.a)
                filled[var] = given.get(mirror, GaussRat()).conj() * hamiltonian_factor(var.a, var.b)
            else:
                filled[var] = given.get(var, GaussRat())
        components[r] = filled
    normalized = FieldSpec(components=components, hamiltonian=spec.hamiltonian, normalized=True)
    logger.debug("normalized field spec with components %s", normalized.degrees)
    return normalized


def coefficient_values(spec: FieldSpec) -> Dict[CoeffVar, SymPoly]:
    """
    Express every p[a,b] and ~p[a,b] of the spec over independent coordinates.

    Symbolic components map to variables (rewritten through the Hamiltonian
    relations when imposed); numeric components map to constants.
    """
    if not spec.normalized:
        spec = validate_assignment(spec)
    values: Dict[CoeffVar, SymPoly] = {}
    for r, assigned in spec.components.items():
        relations = hamiltonian_relations(r) if spec.hamiltonian else {}
        for var in component_p_vars(r):
            if assigned is not None:
                value = assigned.get(var, GaussRat())
                values[var] = SymPoly.constant(value)
                values[var.conj()] = SymPoly.constant(value.conj())
                continue
            values[var] = relations.get(var, SymPoly.variable(var))
            values[var.conj()] = relations.get(var.conj(), SymPoly.variable(var.conj()))
    return values


def reduce_poly(poly: SymPoly, degrees: Iterable[int], hamiltonian: bool) -> SymPoly:
    """
    Rewrite a polynomial onto the independent coordinates of the given components.

    q-variables are eliminated first, then the Hamiltonian relations are applied.
    """
    degrees = [r for r in sorted(set(degrees)) if r >= 2]
    reality: Dict[CoeffVar, SymPoly] = {}
    for r in degrees:
        reality.update(reality_relations(r))
    result = poly_substitute(poly, reality, relations=True)
    if hamiltonian:
        relations: Dict[CoeffVar, SymPoly] = {}
        for r in degrees:
            relations.update(hamiltonian_relations(r))
        result = poly_substitute(result, relations, relations=True)
    return result


def reduce_for_spec(poly: SymPoly, spec: FieldSpec) -> SymPoly:
    return reduce_poly(poly, spec.degrees, spec.hamiltonian)


def symbolic_spec(degrees: Iterable[int], hamiltonian: bool = True) -> FieldSpec:
    return FieldSpec(components={r: None for r in sorted(set(degrees))},
                     hamiltonian=hamiltonian, normalized=True)


def numeric_spec(values: Mapping[CoeffVar, GaussRat], hamiltonian: bool = True,
                 degrees: Iterable[int] = ()) -> FieldSpec:
    """
    Build and normalize a numeric spec from independent values.

    Degrees listed in `degrees` are declared even when no value belongs to them.
    """
    components: Dict[int, Assignment] = {r: {} for r in degrees}
    for var, value in values.items():
        components.setdefault(var.degree, {})[var] = GaussRat.of(value)
    return validate_assignment(FieldSpec(components=components, hamiltonian=hamiltonian))
