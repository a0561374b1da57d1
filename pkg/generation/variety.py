"""
Generators of the isochronous-center variety.

For the symbolic real Hamiltonian field of degree d, the correction terms
Ca_2, Ca_4, .., Ca_2P over the independent coordinates generate (up to the
stabilization index, which is not computed) the ideal whose zero set is the
isochronous-center variety. Every generator is weight-0 graded, hence
invariant under the rescaling p[a,b] -> lambda^(a-b) p[a,b].
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

import pyparsing as pp

from algebra.gaussrat import GaussRat
from algebra.sympoly import VAR_GRAMMAR, CoeffVar, SymPoly, parse_poly, poly_weight_grade
from generation.constraints import independent_set, is_central, symbolic_spec
from generation.correction import correction_term

logger = logging.getLogger(__name__)

MODES = ("complex", "real")
TEXT_HEADER = "# isochronous-center generators"


@dataclass
class GeneratorSet:
    """
    Attributes:
        degree: Field degree d
        max_depth: Largest generator depth 2P
        generators: (depth, polynomial) pairs; a real-mode set holds the real
            part then the imaginary part of every generator
        coordinates: Independent coordinates the generators are written over
        mode: "complex" (p and ~p variables) or "real" (re[a,b], im[a,b])
    """
    degree: int
    max_depth: int
    generators: List[Tuple[int, SymPoly]] = field(default_factory=list)
    coordinates: List[CoeffVar] = field(default_factory=list)
    mode: str = "complex"


def generators(d: int, max_depth: int) -> GeneratorSet:
    """
    Ca_2p for 2p = 2..max_depth of the symbolic Hamiltonian field of degree d.

    Args:
        d: Field degree, at least 2
        max_depth: Even bound 2P (0 gives an empty set)

    Returns:
        GeneratorSet over the Hamiltonian independent coordinates
    """
    if d < 2:
        raise ValueError(f"field degree must be at least 2, got {d}")
    if max_depth < 0 or max_depth % 2:
        raise ValueError(f"max depth must be even and nonnegative, got {max_depth}")
    gs = GeneratorSet(degree=d, max_depth=max_depth, coordinates=independent_set(d, hamiltonian=True))
    for depth in range(2, max_depth + 1, 2):
        degrees = range(2, min(d, depth + 1) + 1)
        term = correction_term(symbolic_spec(degrees), depth)
        gs.generators.append((depth, term.total))
        logger.info("generator Ca_%d: %d terms", depth, len(term.total))
    return gs


def grading_check(gs: GeneratorSet) -> bool:
    """True when every generator's monomials have total weight 0."""
    for _, poly in gs.generators:
        if any(weight != 0 for weight in poly_weight_grade(poly)):
            return False
    return True


def t_lambda(poly: SymPoly, lam: GaussRat) -> SymPoly:
    """Rescale p[a,b] -> lam^(a-b) p[a,b] (conjugates by lam^(b-a)) monomialwise."""
    result = SymPoly.zero()
    for weight, part in poly_weight_grade(poly).items():
        result = result + part.scale(lam ** weight)
    return result


def split_real(gs: GeneratorSet) -> GeneratorSet:
    """
    Rewrite a complex generator set over real coordinates.

    p[a,b] = re[a,b] + i im[a,b]; a central Hamiltonian coordinate is purely
    imaginary, p[m,m] = i im[m,m]. Every generator yields its real part and its
    imaginary part, in that order.
    """
    if gs.mode != "complex":
        raise ValueError("generator set is already over real coordinates")
    i = GaussRat(0, 1)
    assignment: Dict[CoeffVar, SymPoly] = {}
    coordinates: List[CoeffVar] = []
    for var in gs.coordinates:
        im_part = SymPoly.variable(CoeffVar(var.a, var.b, kind="im"), i)
        if is_central(var):
            assignment[var] = im_part
            coordinates.append(CoeffVar(var.a, var.b, kind="im"))
        else:
            assignment[var] = SymPoly.variable(CoeffVar(var.a, var.b, kind="re")) + im_part
            coordinates.extend([CoeffVar(var.a, var.b, kind="re"), CoeffVar(var.a, var.b, kind="im")])
    result = GeneratorSet(degree=gs.degree, max_depth=gs.max_depth, coordinates=coordinates, mode="real")
    half = Fraction(1, 2)
    for depth, poly in gs.generators:
        real_poly = poly.substitute(assignment)
        conj_poly = real_poly.conj()
        result.generators.append((depth, (real_poly + conj_poly).scale(half)))
        result.generators.append((depth, (real_poly - conj_poly).scale(GaussRat(0, -half))))
    return result


# --- export -----------------------------------------------------------------


def _rational_pair(q: Fraction) -> List[int]:
    return [q.numerator, q.denominator]


def _var_tree(var: CoeffVar) -> dict:
    return {"kind": var.kind, "a": var.a, "b": var.b, "conjugated": var.conjugated}


def _tree_var(node: dict) -> CoeffVar:
    return CoeffVar(int(node["a"]), int(node["b"]), bool(node["conjugated"]), node["kind"])


def poly_tree(poly: SymPoly) -> List[dict]:
    return [{"coeff": {"re": _rational_pair(mono.coeff.re), "im": _rational_pair(mono.coeff.im)},
             "vars": [[_var_tree(var), exp] for var, exp in mono.vars]}
            for mono in poly.terms]


def tree_poly(nodes: List[dict]) -> SymPoly:
    result = SymPoly.zero()
    for node in nodes:
        coeff = GaussRat(Fraction(*node["coeff"]["re"]), Fraction(*node["coeff"]["im"]))
        term = SymPoly.constant(coeff)
        for var_node, exp in node["vars"]:
            term = term * SymPoly.variable(_tree_var(var_node)) ** int(exp)
        result = result + term
    return result


def export(gs: GeneratorSet, fmt: str = "text") -> str:
    """
    Serialize a generator set.

    Args:
        gs: Generator set
        fmt: "text" (header plus one `Ca[2p] = <poly>` line per generator) or
            "structured" (JSON with rationals as integer pairs)

    Returns:
        Deterministic document accepted by parse_export
    """
    if fmt == "structured":
        document = {
            "degree": gs.degree,
            "max_depth": gs.max_depth,
            "mode": gs.mode,
            "coordinates": [_var_tree(var) for var in gs.coordinates],
            "generators": [{"depth": depth, "terms": poly_tree(poly)} for depth, poly in gs.generators],
        }
        return json.dumps(document, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown export format {fmt!r}")
    lines = [
        TEXT_HEADER,
        f"degree: {gs.degree}",
        f"max_depth: {gs.max_depth}",
        f"mode: {gs.mode}",
        "coordinates: " + ", ".join(str(var) for var in gs.coordinates),
    ]
    lines.extend(f"Ca[{depth}] = {poly}" for depth, poly in gs.generators)
    return "\n".join(lines) + "\n"


_HEADER_LINE = pp.Word(pp.alphas + "_") + pp.Suppress(":") + pp.rest_of_line
_COORDINATES = pp.Optional(VAR_GRAMMAR + pp.ZeroOrMore(pp.Suppress(",") + VAR_GRAMMAR))
_GENERATOR_LINE = (pp.Suppress("Ca[") + pp.Word(pp.nums) + pp.Suppress("]") + pp.Suppress("=")
                   + pp.rest_of_line)


def parse_export(document: str) -> GeneratorSet:
    """
    Read back a document produced by export (either format).

    Raises:
        ValueError: on malformed documents
    """
    stripped = document.lstrip()
    if stripped.startswith("{"):
        try:
            tree = json.loads(stripped)
            return GeneratorSet(
                degree=int(tree["degree"]),
                max_depth=int(tree["max_depth"]),
                mode=tree.get("mode", "complex"),
                coordinates=[_tree_var(node) for node in tree["coordinates"]],
                generators=[(int(item["depth"]), tree_poly(item["terms"])) for item in tree["generators"]],
            )
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise ValueError(f"malformed structured export: {e}") from e

    header: Dict[str, str] = {}
    gens: List[Tuple[int, SymPoly]] = []
    for number, line in enumerate(document.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("Ca["):
                depth, body = _GENERATOR_LINE.parse_string(line, parse_all=True)
                gens.append((int(depth), parse_poly(body)))
            else:
                key, value = _HEADER_LINE.parse_string(line, parse_all=True)
                header[key] = value.strip()
        except pp.ParseBaseException as e:
            raise ValueError(f"line {number}: {e.msg}") from e
    try:
        coordinates = list(_COORDINATES.parse_string(header["coordinates"], parse_all=True))
    except pp.ParseBaseException as e:
        raise ValueError(f"invalid coordinates header: {e.msg}") from e
    except KeyError as e:
        raise ValueError(f"missing header field {e}") from e
    try:
        return GeneratorSet(degree=int(header["degree"]), max_depth=int(header["max_depth"]),
                            generators=gens, coordinates=coordinates,
                            mode=header.get("mode", "complex"))
    except KeyError as e:
        raise ValueError(f"missing header field {e}") from e
