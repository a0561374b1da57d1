"""
Isochronicity decision by correction terms.

A real analytic center is isochronous exactly when it is linearizable, and
a field is linearizable exactly when every correction term vanishes. For a
numeric field the terms Ca_2, Ca_4, .. are evaluated in turn; the first
nonzero one witnesses nonisochronicity. Odd depths never contribute.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from algebra.gaussrat import GaussRat
from generation.constraints import FieldSpec, validate_assignment
from generation.correction import CorrectionTerm, correction_term

logger = logging.getLogger(__name__)

NONISOCHRONOUS = "nonisochronous"
UNDETERMINED = "undetermined"
LINEARIZABLE_TRIVIALLY = "linearizable_trivially"


@dataclass
class Verdict:
    """
    Outcome of check_isochronous.

    Attributes:
        kind: NONISOCHRONOUS, UNDETERMINED or LINEARIZABLE_TRIVIALLY
        depth: Witness depth (nonisochronous) or the exhausted bound (undetermined)
        witness: Nonzero Ca value at the witness depth
        table: Evaluated (depth, Ca) pairs in increasing depth
    """
    kind: str
    depth: Optional[int] = None
    witness: Optional[GaussRat] = None
    table: List[Tuple[int, GaussRat]] = field(default_factory=list)

    @property
    def is_nonisochronous(self) -> bool:
        return self.kind == NONISOCHRONOUS

    def describe(self) -> str:
        if self.kind == NONISOCHRONOUS:
            return f"nonisochronous at depth {self.depth} (Ca_{self.depth} = {self.witness})"
        if self.kind == UNDETERMINED:
            return f"undetermined up to depth {self.depth}"
        return "linearizable trivially (zero perturbation)"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "depth": self.depth,
            "witness": None if self.witness is None else str(self.witness),
            "table": [{"depth": depth, "value": str(value)} for depth, value in self.table],
        }


def check_isochronous(spec: FieldSpec, max_depth: int, check_odd: bool = False) -> Verdict:
    """
    Search for a nonzero correction term up to max_depth.

    Args:
        spec: Numeric field specification
        max_depth: Largest depth to evaluate, at least 2
        check_odd: Also evaluate odd depths and fail if any is nonzero

    Returns:
        Verdict with the table of evaluated terms

    Raises:
        ValueError: for symbolic specs or a bound below 2
    """
    if max_depth < 2:
        raise ValueError(f"max depth must be at least 2, got {max_depth}")
    if not spec.normalized:
        spec = validate_assignment(spec)
    if not spec.is_numeric():
        raise ValueError("isochronicity check needs every coefficient assigned (symbolic component found)")
    if spec.is_trivial():
        return Verdict(LINEARIZABLE_TRIVIALLY)
    if not spec.hamiltonian:
        logger.warning("field is not Hamiltonian: the origin may be a focus rather than a center")

    verdict = Verdict(UNDETERMINED, depth=max_depth)
    for depth in range(1 if check_odd else 2, max_depth + 1, 1 if check_odd else 2):
        value = correction_term(spec, depth).value()
        if depth % 2:
            if value:
                raise ArithmeticError(f"odd depth {depth} produced a nonzero correction {value}")
            continue
        verdict.table.append((depth, value))
        logger.info("Ca_%d = %s", depth, value)
        if value:
            verdict.kind = NONISOCHRONOUS
            verdict.depth = depth
            verdict.witness = value
            break
    return verdict


def coefficient_field_check(term: CorrectionTerm) -> bool:
    """True when every length-i part has coefficients in Q for odd i and in iQ for even i."""
    for length, poly in term.parts.items():
        for _, coeff in poly.items():
            if not (coeff.is_real() if length % 2 else coeff.is_imaginary()):
                return False
    return True
