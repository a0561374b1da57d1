"""
Depth-graded correction terms.

For a prepared field X = X_lin + sum of B_n, the correction is
Carr(X) = sum over words of Carr^n B_n. Regrouped by depth 2p and projected
onto nested brackets, the depth-2p part reads

    Carr_2p(X) = (xy)^p (Ca_2p x d/dx + conj(Ca_2p) y d/dy)
    Ca_2p = sum over lengths i of (1/i) * sum over resonant words w of length i
            and depth 2p of Carr^w P(w)

with P(w) the x d/dx coefficient of the left-nested bracket. Two independent
evaluations are provided: the bracket/projection assembly and a
normalization-free oracle applying the composed operators to the coordinate x.
The Fundamental Lemma gives the closed form for components of degrees r..2r-1.
"""

import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.gaussrat import GaussRat
from algebra.sympoly import CoeffVar, SymPoly
from generation.alphabet import Letter, Word, enumerate_resonant_words, signature_of, weight_key
from generation.constraints import FieldSpec, coefficient_values, validate_assignment
from generation.mould import carr_value
from generation.operators import BracketCoeffs, HomOp, bracket_coeffs, compose_apply, operators_for_spec
from utils.configure import get_correction_config, get_thread_count

logger = logging.getLogger(__name__)

PROJECTION_NORMALIZATION = get_correction_config("PROJECTION_NORMALIZATION") or "length"
PRUNE_ZERO_WEIGHT_LETTERS = get_correction_config("PRUNE_ZERO_WEIGHT_LETTERS")
if PRUNE_ZERO_WEIGHT_LETTERS is None:
    PRUNE_ZERO_WEIGHT_LETTERS = True


@dataclass
class CorrectionTerm:
    """
    Depth-2p correction of a field.

    Attributes:
        depth: Even depth 2p
        parts: Length i -> Ca_2p,i (sum of Carr^w P(w), unnormalized)
        total: Ca_2p, the normalized sum of the parts
        by_signature: Component-degree multiset -> normalized contribution
        q_total: Coefficient of the y d/dy side
    """
    depth: int
    parts: Dict[int, SymPoly] = field(default_factory=dict)
    total: SymPoly = field(default_factory=SymPoly.zero)
    by_signature: Dict[Tuple[int, ...], SymPoly] = field(default_factory=dict)
    q_total: SymPoly = field(default_factory=SymPoly.zero)

    def part(self, length: int) -> SymPoly:
        return self.parts.get(length, SymPoly.zero())

    def signature(self, *degrees: int) -> SymPoly:
        return self.by_signature.get(tuple(sorted(degrees, reverse=True)), SymPoly.zero())

    def value(self) -> GaussRat:
        """Numeric value of a term computed from a numeric spec."""
        return self.total.constant_value()


def projection_factor(length: int, normalization: Optional[str] = None) -> Fraction:
    """
    Per-length factor of the bracket projection.

    Args:
        length: Word length i >= 1
        normalization: "length" (1/i) or "factorial" (1/i!); defaults to configuration

    Returns:
        The rational factor
    """
    normalization = normalization or PROJECTION_NORMALIZATION
    if normalization == "length":
        return Fraction(1, length)
    if normalization == "factorial":
        return Fraction(1, factorial(length))
    raise ValueError(f"unknown projection normalization {normalization!r}")


def _assemble_chunk(words: Sequence[Word], ops: Dict[Letter, HomOp]):
    """Unnormalized P- and Q-sums of one chunk, keyed by (length, signature)."""
    cache: Dict[Word, BracketCoeffs] = {}
    p_sums: Dict[Tuple[int, Tuple[int, ...]], SymPoly] = defaultdict(SymPoly.zero)
    q_sums: Dict[int, SymPoly] = defaultdict(SymPoly.zero)
    for word in words:
        mould = carr_value(weight_key(word))
        if not mould:
            continue
        coeffs = bracket_coeffs(word, ops, cache)
        key = (len(word), signature_of(word))
        p_sums[key] = p_sums[key] + coeffs.P.scale(mould)
        q_sums[len(word)] = q_sums[len(word)] + coeffs.Q.scale(mould)
    return dict(p_sums), dict(q_sums)


def _chunks_by_first_letter(words: Sequence[Word]) -> List[Tuple[Letter, List[Word]]]:
    chunks: Dict[Letter, List[Word]] = defaultdict(list)
    for word in words:
        chunks[word[0]].append(word)
    return sorted(chunks.items())


def correction_term(spec: FieldSpec, depth: int, normalization: Optional[str] = None,
                    threads: Optional[int] = None) -> CorrectionTerm:
    """
    Assemble Ca_2p by the bracket/projection route.

    Args:
        spec: Field specification (symbolic, numeric or mixed)
        depth: Depth 2p; odd depths are accepted and give zero
        normalization: Projection factor override
        threads: Worker count override (default: configured thread count)

    Returns:
        CorrectionTerm over the spec's independent coordinates
    """
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    if not spec.normalized:
        spec = validate_assignment(spec)
    term = CorrectionTerm(depth=depth)
    degrees = [r for r in spec.degrees if r - 1 <= depth]
    if not degrees:
        return term
    ops = operators_for_spec(spec)
    words = enumerate_resonant_words(degrees, depth, prune=PRUNE_ZERO_WEIGHT_LETTERS)
    chunks = _chunks_by_first_letter(words)
    workers = threads if threads is not None else get_thread_count()
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda chunk: _assemble_chunk(chunk[1], ops), chunks))
    else:
        results = [_assemble_chunk(chunk_words, ops) for _, chunk_words in chunks]

    # fold in first-letter order
    p_sums: Dict[Tuple[int, Tuple[int, ...]], SymPoly] = {}
    q_sums: Dict[int, SymPoly] = {}
    for chunk_p, chunk_q in results:
        for key, poly in chunk_p.items():
            p_sums[key] = p_sums.get(key, SymPoly.zero()) + poly
        for length, poly in chunk_q.items():
            q_sums[length] = q_sums.get(length, SymPoly.zero()) + poly

    for (length, signature), poly in sorted(p_sums.items()):
        factor = projection_factor(length, normalization)
        term.parts[length] = term.parts.get(length, SymPoly.zero()) + poly
        normalized = poly.scale(factor)
        term.by_signature[signature] = term.by_signature.get(signature, SymPoly.zero()) + normalized
        term.total = term.total + normalized
    for length, poly in sorted(q_sums.items()):
        term.q_total = term.q_total + poly.scale(projection_factor(length, normalization))
    term.parts = {length: poly for length, poly in sorted(term.parts.items()) if poly}
    term.by_signature = {sig: poly for sig, poly in term.by_signature.items() if poly}
    logger.info("depth %d: %d resonant words, %d terms in Ca", depth, len(words), len(term.total))
    return term


def correction_oracle(spec: FieldSpec, depth: int) -> SymPoly:
    """
    Ca_2p without brackets: sum of Carr^w * B_w(x) over resonant words of the depth.

    Each B_w = B_n1 o .. o B_nr maps x to a multiple of x^(p+1) y^p; the
    multiples summed with the mould weights give Ca_2p.
    """
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    if not spec.normalized:
        spec = validate_assignment(spec)
    degrees = [r for r in spec.degrees if r - 1 <= depth]
    if not degrees:
        return SymPoly.zero()
    ops = operators_for_spec(spec)
    target = (depth // 2 + 1, depth // 2)
    cache: Dict[Word, Tuple[SymPoly, Tuple[int, int]]] = {}
    total = SymPoly.zero()
    for word in enumerate_resonant_words(degrees, depth):
        mould = carr_value(weight_key(word))
        if not mould:
            continue
        scalar, exponents = compose_apply(word, ops, (1, 0), cache)
        if scalar and exponents != target:
            raise ArithmeticError(f"composition of {word} left x^{exponents[0]} y^{exponents[1]}")
        total = total + scalar.scale(mould)
    return total


def fundamental_lemma_value(r: int, spec: FieldSpec) -> SymPoly:
    """
    Closed form of Ca_2(r-1) for Hamiltonian components of degrees r..2r-1.

        p[r-1,r-1] + i (sum over k = floor((r+1)/2)+1 .. r of r(r+1)/(r-k+1)^2 |p[k-1,r-k]|^2
                        + r/(r+1) |p[-1,r]|^2)

    The central term is present only when X_{2r-1} is a component.
    """
    if r < 2:
        raise ValueError(f"the lemma needs r >= 2, got {r}")
    outside = [d for d in spec.degrees if not r <= d <= 2 * r - 1]
    if outside:
        raise ValueError(f"components {outside} fall outside {r}..{2 * r - 1}")
    if not spec.normalized:
        spec = validate_assignment(spec)
    if r not in spec.components:
        squares = SymPoly.zero()
    else:
        values = coefficient_values(spec)

        def modulus(var: CoeffVar) -> SymPoly:
            return values[var] * values[var.conj()]

        squares = modulus(CoeffVar(-1, r)).scale(Fraction(r, r + 1))
        for k in range((r + 1) // 2 + 1, r + 1):
            squares = squares + modulus(CoeffVar(k - 1, r - k)).scale(Fraction(r * (r + 1), (r - k + 1) ** 2))
    result = squares.scale(GaussRat(0, 1))
    if 2 * r - 1 in spec.components:
        result = result + coefficient_values(spec)[CoeffVar(r - 1, r - 1)]
    return result


def odd_depth_term(spec: FieldSpec, depth: int) -> SymPoly:
    """Assembled correction at an odd depth; identically zero for real fields."""
    if depth % 2 == 0:
        raise ValueError(f"expected an odd depth, got {depth}")
    return correction_term(spec, depth).total


if __name__ == '__main__':
    from generation.constraints import symbolic_spec

    print("=" * 60)
    print("Correction terms of the quadratic and cubic Hamiltonian fields")
    print("=" * 60)
    for degrees, depth in (((2,), 2), ((2, 3), 2), ((2, 3), 4)):
        spec = symbolic_spec(degrees)
        term = correction_term(spec, depth)
        print(f"components {list(degrees)}, depth {depth}:")
        print(f"  Ca = {term.total}")
        for signature, poly in term.by_signature.items():
            print(f"  {signature}: {poly}")
