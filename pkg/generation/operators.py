"""
Homogeneous differential operators and nested bracket coefficients.

Letter n = (n1, n2) of a component carries the operator

    B_n = x^n1 y^n2 (p_n x d/dx + q_n y d/dy)

so that B_n(x^l y^k) = (l p_n + k q_n) x^(n1+l) y^(n2+k). The edge letters
(-1, r) and (r, -1) are the operators p y^r d/dx and q x^r d/dy and fit the
same shape with one coefficient set to zero.

Nested brackets are computed by the left-nested recursion
[[..[B_n1, B_n2], ..], B_nr]; composition (rightmost operator first) is the
independent path used by the correction oracle.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple

from algebra.gaussrat import GaussRat
from algebra.sympoly import CoeffVar, SymPoly
from generation.alphabet import Letter, UnknownLetterError, alphabet_of_component, word_total
from generation.constraints import FieldSpec, coefficient_values

logger = logging.getLogger(__name__)

MODES = ("symbolic", "assigned", "raw")


@dataclass(frozen=True)
class HomOp:
    letter: Letter
    p: SymPoly
    q: SymPoly


@dataclass(frozen=True)
class BracketCoeffs:
    """Coefficients of x^|n|1 y^|n|2 (P x d/dx + Q y d/dy) for a nested bracket."""
    P: SymPoly
    Q: SymPoly
    total: Tuple[int, int]


def make_operators(r: int, mode: str = "symbolic",
                   values: Optional[Mapping[CoeffVar, SymPoly]] = None) -> Dict[Letter, HomOp]:
    """
    Build B_n for every letter of the degree-r component.

    Args:
        r: Component degree, at least 2
        mode: "symbolic" (p[a,b] and ~p[b,a] indeterminates), "raw" (free
            q[a,b] indeterminates) or "assigned" (values taken from `values`)
        values: For "assigned": polynomial for every p[a,b] and ~p[a,b]

    Returns:
        Dictionary mapping letters to operators
    """
    if mode not in MODES:
        raise ValueError(f"unknown operator mode {mode!r}, expected one of {MODES}")
    if mode == "assigned" and values is None:
        raise ValueError("assigned mode needs coefficient values")
    zero = SymPoly.zero()
    ops: Dict[Letter, HomOp] = {}
    for letter in alphabet_of_component(r):
        a, b = letter
        if b == -1:
            p = zero
        elif mode == "assigned":
            p = values[CoeffVar(a, b)]
        else:
            p = SymPoly.variable(CoeffVar(a, b))
        if a == -1:
            q = zero
        elif mode == "raw":
            q = SymPoly.variable(CoeffVar(a, b, kind="q"))
        elif mode == "assigned":
            q = values[CoeffVar(b, a, conjugated=True)]
        else:
            q = SymPoly.variable(CoeffVar(b, a, conjugated=True))
        ops[letter] = HomOp(letter, p, q)
    return ops


def operators_for_spec(spec: FieldSpec) -> Dict[Letter, HomOp]:
    """Operators of every component, with coefficients over independent coordinates."""
    values = coefficient_values(spec)
    ops: Dict[Letter, HomOp] = {}
    for r in spec.degrees:
        ops.update(make_operators(r, "assigned", values))
    return ops


def _lookup(ops: Mapping[Letter, HomOp], letter: Letter) -> HomOp:
    try:
        return ops[letter]
    except KeyError:
        raise UnknownLetterError(f"no operator for letter {letter}") from None


def bracket_step(state: BracketCoeffs, op: HomOp) -> BracketCoeffs:
    """Coefficients of [A, B_m] given those of A."""
    P, Q = state.P, state.Q
    t1, t2 = state.total
    m1, m2 = op.letter
    pm, qm = op.p, op.q
    P_new = (P * pm).scale(m1 - t1) + (Q * pm).scale(m2) - (P * qm).scale(t2)
    Q_new = (Q * qm).scale(m2 - t2) + (P * qm).scale(m1) - (Q * pm).scale(t1)
    return BracketCoeffs(P_new, Q_new, (t1 + m1, t2 + m2))


def bracket_coeffs(word: Sequence[Letter], ops: Mapping[Letter, HomOp],
                   cache: Optional[Dict[Tuple[Letter, ...], BracketCoeffs]] = None) -> BracketCoeffs:
    """
    Coefficients of the left-nested bracket [[..[B_n1, B_n2], ..], B_nr].

    Args:
        word: Nonempty word
        ops: Operators indexed by letter
        cache: Optional prefix cache shared between calls

    Returns:
        BracketCoeffs with total letter (|n|1, |n|2)
    """
    if not word:
        raise ValueError("bracket of the empty word is undefined")
    word = tuple(word)
    if cache is not None and word in cache:
        return cache[word]
    if len(word) == 1:
        op = _lookup(ops, word[0])
        result = BracketCoeffs(op.p, op.q, (word[0].n1, word[0].n2))
    else:
        result = bracket_step(bracket_coeffs(word[:-1], ops, cache), _lookup(ops, word[-1]))
    if cache is not None:
        cache[word] = result
    return result


def bracket_coeffs_prepend(word: Sequence[Letter], ops: Mapping[Letter, HomOp]) -> BracketCoeffs:
    """
    Coefficients of [B_n1, [B_n2, .., B_nr]] (first letter outermost).

    Equals (-1)^(r+1) times bracket_coeffs of the reversed word.
    """
    if not word:
        raise ValueError("bracket of the empty word is undefined")
    last = _lookup(ops, word[-1])
    P, Q = last.p, last.q
    m1, m2 = word[-1]
    for letter in reversed(word[:-1]):
        op = _lookup(ops, letter)
        n1, n2 = letter
        # two-letter formula with B_n on the left and A on the right
        P, Q = ((op.p * P).scale(m1 - n1) + (op.q * P).scale(m2) - (op.p * Q).scale(n2),
                (op.q * Q).scale(m2 - n2) + (op.p * Q).scale(m1) - (op.q * P).scale(n1))
        m1, m2 = m1 + n1, m2 + n2
    return BracketCoeffs(P, Q, (m1, m2))


def op_apply(op: HomOp, exponents: Tuple[int, int]) -> Tuple[SymPoly, Tuple[int, int]]:
    """Apply B_n to x^l y^k: scalar l*p + k*q, exponents shifted by the letter."""
    l, k = exponents
    scalar = op.p.scale(l) + op.q.scale(k)
    return scalar, (op.letter.n1 + l, op.letter.n2 + k)


def compose_apply(word: Sequence[Letter], ops: Mapping[Letter, HomOp],
                  seed: Tuple[int, int] = (1, 0),
                  cache: Optional[Dict[Tuple[Letter, ...], Tuple[SymPoly, Tuple[int, int]]]] = None
                  ) -> Tuple[SymPoly, Tuple[int, int]]:
    """
    Apply B_n1 o .. o B_nr to the seed monomial x^l y^k (B_nr acts first).

    Args:
        word: Word to compose, possibly empty
        ops: Operators indexed by letter
        seed: Exponents (l, k) of the seed monomial
        cache: Optional suffix cache for a fixed seed

    Returns:
        Tuple of (scalar, exponents) of the resulting monomial
    """
    word = tuple(word)
    if not word:
        return SymPoly.constant(GaussRat(1)), seed
    if cache is not None and word in cache:
        return cache[word]
    scalar, exponents = compose_apply(word[1:], ops, seed, cache)
    if scalar:
        factor, exponents = op_apply(_lookup(ops, word[0]), exponents)
        scalar = scalar * factor
    else:
        exponents = (exponents[0] + word[0].n1, exponents[1] + word[0].n2)
    result = (scalar, exponents)
    if cache is not None:
        cache[word] = result
    return result


def check_total(word: Sequence[Letter], coeffs: BracketCoeffs) -> bool:
    return coeffs.total == word_total(word)
