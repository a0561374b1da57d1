"""
Compare two polynomials term by term.

Used by the self-test to report how far a printed formula is from the
computed correction: Jaccard similarity of the monomial sets plus the list
of monomials that differ.
"""

from typing import Dict, List, Set, Union

from algebra.sympoly import MonoKey, SymPoly, format_monomial


def calculate_jaccard_similarity(set1: Set[MonoKey], set2: Set[MonoKey]) -> float:
    """
    Jaccard similarity of two monomial sets.

    Returns:
        |intersection| / |union|, 1.0 for two empty sets
    """
    if not set1 and not set2:
        return 1.0  # both zero polynomials
    union = set1 | set2
    return len(set1 & set2) / len(union)


def poly_diff(expected: SymPoly, actual: SymPoly) -> Dict[str, Union[bool, float, List[str]]]:
    """
    Term-level difference of two polynomials.

    Args:
        expected: Reference polynomial (e.g. a printed formula)
        actual: Computed polynomial

    Returns:
        Dictionary with `equal`, `monomial_similarity` (Jaccard of the monomial
        sets, coefficients ignored), `missing` (expected terms absent from
        actual), `unexpected` (actual terms absent from expected) and
        `coefficient_mismatch` (shared monomials whose coefficients differ)
    """
    expected_terms = dict(expected.items())
    actual_terms = dict(actual.items())
    shared = set(expected_terms) & set(actual_terms)
    return {
        "equal": expected == actual,
        "monomial_similarity": round(calculate_jaccard_similarity(set(expected_terms), set(actual_terms)), 4),
        "missing": [format_monomial(key, expected_terms[key])
                    for key in sorted(set(expected_terms) - shared, key=str)],
        "unexpected": [format_monomial(key, actual_terms[key])
                       for key in sorted(set(actual_terms) - shared, key=str)],
        "coefficient_mismatch": [f"{format_monomial(key, expected_terms[key])} vs {actual_terms[key]}"
                                 for key in sorted(shared, key=str)
                                 if expected_terms[key] != actual_terms[key]],
    }
