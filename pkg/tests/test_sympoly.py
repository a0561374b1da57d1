from fractions import Fraction

import pytest

from algebra.gaussrat import I, GaussRat
from algebra.sympoly import (CoeffVar, SymPoly, p, parse_poly, parse_var, pbar, poly_add, poly_conj, poly_mul,
                             poly_substitute, poly_weight_grade, q)


def var(v):
    return SymPoly.variable(v)


QUADRATIC_CA2 = parse_poly("(6*i)*p[1,0]*~p[1,0] + (2/3*i)*p[-1,2]*~p[-1,2]")


def test_coeff_var_basics():
    assert p(1, 0).degree == 2
    assert p(-1, 2).weight == -3
    assert pbar(-1, 2).weight == 3
    assert p(1, 0).conj() == pbar(1, 0)
    assert pbar(1, 0).base() == p(1, 0)
    assert str(pbar(-1, 3)) == "~p[-1,3]"
    assert CoeffVar(1, 1, kind="re").conj() == CoeffVar(1, 1, kind="re")


@pytest.mark.parametrize("a, b, kind", [(-1, 2, "q"), (2, -1, "p"), (0, 0, "p"), (-2, 4, "p")])
def test_coeff_var_rejects_inadmissible(a, b, kind):
    with pytest.raises(ValueError):
        CoeffVar(a, b, kind=kind)


def test_addition():
    x = var(p(1, 0))
    assert poly_add(x, SymPoly.zero()) == x
    assert poly_add(x, x.scale(-1)).is_zero()
    half = (var(p(1, 0)) * var(pbar(1, 0))).scale(6) + (var(p(-1, 2)) * var(pbar(-1, 2))).scale(Fraction(2, 3))
    assert half.scale(I) == QUADRATIC_CA2


def test_multiplication():
    x = var(p(1, 0))
    assert poly_mul(x, SymPoly.constant(1)) == x
    modulus = poly_mul(x, var(pbar(1, 0)))
    assert len(modulus) == 1 and modulus.degree() == 2
    cube = var(p(0, 1)) ** 3 * var(p(-1, 2))
    assert cube == parse_poly("p[-1,2]*p[0,1]^3")
    assert cube.terms[0].degree == 4


def test_conjugation():
    assert poly_conj(var(p(1, 0))) == var(pbar(1, 0))
    modulus = var(p(1, 0)) * var(pbar(1, 0))
    assert poly_conj(modulus.scale(I)) == modulus.scale(-I)
    poly = parse_poly("(1/2-3*i)*p[2,0]*~p[-1,2]^2 + (5)*p[1,1] + (-i)")
    assert poly_conj(poly_conj(poly)) == poly


def test_substitute_numeric():
    values = {p(1, 0): GaussRat(1), p(-1, 2): GaussRat(0)}
    assert poly_substitute(QUADRATIC_CA2, values) == SymPoly.constant(GaussRat(0, 6))
    zeroed = {v: GaussRat() for v in QUADRATIC_CA2.variables()}
    assert poly_substitute(QUADRATIC_CA2, zeroed, relations=True).is_zero()


def test_substitute_two_paths_agree():
    relation = {p(1, 0): var(pbar(0, 1)).scale(Fraction(-1, 2)),
                pbar(1, 0): var(p(0, 1)).scale(Fraction(-1, 2))}
    reduced = poly_substitute(QUADRATIC_CA2, relation, relations=True)
    direct = poly_substitute(QUADRATIC_CA2, {p(1, 0): GaussRat(-1), p(-1, 2): GaussRat(0)})
    via_relation = poly_substitute(reduced, {p(0, 1): GaussRat(2), p(-1, 2): GaussRat(0)})
    assert direct == via_relation == SymPoly.constant(GaussRat(0, 6))


def test_substitute_inconsistent_conjugates():
    with pytest.raises(ValueError):
        poly_substitute(QUADRATIC_CA2, {p(1, 0): GaussRat(1), pbar(1, 0): GaussRat(2)})


def test_weight_grade():
    assert set(poly_weight_grade(var(p(1, 0)) * var(pbar(1, 0)))) == {0}
    assert set(poly_weight_grade(var(p(-1, 2)) * var(p(1, 0)) ** 3)) == {0}
    assert set(poly_weight_grade(var(p(1, 0)))) == {1}
    mixed = var(p(1, 0)) + var(pbar(1, 0)) * var(p(1, 0))
    parts = poly_weight_grade(mixed)
    assert set(parts) == {0, 1}
    assert parts[0] + parts[1] == mixed


def test_format_and_parse():
    text = str(QUADRATIC_CA2)
    assert text == "(2/3*i)*p[-1,2]*~p[-1,2] + (6*i)*p[1,0]*~p[1,0]"
    assert parse_poly(text) == QUADRATIC_CA2
    assert str(SymPoly.zero()) == "0"
    assert parse_poly("0").is_zero()
    assert parse_poly("p[1,1] - p[1,1]").is_zero()
    assert parse_poly("-q[0,1]") == var(q(0, 1)).scale(-1)
    assert parse_var("~p[-1,3]") == pbar(-1, 3)


@pytest.mark.parametrize("text", ["p[1,0", "p[2,-1]", "x[1,0]", "(1/0)*p[1,0]"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_poly(text)


def test_constant_queries():
    c = SymPoly.constant(GaussRat(0, 2))
    assert c.is_constant() and c.constant_value() == GaussRat(0, 2)
    assert SymPoly.zero().constant_value() == 0
    assert QUADRATIC_CA2.coefficient(((p(1, 0), 1), (pbar(1, 0), 1))) == GaussRat(0, 6)
