from fractions import Fraction

import pytest

from algebra.gaussrat import (I, ONE, ZERO, GaussRat, format_gaussrat, gr_add, gr_conj, gr_imag_unit, gr_inv,
                              gr_mul, parse_gaussrat)


def test_addition():
    half = GaussRat(Fraction(1, 2))
    assert gr_add(half, half) == ONE
    assert gr_add(I, -I) == ZERO
    assert gr_add(GaussRat(0, Fraction(1, 3)), GaussRat(0, Fraction(-1, 27))) == GaussRat(0, Fraction(8, 27))


def test_multiplication_and_inverse():
    assert gr_mul(I, I) == -1
    assert gr_inv(I) == -I
    assert gr_inv(ONE) == ONE
    assert gr_inv(GaussRat(0, 2)) == GaussRat(0, Fraction(-1, 2))
    # -1/(3i) is the length-2 value on weights (3, -3)
    assert -gr_inv(gr_imag_unit(3)) == GaussRat(0, Fraction(1, 3))
    assert gr_inv(I * (I + I)) == Fraction(-1, 2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        gr_inv(ZERO)
    with pytest.raises(ZeroDivisionError):
        ONE / 0


def test_conjugation():
    z = GaussRat(Fraction(3, 5), Fraction(-7, 2))
    assert gr_conj(GaussRat(1, 1)) == GaussRat(1, -1)
    assert gr_conj(gr_conj(z)) == z
    w = GaussRat(Fraction(2, 3), Fraction(1, 5))
    assert (w * w.conj()).is_real()


def test_powers():
    assert I ** 4 == 1
    assert GaussRat(1, 1) ** 2 == GaussRat(0, 2)
    assert GaussRat(0, 2) ** -1 == GaussRat(0, Fraction(-1, 2))


def test_predicates_and_hash():
    assert ZERO.is_zero() and not ZERO
    assert GaussRat(0, 3).is_imaginary() and not GaussRat(0, 3).is_real()
    assert GaussRat(5) == 5 and GaussRat(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(GaussRat(2)) == hash(Fraction(2))
    assert len({GaussRat(1, 2), GaussRat(Fraction(2, 2), 2)}) == 1


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.re = Fraction(2)


def test_format():
    assert format_gaussrat(I) == "i"
    assert format_gaussrat(-I) == "-i"
    assert format_gaussrat(GaussRat(0, Fraction(1, 3))) == "1/3*i"
    assert format_gaussrat(GaussRat(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4*i"
    assert format_gaussrat(GaussRat(1, 1)) == "1+i"
    assert format_gaussrat(ZERO) == "0"


@pytest.mark.parametrize("text, expected", [
    ("i", GaussRat(0, 1)),
    ("-i", GaussRat(0, -1)),
    ("-1/54*i", GaussRat(0, Fraction(-1, 54))),
    ("1+1*i", GaussRat(1, 1)),
    ("1/2-3/4*i", GaussRat(Fraction(1, 2), Fraction(-3, 4))),
    ("7", GaussRat(7)),
    ("-2/6", GaussRat(Fraction(-1, 3))),
])
def test_parse(text, expected):
    assert parse_gaussrat(text) == expected


@pytest.mark.parametrize("text", ["", "1/0", "i2", "1 + + i", "abc"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_gaussrat(text)
