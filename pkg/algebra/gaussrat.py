"""
Exact Gaussian-rational scalars.

Every number handled by the correction engine lives in Q(i): the mould takes
values in Q or iQ, and the field coefficients are complex rationals. A
GaussRat stores its real and imaginary parts as canonical fractions, so
equality is decided componentwise and printing is unique.
"""

from fractions import Fraction
from typing import Union

import pyparsing as pp

# Canonical rational type (reduced, positive denominator).
BigRat = Fraction

Scalar = Union["GaussRat", Fraction, int]


class GaussRat:
    """Immutable complex rational re + im*i."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[Fraction, int, str] = 0, im: Union[Fraction, int, str] = 0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussRat":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def of(cls, value: Scalar) -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        return cls(value)

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    # --- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def is_imaginary(self) -> bool:
        return not self.re

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other: Scalar) -> "GaussRat":
        if isinstance(other, GaussRat):
            return GaussRat._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRat._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "GaussRat":
        return GaussRat._make(-self.re, -self.im)

    def __sub__(self, other: Scalar) -> "GaussRat":
        if isinstance(other, GaussRat):
            return GaussRat._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRat._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other: Scalar) -> "GaussRat":
        return (-self).__add__(other)

    def __mul__(self, other: Scalar) -> "GaussRat":
        if isinstance(other, GaussRat):
            a, b, c, d = self.re, self.im, other.re, other.im
            # real and purely imaginary operands dominate the workload
            if not b:
                if not d:
                    return GaussRat._make(a * c, d)
                return GaussRat._make(a * c, a * d)
            if not a:
                if not d:
                    return GaussRat._make(a, b * c)
                return GaussRat._make(-b * d, b * c)
            return GaussRat._make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussRat._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat._make(self.re / norm, -self.im / norm)

    def __truediv__(self, other: Scalar) -> "GaussRat":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("GaussRat division by zero")
            return GaussRat._make(self.re / other, self.im / other)
        if isinstance(other, GaussRat):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other: Scalar) -> "GaussRat":
        return GaussRat.of(other) * self.inverse()

    def __pow__(self, exponent: int) -> "GaussRat":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> "GaussRat":
        return GaussRat._make(self.re, -self.im)

    # --- comparison and hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussRat({format_gaussrat(self)})"

    def __str__(self) -> str:
        return format_gaussrat(self)


ZERO = GaussRat._make(Fraction(0), Fraction(0))
ONE = GaussRat._make(Fraction(1), Fraction(0))
I = GaussRat._make(Fraction(0), Fraction(1))


def gr_add(a: GaussRat, b: GaussRat) -> GaussRat:
    """
    Exact sum of two Gaussian rationals.

    Args:
        a: Left summand
        b: Right summand

    Returns:
        a + b with both parts in lowest terms
    """
    return a + b


def gr_mul(a: GaussRat, b: GaussRat) -> GaussRat:
    """
    Exact product of two Gaussian rationals.

    Args:
        a: Left factor
        b: Right factor

    Returns:
        (ar*br - ai*bi) + (ar*bi + ai*br)*i
    """
    return a * b


def gr_inv(a: GaussRat) -> GaussRat:
    """
    Multiplicative inverse.

    Raises:
        ZeroDivisionError: when a is zero
    """
    return a.inverse()


def gr_conj(a: GaussRat) -> GaussRat:
    """Complex conjugate: negates the imaginary part."""
    return a.conj()


def gr_imag_unit(weight: Union[int, Fraction]) -> GaussRat:
    """Return i*weight, the eigenvalue combination attached to an integer weight."""
    return GaussRat._make(Fraction(0), Fraction(weight))


# --- text form --------------------------------------------------------------


def _format_rational(q: Fraction) -> str:
    return str(q)


def format_gaussrat(z: GaussRat) -> str:
    """
    Render z as `a/b`, `c/d*i` or `a/b+c/d*i` (unit imaginary parts print as `i`).

    Signs sit on the numerators: `1/2-3/4*i`, `-i`.
    """
    if not z.im:
        return _format_rational(z.re)
    if z.im == 1:
        imag = "i"
    elif z.im == -1:
        imag = "-i"
    else:
        imag = f"{_format_rational(z.im)}*i"
    if not z.re:
        return imag
    joiner = "" if imag.startswith("-") else "+"
    return f"{_format_rational(z.re)}{joiner}{imag}"


_NUMBER = pp.Word(pp.nums) + pp.Optional("/" + pp.Word(pp.nums))
_IMAG_TAIL = pp.Optional(_NUMBER + "*") + pp.Keyword("i")
_IMAG_ONLY = pp.Combine(pp.Optional("-") + _IMAG_TAIL)("imag")
_REAL = pp.Combine(pp.Optional("-") + _NUMBER)("real")
_IMAG_SIGNED = pp.Combine(pp.one_of("+ -") + pp.Optional("-") + _IMAG_TAIL)("imag")

GAUSSRAT_GRAMMAR = _IMAG_ONLY | (_REAL + pp.Optional(_IMAG_SIGNED))


def _imag_value(text: str) -> Fraction:
    body = text.replace("+-", "-").lstrip("+")
    body = body[:-1].rstrip("*")
    if body in ("", "+"):
        return Fraction(1)
    if body == "-":
        return Fraction(-1)
    return Fraction(body)


def _gaussrat_action(tokens) -> GaussRat:
    try:
        re = Fraction(tokens["real"]) if "real" in tokens else Fraction(0)
        im = _imag_value(tokens["imag"]) if "imag" in tokens else Fraction(0)
    except ZeroDivisionError as e:
        raise pp.ParseFatalException("zero denominator") from e
    return GaussRat._make(re, im)


GAUSSRAT_GRAMMAR.set_parse_action(_gaussrat_action)


def parse_gaussrat(text: str) -> GaussRat:
    """
    Parse the text form produced by format_gaussrat (integers allowed).

    Raises:
        ValueError: on malformed input
    """
    try:
        return GAUSSRAT_GRAMMAR.parse_string(text.strip(), parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise ValueError(f"invalid Gaussian rational {text!r}: {e.msg}") from e
