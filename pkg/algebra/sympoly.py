"""
Sparse multivariate polynomials over Gaussian rationals.

The indeterminates are the field coefficients p[a,b] (and q[a,b] before the
reality relations are applied) together with their formal conjugates
~p[a,b]. Conjugation is syntactic: it toggles every variable's flag and
conjugates every scalar, so |p|^2 is always stored expanded as p*~p.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple, Union

import pyparsing as pp

from algebra.gaussrat import GAUSSRAT_GRAMMAR, ONE, GaussRat, Scalar, format_gaussrat

# Variable kinds: complex coefficients p, q and the real/imaginary parts used by real exports.
KINDS = ("p", "q", "re", "im")
_KIND_RANK = {kind: rank for rank, kind in enumerate(KINDS)}


class CoeffVar:
    """
    Coefficient indeterminate attached to the letter (a, b).

    The implied component degree is r = a + b + 1. Variables sort by
    (r, a, kind, conjugated).
    """

    __slots__ = ("a", "b", "conjugated", "kind", "_key", "_hash")

    def __init__(self, a: int, b: int, conjugated: bool = False, kind: str = "p"):
        if kind not in _KIND_RANK:
            raise ValueError(f"unknown coefficient kind {kind!r}")
        if a < -1 or b < -1 or a + b < 1:
            raise ValueError(f"({a},{b}) is not an admissible letter")
        if kind == "q" and a == -1:
            raise ValueError(f"q[{a},{b}] does not exist (edge letter carries p only)")
        if kind != "q" and b == -1:
            raise ValueError(f"{kind}[{a},{b}] does not exist (edge letter carries q only)")
        if kind in ("re", "im"):
            conjugated = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "conjugated", bool(conjugated))
        object.__setattr__(self, "kind", kind)
        key = (a + b + 1, a, _KIND_RANK[kind], bool(conjugated))
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, name, value):
        raise AttributeError("CoeffVar is immutable")

    @property
    def degree(self) -> int:
        return self.a + self.b + 1

    @property
    def sort_key(self) -> Tuple[int, int, int, bool]:
        return self._key

    @property
    def is_real_part(self) -> bool:
        return self.kind in ("re", "im")

    @property
    def weight(self) -> int:
        if self.is_real_part:
            return 0
        w = self.a - self.b
        return -w if self.conjugated else w

    def conj(self) -> "CoeffVar":
        if self.is_real_part:
            return self
        return CoeffVar(self.a, self.b, not self.conjugated, self.kind)

    def base(self) -> "CoeffVar":
        """The unconjugated variable."""
        return self.conj() if self.conjugated else self

    def __eq__(self, other) -> bool:
        return isinstance(other, CoeffVar) and self._key == other._key and self.b == other.b

    def __lt__(self, other: "CoeffVar") -> bool:
        return self._key < other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"CoeffVar({self})"

    def __str__(self) -> str:
        return f"{'~' if self.conjugated else ''}{self.kind}[{self.a},{self.b}]"


def p(a: int, b: int) -> CoeffVar:
    return CoeffVar(a, b)


def pbar(a: int, b: int) -> CoeffVar:
    return CoeffVar(a, b, conjugated=True)


def q(a: int, b: int) -> CoeffVar:
    return CoeffVar(a, b, kind="q")


# A monomial key is a tuple of (variable, exponent) pairs sorted by variable.
MonoKey = Tuple[Tuple[CoeffVar, int], ...]


class Monomial(NamedTuple):
    vars: MonoKey
    coeff: GaussRat

    @property
    def degree(self) -> int:
        return sum(exp for _, exp in self.vars)

    @property
    def weight(self) -> int:
        return sum(var.weight * exp for var, exp in self.vars)


def _mono_mul(left: MonoKey, right: MonoKey) -> MonoKey:
    if not left:
        return right
    if not right:
        return left
    merged: Dict[CoeffVar, int] = dict(left)
    for var, exp in right:
        merged[var] = merged.get(var, 0) + exp
    return tuple(sorted(merged.items(), key=lambda item: item[0].sort_key))


def _mono_order(key: MonoKey):
    return (sum(exp for _, exp in key), tuple((var.sort_key, exp) for var, exp in key))


def _mono_weight(key: MonoKey) -> int:
    return sum(var.weight * exp for var, exp in key)


class SymPoly:
    """
    Immutable sparse polynomial; zero coefficients are never stored.

    Build values with SymPoly.constant, SymPoly.variable and arithmetic.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[MonoKey, GaussRat]] = None):
        self._terms: Dict[MonoKey, GaussRat] = (
            {key: c for key, c in terms.items() if c} if terms else {})

    @classmethod
    def _wrap(cls, terms: Dict[MonoKey, GaussRat]) -> "SymPoly":
        obj = object.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls) -> "SymPoly":
        return cls._wrap({})

    @classmethod
    def constant(cls, value: Scalar) -> "SymPoly":
        value = GaussRat.of(value)
        return cls._wrap({(): value} if value else {})

    @classmethod
    def variable(cls, var: CoeffVar, coeff: Scalar = ONE) -> "SymPoly":
        coeff = GaussRat.of(coeff)
        return cls._wrap({((var, 1),): coeff} if coeff else {})

    @classmethod
    def from_monomials(cls, monomials: Iterable[Monomial]) -> "SymPoly":
        terms: Dict[MonoKey, GaussRat] = {}
        for mono in monomials:
            key = tuple(sorted(mono.vars, key=lambda item: item[0].sort_key))
            terms[key] = terms.get(key, GaussRat()) + mono.coeff
        return cls(terms)

    # --- inspection -------------------------------------------------------

    @property
    def terms(self) -> List[Monomial]:
        return [Monomial(key, self._terms[key]) for key in sorted(self._terms, key=_mono_order)]

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> GaussRat:
        """Value of a constant polynomial; raises ValueError otherwise."""
        if not self.is_constant():
            raise ValueError(f"polynomial is not constant: {self}")
        return self._terms.get((), GaussRat())

    def coefficient(self, key: MonoKey) -> GaussRat:
        return self._terms.get(key, GaussRat())

    def degree(self) -> int:
        return max((sum(exp for _, exp in key) for key in self._terms), default=0)

    def variables(self) -> List[CoeffVar]:
        found = {var for key in self._terms for var, _ in key}
        return sorted(found, key=lambda var: var.sort_key)

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "SymPoly":
        if not isinstance(other, SymPoly):
            if isinstance(other, (GaussRat, int, Fraction)):
                other = SymPoly.constant(other)
            else:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        terms = dict(self._terms)
        for key, c in other._terms.items():
            total = terms.get(key)
            if total is None:
                terms[key] = c
            else:
                total = total + c
                if total:
                    terms[key] = total
                else:
                    del terms[key]
        return SymPoly._wrap(terms)

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        return SymPoly._wrap({key: -c for key, c in self._terms.items()})

    def __sub__(self, other) -> "SymPoly":
        if isinstance(other, (GaussRat, int, Fraction)):
            other = SymPoly.constant(other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SymPoly":
        return (-self) + other

    def scale(self, factor: Scalar) -> "SymPoly":
        if not factor:
            return SymPoly.zero()
        if factor == 1:
            return self
        return SymPoly._wrap({key: c * factor for key, c in self._terms.items()})

    def __mul__(self, other) -> "SymPoly":
        if isinstance(other, (GaussRat, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return SymPoly.zero()
        if len(other._terms) > len(self._terms):
            left, right = other._terms, self._terms
        else:
            left, right = self._terms, other._terms
        terms: Dict[MonoKey, GaussRat] = {}
        for rkey, rc in right.items():
            for lkey, lc in left.items():
                key = _mono_mul(lkey, rkey)
                value = lc * rc
                total = terms.get(key)
                terms[key] = value if total is None else total + value
        return SymPoly._wrap({key: c for key, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "SymPoly":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = SymPoly.constant(ONE)
        for _ in range(exponent):
            result = result * self
        return result

    def conj(self) -> "SymPoly":
        terms = {}
        for key, c in self._terms.items():
            new_key = tuple(sorted(((var.conj(), exp) for var, exp in key),
                                   key=lambda item: item[0].sort_key))
            terms[new_key] = c.conj()
        return SymPoly._wrap(terms)

    def substitute(self, assignment: Mapping[CoeffVar, Union[GaussRat, "SymPoly"]],
                   relations: bool = False) -> "SymPoly":
        return poly_substitute(self, assignment, relations)

    def weight_grade(self) -> Dict[int, "SymPoly"]:
        return poly_weight_grade(self)

    # --- comparison and text ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, SymPoly):
            return self._terms == other._terms
        if isinstance(other, (GaussRat, int, Fraction)):
            return self._terms == SymPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"SymPoly({format_poly(self)})"

    def __str__(self) -> str:
        return format_poly(self)


def poly_add(left: SymPoly, right: SymPoly) -> SymPoly:
    return left + right


def poly_mul(left: SymPoly, right: SymPoly) -> SymPoly:
    return left * right


def poly_conj(poly: SymPoly) -> SymPoly:
    return poly.conj()


def poly_substitute(poly: SymPoly,
                    assignment: Mapping[CoeffVar, Union[GaussRat, SymPoly]],
                    relations: bool = False) -> SymPoly:
    """
    Simultaneously replace variables by scalars or polynomials.

    Args:
        poly: Polynomial to rewrite
        assignment: Map from variables to their replacement
        relations: Treat the map as one-directional rewriting rules (constraint
            relations): conjugates are neither completed nor cross-checked

    Returns:
        The rewritten polynomial

    Raises:
        ValueError: when both v and conj(v) are assigned inconsistently
    """
    values: Dict[CoeffVar, SymPoly] = {}
    for var, value in assignment.items():
        values[var] = value if isinstance(value, SymPoly) else SymPoly.constant(value)
    for var, value in ([] if relations else list(values.items())):
        partner = var.conj()
        if partner == var:
            continue
        if partner in values:
            if values[partner] != value.conj():
                raise ValueError(f"inconsistent conjugate assignment for {var} and {partner}")
        else:
            values[partner] = value.conj()

    powers: Dict[Tuple[CoeffVar, int], SymPoly] = {}

    def power(var: CoeffVar, exp: int) -> SymPoly:
        cached = powers.get((var, exp))
        if cached is None:
            cached = values[var] ** exp
            powers[(var, exp)] = cached
        return cached

    result = SymPoly.zero()
    for key, c in poly.items():
        kept = tuple(item for item in key if item[0] not in values)
        term = SymPoly._wrap({kept: c})
        for var, exp in key:
            if var in values:
                term = term * power(var, exp)
                if not term:
                    break
        result = result + term
    return result


def poly_weight_grade(poly: SymPoly) -> Dict[int, SymPoly]:
    """
    Split a polynomial by total monomial weight.

    p[a,b] has weight a-b and ~p[a,b] has weight b-a; the parts sum to the input.
    """
    parts: Dict[int, Dict[MonoKey, GaussRat]] = {}
    for key, c in poly.items():
        parts.setdefault(_mono_weight(key), {})[key] = c
    return {weight: SymPoly._wrap(terms) for weight, terms in sorted(parts.items())}


# --- text form --------------------------------------------------------------


def format_monomial(key: MonoKey, coeff: GaussRat) -> str:
    factors = [f"({format_gaussrat(coeff)})"]
    for var, exp in key:
        factors.append(str(var) if exp == 1 else f"{var}^{exp}")
    return "*".join(factors)


def format_poly(poly: SymPoly) -> str:
    """Canonical text form, e.g. `(2/3*i)*p[-1,2]*~p[-1,2] + (3/2*i)*p[0,1]*~p[0,1]`."""
    if poly.is_zero():
        return "0"
    return " + ".join(format_monomial(mono.vars, mono.coeff) for mono in poly.terms)


_SIGNED_INT = pp.Combine(pp.Optional("-") + pp.Word(pp.nums))
VAR_GRAMMAR = (pp.Optional(pp.Literal("~"))("conj") + pp.one_of(" ".join(KINDS))("kind")
               + pp.Suppress("[") + _SIGNED_INT("a") + pp.Suppress(",") + _SIGNED_INT("b")
               + pp.Suppress("]"))


def _var_action(s, loc, tokens) -> CoeffVar:
    try:
        return CoeffVar(int(tokens["a"]), int(tokens["b"]), "conj" in tokens, tokens["kind"])
    except ValueError as e:
        raise pp.ParseFatalException(s, loc, str(e)) from e


VAR_GRAMMAR.set_parse_action(_var_action)

_FACTOR = VAR_GRAMMAR + pp.Optional(pp.Suppress("^") + pp.Word(pp.nums))
_FACTOR.set_parse_action(lambda tokens: [(tokens[0], int(tokens[1]) if len(tokens) > 1 else 1)])
_COEFF = pp.Suppress("(") + GAUSSRAT_GRAMMAR + pp.Suppress(")")
_FACTORS = _FACTOR + pp.ZeroOrMore(pp.Suppress("*") + _FACTOR)
_TERM = pp.Optional(pp.one_of("+ -")) + ((_COEFF + pp.ZeroOrMore(pp.Suppress("*") + _FACTOR)) | _FACTORS)


def _term_action(tokens) -> SymPoly:
    coeff = GaussRat(1)
    merged: Dict[CoeffVar, int] = {}
    for token in tokens:
        if token == "-":
            coeff = -coeff
        elif isinstance(token, GaussRat):
            coeff = coeff * token
        elif isinstance(token, tuple):
            var, exp = token
            merged[var] = merged.get(var, 0) + exp
    key = tuple(sorted(merged.items(), key=lambda item: item[0].sort_key))
    return [SymPoly({key: coeff})]


_TERM.set_parse_action(_term_action)
POLY_GRAMMAR = pp.Suppress(pp.Keyword("0")) | pp.OneOrMore(_TERM)
POLY_GRAMMAR.set_parse_action(lambda tokens: [sum(tokens, SymPoly.zero())])


def parse_var(text: str) -> CoeffVar:
    try:
        return VAR_GRAMMAR.parse_string(text.strip(), parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise ValueError(f"invalid coefficient variable {text!r}: {e.msg}") from e


def parse_poly(text: str) -> SymPoly:
    """
    Parse the canonical text form (signs between terms and bare variables are accepted).

    Raises:
        ValueError: on malformed input
    """
    try:
        return POLY_GRAMMAR.parse_string(text.strip(), parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise ValueError(f"invalid polynomial {text!r}: {e.msg}") from e
