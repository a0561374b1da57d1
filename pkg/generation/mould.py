"""
The correction mould.

Carr on a word depends only on the weight sequence of its letters, so values
are cached by weight key. Lengths up to 3 use the closed forms

    C1 = 1 on the zero weight
    C2(z1, z2) = -1/z1                  (z1 + z2 = 0)
    C3(z1, z2, z3) = 1/(z1 (z1 + z2))   (z1 + z2 + z3 = 0)

with z = i*weight. Longer keys are resolved from the variance recursion

    z1 Carr(n1 .. nr) + Carr((n1+n2) n3 .. nr) = sum over n = n1 b c of Carr(n1 c) Carr(b)

where b is nonempty and c may be empty.

The module also carries the word-level mould algebra (composition,
alternality) and the length-3 values of the prenormal mould used to
cross-check the conventions.
"""

import logging
import threading
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from algebra.gaussrat import ONE, ZERO, GaussRat, gr_imag_unit
from generation.alphabet import Letter, Word, weight_key

logger = logging.getLogger(__name__)

WeightKey = Tuple[int, ...]
Mould = Callable[[Sequence[Letter]], GaussRat]


def carr_closed_form_C1(z1: GaussRat) -> GaussRat:
    return ONE if z1.is_zero() else ZERO


def carr_closed_form_C2(z1: GaussRat, z2: GaussRat) -> GaussRat:
    if z1.is_zero() or not (z1 + z2).is_zero():
        return ZERO
    return -z1.inverse()


def carr_closed_form_C3(z1: GaussRat, z2: GaussRat, z3: GaussRat) -> GaussRat:
    s12 = z1 + z2
    if z1.is_zero() or s12.is_zero() or not (s12 + z3).is_zero():
        return ZERO
    return (z1 * s12).inverse()


class MouldTable:
    """
    Grow-only cache of Carr values keyed by weight sequence.

    Concurrent duplicate derivations are harmless: they insert equal values.
    """

    def __init__(self):
        self._cache: Dict[WeightKey, GaussRat] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._cache)

    def __contains__(self, key: WeightKey) -> bool:
        return key in self._cache

    def items(self):
        with self._lock:
            return sorted(self._cache.items())

    def clear(self):
        with self._lock:
            self._cache.clear()

    def value(self, key: Sequence[int]) -> GaussRat:
        key = tuple(key)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        result = self._derive(key, closed_forms=True)
        with self._lock:
            self._cache.setdefault(key, result)
        return result

    def _derive(self, key: WeightKey, closed_forms: bool) -> GaussRat:
        length = len(key)
        if length == 0 or sum(key) != 0:
            return ZERO
        if length == 1:
            return ONE
        if 0 in key:
            return ZERO
        if closed_forms and length == 2:
            return carr_closed_form_C2(gr_imag_unit(key[0]), gr_imag_unit(key[1]))
        if closed_forms and length == 3:
            return carr_closed_form_C3(*(gr_imag_unit(w) for w in key))
        return self._recurse(key, self.value if closed_forms else self._recursive_value)

    def _recursive_value(self, key: Sequence[int]) -> GaussRat:
        return self._derive(tuple(key), closed_forms=False)

    @staticmethod
    def _recurse(key: WeightKey, carr: Callable[[WeightKey], GaussRat]) -> GaussRat:
        first = key[0]
        rhs = ZERO
        for j in range(2, len(key) + 1):
            # b = key[1:j] is nonempty, c = key[j:] may be empty
            left = carr((first,) + key[j:])
            if left:
                rhs = rhs + left * carr(key[1:j])
        merged = carr((first + key[1],) + key[2:])
        return (rhs - merged) / gr_imag_unit(first)


_DEFAULT_TABLE = MouldTable()


def default_table() -> MouldTable:
    return _DEFAULT_TABLE


def carr_value(key: Sequence[int], table: Optional[MouldTable] = None) -> GaussRat:
    """
    Value of the correction mould on a weight sequence.

    Args:
        key: Letter weights n1 - n2 in word order
        table: Cache to use (default: the module-wide table)

    Returns:
        Exact value in Q (odd length) or iQ (even length)
    """
    if table is None:
        table = _DEFAULT_TABLE
    return table.value(key)


def carr_by_recursion(key: Sequence[int]) -> GaussRat:
    """Carr through the variance recursion at every length >= 2 (no closed forms, no cache)."""
    return MouldTable()._derive(tuple(key), closed_forms=False)


def tram_value(key: Sequence[int]) -> GaussRat:
    """
    Prenormal-form mould on resonant keys of length 1..3.

    Returns 1, 1/z1 and 1/(z1 (z1 + z2)); these are the correction mould values
    written in the prepend nesting convention. Nonresonant keys give 0.
    """
    key = tuple(key)
    if not 1 <= len(key) <= 3:
        raise ValueError(f"prenormal values are only tabulated up to length 3, got {len(key)}")
    if sum(key) != 0:
        return ZERO
    if len(key) == 1:
        return ONE
    if 0 in key:
        return ZERO
    z1 = gr_imag_unit(key[0])
    if len(key) == 2:
        return z1.inverse()
    s12 = z1 + gr_imag_unit(key[1])
    return (z1 * s12).inverse()


def prepend_convention_sign(length: int) -> int:
    """Sign (-1)^(r+1) relating the two bracket nesting conventions."""
    return 1 if length % 2 == 1 else -1


# --- word-level moulds ------------------------------------------------------


def carr_mould(word: Sequence[Letter]) -> GaussRat:
    return carr_value(weight_key(word))


def carr_prepend_mould(word: Sequence[Letter]) -> GaussRat:
    return carr_mould(word) * prepend_convention_sign(len(word))


def tram_mould(word: Sequence[Letter]) -> GaussRat:
    return tram_value(weight_key(word))


def unit_mould(word: Sequence[Letter]) -> GaussRat:
    return ONE if len(word) == 1 else ZERO


def identity_minus(mould: Mould) -> Mould:
    """The mould I - M."""
    return lambda word: unit_mould(word) - mould(word)


def compositions(length: int) -> Iterator[Tuple[int, ...]]:
    """Cut points splitting a word of the given length into nonempty consecutive blocks."""
    for k in range(length):
        for cuts in combinations(range(1, length), k):
            yield cuts


def word_blocks(word: Sequence[Letter]) -> Iterator[List[Word]]:
    word = tuple(word)
    for cuts in compositions(len(word)):
        bounds = (0,) + cuts + (len(word),)
        yield [word[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1)]


def letter_sum(block: Sequence[Letter]) -> Letter:
    return Letter(sum(letter.n1 for letter in block), sum(letter.n2 for letter in block))


def mould_compose(outer: Mould, inner: Mould, word: Sequence[Letter]) -> GaussRat:
    """
    (outer o inner) on a nonempty word.

    Sums outer(||w1|| .. ||wk||) * inner(w1) ... inner(wk) over every split of
    the word into consecutive nonempty blocks w1 .. wk.
    """
    total = ZERO
    for blocks in word_blocks(word):
        product = ONE
        for block in blocks:
            product = product * inner(block)
            if not product:
                break
        if product:
            total = total + outer(tuple(letter_sum(block) for block in blocks)) * product
    return total


def shuffles(u: Sequence[Letter], v: Sequence[Letter]) -> Iterator[Word]:
    u, v = tuple(u), tuple(v)
    if not u:
        yield v
        return
    if not v:
        yield u
        return
    for rest in shuffles(u[1:], v):
        yield (u[0],) + rest
    for rest in shuffles(u, v[1:]):
        yield (v[0],) + rest


def alternality_defect(mould: Mould, u: Sequence[Letter], v: Sequence[Letter]) -> GaussRat:
    """Sum of the mould over every shuffle of u and v (0 for an alternal mould)."""
    if not u or not v:
        raise ValueError("alternality is tested on nonempty words")
    total = ZERO
    for word in shuffles(u, v):
        total = total + mould(word)
    return total
