"""
Letters and words of a prepared vector field.

A homogeneous component X_r of degree r contributes r + 2 letters (n1, n2),
one per homogeneous differential operator. Words over the union of these
alphabets index the terms of the correction; only resonant words (total
weight zero) carry a nonzero mould value.
"""

import logging
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import pyparsing as pp

logger = logging.getLogger(__name__)


class UnknownLetterError(ValueError):
    """Raised when a word uses a letter that no component provides."""


class Letter(NamedTuple):
    n1: int
    n2: int

    @property
    def weight(self) -> int:
        return self.n1 - self.n2

    @property
    def depth(self) -> int:
        return self.n1 + self.n2

    @property
    def component(self) -> int:
        """Degree r of the component this letter belongs to."""
        return self.n1 + self.n2 + 1

    def __add__(self, other: "Letter") -> "Letter":
        return Letter(self.n1 + other.n1, self.n2 + other.n2)

    def __str__(self) -> str:
        return f"({self.n1},{self.n2})"


Word = Tuple[Letter, ...]


def make_letter(n1: int, n2: int) -> Letter:
    if n1 < -1 or n2 < -1 or n1 + n2 < 1:
        raise UnknownLetterError(f"({n1},{n2}) is not an admissible letter")
    return Letter(n1, n2)


def alphabet_of_component(r: int) -> List[Letter]:
    """
    Letters of the degree-r component in canonical (n1, n2) order.

    Args:
        r: Component degree, at least 2

    Returns:
        The r + 2 letters (r,-1), (-1,r) and (k-1, r-k) for k = 1..r
    """
    if r < 2:
        raise ValueError(f"component degree must be at least 2, got {r}")
    letters = {Letter(r, -1), Letter(-1, r)}
    letters.update(Letter(k - 1, r - k) for k in range(1, r + 1))
    return sorted(letters)


def resonant_letter_of(r: int) -> Optional[Letter]:
    if r < 2:
        raise ValueError(f"component degree must be at least 2, got {r}")
    if r % 2 == 0:
        return None
    m = (r - 1) // 2
    return Letter(m, m)


def alphabet_of(components: Iterable[int]) -> List[Letter]:
    letters: List[Letter] = []
    for r in sorted(set(components)):
        letters.extend(alphabet_of_component(r))
    return sorted(letters)


def word_weight(word: Sequence[Letter]) -> int:
    """
    Total weight of a word.

    Args:
        word: Letters in word order (may be empty)

    Returns:
        Sum of n1 - n2 over the letters; 0 exactly when the word is resonant
    """
    return sum(letter.n1 - letter.n2 for letter in word)


def word_depth(word: Sequence[Letter]) -> int:
    """
    Total depth of a word.

    Args:
        word: Letters in word order (may be empty)

    Returns:
        Sum of n1 + n2 over the letters, additive under concatenation
    """
    return sum(letter.n1 + letter.n2 for letter in word)


def word_total(word: Sequence[Letter]) -> Tuple[int, int]:
    """Componentwise letter sum (|n|1, |n|2)."""
    return (sum(letter.n1 for letter in word), sum(letter.n2 for letter in word))


def weight_key(word: Sequence[Letter]) -> Tuple[int, ...]:
    """Letter weights in word order; the mould cache key."""
    return tuple(letter.n1 - letter.n2 for letter in word)


def is_resonant(word: Sequence[Letter]) -> bool:
    return word_weight(word) == 0


def ping(word: Sequence[Letter]) -> Word:
    """Swap the entries of every letter; negates the weight, keeps the depth."""
    return tuple(Letter(letter.n2, letter.n1) for letter in word)


def ret(word: Sequence[Letter]) -> Word:
    """Reverse the word."""
    return tuple(reversed(word))


def enumerate_resonant_words(components: Iterable[int], depth: int,
                             max_len: Optional[int] = None,
                             prune: bool = False,
                             exact_len: Optional[int] = None) -> List[Word]:
    """
    List every resonant word of the given depth over the components' alphabets.

    Args:
        components: Component degrees r of the field
        depth: Total depth of the words, at least 1
        max_len: Upper bound on word length (default: depth)
        prune: Drop words of length >= 2 containing a weight-0 letter
        exact_len: Only keep words of exactly this length

    Returns:
        Words sorted by (length, letters)
    """
    if depth < 1:
        raise ValueError(f"depth must be at least 1, got {depth}")
    letters = alphabet_of(components)
    if max_len is None:
        max_len = depth
    if exact_len is not None:
        max_len = min(max_len, exact_len)
    words: List[Word] = []

    def extend(prefix: List[Letter], remaining: int, weight: int, has_zero: bool):
        if remaining == 0:
            if weight == 0 and (exact_len is None or len(prefix) == exact_len):
                if not (prune and has_zero and len(prefix) >= 2):
                    words.append(tuple(prefix))
            return
        if len(prefix) >= max_len:
            return
        # a letter of depth t carries |weight| <= t + 2 <= 3t
        if abs(weight) > 3 * remaining:
            return
        for letter in letters:
            d = letter.n1 + letter.n2
            if d > remaining:
                continue
            w = letter.n1 - letter.n2
            prefix.append(letter)
            extend(prefix, remaining - d, weight + w, has_zero or w == 0)
            prefix.pop()

    extend([], depth, 0, False)
    words.sort(key=lambda word: (len(word), word))
    logger.debug("enumerated %d resonant words of depth %d over %s",
                 len(words), depth, sorted(set(components)))
    return words


def bracket_signatures(components: Iterable[int], depth: int) -> List[Tuple[int, ...]]:
    """
    Multisets of component degrees (sorted descending) whose depths r - 1 sum to depth.

    A correction contribution is labelled by the signature of its word, e.g.
    (4, 2) for the words mixing one X_4 letter with one X_2 letter.
    """
    degrees = sorted(set(components), reverse=True)
    found: List[Tuple[int, ...]] = []

    def extend(chosen: List[int], start: int, remaining: int):
        if remaining == 0:
            found.append(tuple(chosen))
            return
        for index in range(start, len(degrees)):
            r = degrees[index]
            if r - 1 <= remaining:
                chosen.append(r)
                extend(chosen, index, remaining - (r - 1))
                chosen.pop()

    extend([], 0, depth)
    return sorted(found, key=lambda sig: (len(sig), [-r for r in sig]))


def signature_of(word: Sequence[Letter]) -> Tuple[int, ...]:
    return tuple(sorted((letter.component for letter in word), reverse=True))


# --- text form --------------------------------------------------------------


def format_word(word: Sequence[Letter]) -> str:
    return ".".join(str(letter) for letter in word)


_INT = pp.Combine(pp.Optional("-") + pp.Word(pp.nums))
_LETTER = pp.Suppress("(") + _INT + pp.Suppress(",") + _INT + pp.Suppress(")")
_LETTER.set_parse_action(lambda tokens: [Letter(int(tokens[0]), int(tokens[1]))])
WORD_GRAMMAR = pp.Optional(_LETTER + pp.ZeroOrMore(pp.Suppress(".") + _LETTER))


def parse_word(text: str) -> Word:
    """
    Parse `(1,0).(0,1)`; the empty string is the empty word.

    Raises:
        ValueError: on malformed input or inadmissible letters
    """
    try:
        letters = WORD_GRAMMAR.parse_string(text.strip(), parse_all=True)
    except pp.ParseBaseException as e:
        raise ValueError(f"invalid word {text!r}: {e.msg}") from e
    return tuple(make_letter(letter.n1, letter.n2) for letter in letters)
