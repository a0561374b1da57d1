import random

import pytest

from generation.alphabet import (Letter, UnknownLetterError, alphabet_of, alphabet_of_component, bracket_signatures,
                                 enumerate_resonant_words, format_word, is_resonant, parse_word, ping,
                                 resonant_letter_of, ret, signature_of, weight_key, word_depth, word_total, word_weight)


def L(n1, n2):
    return Letter(n1, n2)


def test_alphabet_of_component():
    assert set(alphabet_of_component(2)) == {L(2, -1), L(1, 0), L(0, 1), L(-1, 2)}
    assert set(alphabet_of_component(3)) == {L(3, -1), L(2, 0), L(1, 1), L(0, 2), L(-1, 3)}
    quartic = alphabet_of_component(4)
    assert len(quartic) == 6
    assert not [letter for letter in quartic if letter.n1 == letter.n2]
    assert alphabet_of_component(3) == sorted(alphabet_of_component(3))
    with pytest.raises(ValueError):
        alphabet_of_component(1)


def test_letter_depth_and_component():
    for r in range(2, 8):
        letters = alphabet_of_component(r)
        assert len(letters) == r + 2
        assert {letter.depth for letter in letters} == {r - 1}
        assert {letter.component for letter in letters} == {r}


def test_resonant_letter():
    assert resonant_letter_of(3) == L(1, 1)
    assert resonant_letter_of(2) is None
    assert resonant_letter_of(5) == L(2, 2)


def test_weight_and_depth():
    assert word_weight(()) == 0
    assert word_weight((L(1, 0), L(0, 1))) == 0
    assert word_weight((L(2, -1), L(1, 0))) == 4
    assert word_depth((L(1, 0), L(0, 1))) == 2
    assert word_depth((L(1, 1),)) == 2
    assert word_depth(()) == 0
    assert word_total((L(2, -1), L(-1, 3))) == (1, 2)


def test_weight_and_depth_are_additive():
    rng = random.Random(3)
    letters = alphabet_of([2, 3, 4])
    for _ in range(200):
        word = tuple(rng.choice(letters) for _ in range(rng.randint(0, 6)))
        cut = rng.randint(0, len(word))
        left, right = word[:cut], word[cut:]
        assert word_weight(word) == word_weight(left) + word_weight(right)
        assert word_depth(word) == word_depth(left) + word_depth(right)
        assert weight_key(word) == weight_key(left) + weight_key(right)


def test_enumerate_quadratic_depth_two():
    words = enumerate_resonant_words([2], 2)
    assert set(words) == {
        (L(1, 0), L(0, 1)), (L(0, 1), L(1, 0)), (L(2, -1), L(-1, 2)), (L(-1, 2), L(2, -1))}


def test_enumerate_quadratic_length_four():
    words = enumerate_resonant_words([2], 4, exact_len=4)
    assert len(words) == 44
    assert all(is_resonant(word) for word in words)


def test_enumerate_cubic_depth_two():
    assert enumerate_resonant_words([3], 2, max_len=1) == [(L(1, 1),)]
    assert all(len(word) == 2 for word in enumerate_resonant_words([2, 3], 2, prune=True)
               if L(1, 1) not in word)


def test_enumerate_prune_drops_zero_weight_letters():
    full = enumerate_resonant_words([2, 3], 4)
    pruned = enumerate_resonant_words([2, 3], 4, prune=True)
    dropped = set(full) - set(pruned)
    assert dropped
    assert all(len(word) >= 2 and any(letter.weight == 0 for letter in word) for word in dropped)


def test_enumerate_odd_depth_is_consistent():
    for word in enumerate_resonant_words([2, 3], 3):
        assert word_depth(word) == 3 and word_weight(word) == 0


@pytest.mark.parametrize("components", [[2], [3], [2, 3], [2, 3, 4]])
@pytest.mark.parametrize("prune", [False, True])
def test_enumerate_is_closed_under_reversal(components, prune):
    for depth in (2, 3, 4, 5):
        words = set(enumerate_resonant_words(components, depth, prune=prune))
        assert {ret(word) for word in words} == words


def test_enumerate_depths_are_disjoint():
    by_depth = {depth: set(enumerate_resonant_words([2, 3], depth)) for depth in (2, 4, 6)}
    for depth, words in by_depth.items():
        assert words
        assert all(word_depth(word) == depth for word in words)
        for other, other_words in by_depth.items():
            if other != depth:
                assert not words & other_words, (depth, other)


def test_enumerate_components_are_disjoint():
    for r, s in ((2, 3), (2, 4), (3, 5), (4, 5)):
        assert not set(alphabet_of_component(r)) & set(alphabet_of_component(s))
        for depth in (2, 4):
            assert not set(enumerate_resonant_words([r], depth)) & set(enumerate_resonant_words([s], depth))
    mixed = set(enumerate_resonant_words([2, 3], 4))
    pure = set(enumerate_resonant_words([2], 4)) | set(enumerate_resonant_words([3], 4))
    assert pure < mixed
    assert all({letter.component for letter in word} == {2, 3} for word in mixed - pure)


def test_ping_and_ret():
    word = (L(2, -1), L(1, 0), L(-1, 3))
    assert ping(ping(word)) == word
    assert ret(ret(word)) == word
    assert word_weight(ping(word)) == -word_weight(word)
    assert word_depth(ping(word)) == word_depth(word)
    assert ret(word) == (L(-1, 3), L(1, 0), L(2, -1))


def test_bracket_signatures():
    assert bracket_signatures([2, 3, 4], 4) == [(4, 2), (3, 3), (3, 2, 2), (2, 2, 2, 2)]
    assert signature_of((L(1, 0), L(2, 1), L(0, 1))) == (4, 2, 2)


def test_alphabet_of_union():
    letters = alphabet_of([3, 2, 2])
    assert len(letters) == 9
    assert letters == sorted(letters)


def test_word_text_form():
    word = (L(1, 0), L(0, 1))
    assert format_word(word) == "(1,0).(0,1)"
    assert parse_word("(1,0).(0,1)") == word
    assert parse_word(" (-1,2) ") == (L(-1, 2),)
    assert parse_word("") == ()


@pytest.mark.parametrize("text", ["(1,0)(0,1)", "(1;0)", "(1,0).", "1,0"])
def test_parse_word_rejects_syntax(text):
    with pytest.raises(ValueError):
        parse_word(text)


def test_parse_word_rejects_inadmissible_letter():
    with pytest.raises(UnknownLetterError):
        parse_word("(0,0)")
    with pytest.raises(UnknownLetterError):
        parse_word("(-2,4)")
