import json
import random
from fractions import Fraction
from itertools import product

import pytest

from algebra.gaussrat import ONE, ZERO, GaussRat, gr_imag_unit, parse_gaussrat
from benchmark.selftest import MOULD_TABLES_PATH, _random_resonant_key
from generation.alphabet import Letter, alphabet_of_component, enumerate_resonant_words, parse_word, weight_key
from generation.mould import (MouldTable, alternality_defect, carr_by_recursion, carr_closed_form_C1,
                              carr_closed_form_C2, carr_closed_form_C3, carr_mould, carr_prepend_mould, carr_value,
                              compositions, default_table, identity_minus, mould_compose, shuffles, tram_mould,
                              tram_value, unit_mould, word_blocks)


def L(n1, n2):
    return Letter(n1, n2)


def load_tables():
    with open(MOULD_TABLES_PATH, 'r', encoding='utf-8') as f:
        return json.load(f)


@pytest.mark.parametrize("table, size", [("length_2", 4), ("length_4", 44)])
def test_golden_tables(table, size):
    entries = load_tables()[table]
    assert len(entries) == size
    for entry in entries:
        word = parse_word(entry["word"])
        assert list(weight_key(word)) == entry["weights"]
        assert carr_value(weight_key(word)) == parse_gaussrat(entry["value"]), entry["location"]


def test_named_values():
    i = GaussRat(0, 1)
    assert carr_value((1, -1)) == i
    assert carr_value((3, -3)) == i / 3
    assert carr_value((-3, 3)) == -i / 3
    assert carr_value((-3, -3, 3, 3)) == -i / 54
    assert carr_value((3, 3, -3, -3)) == i / 54
    assert carr_value((-1, 1, -1, 1)) == i
    assert carr_value((-3, 3, 1, -1)) == ZERO


def test_vanishing_rules():
    assert carr_value(()) == ZERO
    assert carr_value((5,)) == ZERO
    assert carr_value((0,)) == ONE
    assert carr_value((1, 2)) == ZERO
    assert carr_value((0, 0)) == ZERO
    assert carr_value((2, 0, -2)) == ZERO
    assert carr_value((1, -1, 0, 2, -2)) == ZERO


def test_closed_forms():
    i = GaussRat(0, 1)
    assert carr_closed_form_C1(ZERO) == ONE and carr_closed_form_C1(i) == ZERO
    assert carr_closed_form_C2(i, -i) == i
    assert carr_closed_form_C2(i, i) == ZERO
    assert carr_closed_form_C3(i, i, -2 * i) == Fraction(-1, 2)
    assert carr_closed_form_C3(i, -i, ZERO) == ZERO


def test_closed_forms_against_random_keys():
    rng = random.Random(11)
    closed = (carr_closed_form_C1, carr_closed_form_C2, carr_closed_form_C3)
    for _ in range(1000):
        key = _random_resonant_key(rng, rng.randint(1, 3), 6)
        expected = closed[len(key) - 1](*(gr_imag_unit(w) for w in key))
        assert carr_value(key) == expected
        assert carr_by_recursion(key) == expected


def test_universality():
    # (1,0).(0,1) and (3,2).(2,3) share the weight key (1, -1)
    assert carr_mould((L(1, 0), L(0, 1))) == carr_mould((L(3, 2), L(2, 3)))
    assert carr_mould((L(2, -1), L(0, 1), L(0, 1), L(0, 1))) == carr_mould((L(3, 0), L(1, 2), L(1, 2), L(1, 2)))


def test_values_lie_in_the_right_field():
    for components in ([2], [2, 3]):
        for depth in (2, 3, 4, 5):
            for word in enumerate_resonant_words(components, depth):
                value = carr_mould(word)
                assert value.is_real() if len(word) % 2 else value.is_imaginary()


def test_length_two_antisymmetry():
    for z in range(1, 8):
        assert carr_value((z, -z)) == -carr_value((-z, z))


def test_table_cache_is_stable():
    table = MouldTable()
    first = carr_value((-3, 1, 1, 1), table)
    assert (-3, 1, 1, 1) in table
    assert carr_value((-3, 1, 1, 1), table) == first
    table.clear()
    assert len(table) == 0
    assert carr_value((-3, 1, 1, 1), table) == first


def test_fresh_table_is_filled_instead_of_default():
    shared = default_table()
    before = len(shared)
    table = MouldTable()
    assert len(table) == 0
    value = carr_value((-13, 5, 4, 4), table)
    assert (-13, 5, 4, 4) in table
    assert len(table) > 1
    assert len(shared) == before
    assert value == carr_by_recursion((-13, 5, 4, 4))


def test_tram_values():
    i = GaussRat(0, 1)
    assert tram_value((0,)) == ONE
    assert tram_value((1, -1)) == -i
    assert tram_value((1, 1, -2)) == Fraction(-1, 2)
    assert tram_value((1, 2)) == ZERO
    with pytest.raises(ValueError):
        tram_value((1, 1, -1, -1))


def short_resonant_words():
    words = []
    for depth in (2, 3, 4):
        words.extend(enumerate_resonant_words([2, 3], depth, max_len=3))
    return words


def test_tram_matches_prepend_convention():
    words = short_resonant_words()
    assert {len(word) for word in words} == {1, 2, 3}
    for word in words:
        assert carr_prepend_mould(word) == tram_mould(word)


def test_compositions():
    assert len(list(compositions(3))) == 4
    blocks = list(word_blocks((L(1, 0), L(0, 1), L(1, 0))))
    assert len(blocks) == 4
    assert [(L(1, 0),), (L(0, 1), L(1, 0))] in blocks


def test_compose_with_unit():
    for letter in alphabet_of_component(3):
        assert mould_compose(unit_mould, carr_mould, (letter,)) == carr_mould((letter,))


def test_prenormal_composition_identity():
    left = identity_minus(tram_mould)
    right = identity_minus(carr_prepend_mould)
    for word in short_resonant_words():
        assert mould_compose(left, right, word) == right(word)


def test_shuffles():
    u, v = (L(1, 0),), (L(0, 1), L(2, -1))
    assert sorted(shuffles(u, v)) == sorted([(L(1, 0), L(0, 1), L(2, -1)),
                                             (L(0, 1), L(1, 0), L(2, -1)),
                                             (L(0, 1), L(2, -1), L(1, 0))])
    assert len(list(shuffles((L(1, 0), L(1, 0)), (L(0, 1), L(0, 1))))) == 6


def test_alternality_examples():
    assert alternality_defect(carr_mould, (L(1, 0),), (L(0, 1),)) == ZERO
    assert alternality_defect(carr_mould, (L(3, -1),), (L(-1, 3),)) == ZERO
    assert alternality_defect(carr_mould, (L(1, 0),), (L(1, 0),)) == ZERO
    with pytest.raises(ValueError):
        alternality_defect(carr_mould, (), (L(1, 0),))


def test_alternality_over_quadratic_alphabet():
    letters = alphabet_of_component(2)
    for total in (2, 3, 4):
        for left in range(1, total):
            for u in product(letters, repeat=left):
                for v in product(letters, repeat=total - left):
                    assert alternality_defect(carr_mould, u, v) == ZERO, (u, v)
