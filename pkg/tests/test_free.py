import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metalie.free import (
    LeftNormedWord,
    as_words,
    commutant_presentation,
    free_context,
    is_normalized,
    normalize,
    normalized_words,
)
from metalie.modules import graded_dimension
from metalie.text import parse_element

F3 = free_context(3)


def test_normalize_examples():
    assert str(normalize(["a2", "a1"], F3)) == "1*[a2,a1]"
    assert str(normalize(["a1", "a2"], F3)) == "-1*[a2,a1]"
    assert str(normalize(["a3", "a2", "a1"], F3)) == "1*[a3,a1]*a2 - 1*[a2,a1]*a3"
    assert not normalize(["a1", "a1"], F3)
    assert normalize(LeftNormedWord((2, 0, 1), 2), F3) == parse_element("2*[a3,a1]*a2", F3)


def test_normalize_rejects_unknown_letters():
    with pytest.raises(KeyError):
        normalize([0, 5], F3)


def test_normalized_word_shape():
    assert is_normalized((2, 0, 1, 1))
    assert not is_normalized((0, 1))
    assert not is_normalized((2, 1, 0))
    assert normalized_words(2, 3) == [(1, 0, 0), (1, 0, 1)]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_normalized_words_count_graded_dimension(n):
    dims = graded_dimension(commutant_presentation(n), 6).dims
    for d in range(2, 7):
        words = normalized_words(n, d)
        assert dims[d] == len(words) == (d - 1) * comb(n + d - 2, d)


def test_normalized_words_are_normal_forms():
    for d in range(2, 5):
        for w in normalized_words(3, d):
            elem = normalize(w, F3)
            assert as_words(elem) == [(w, 1)]


letters = st.lists(st.integers(0, 2), min_size=1, max_size=6)


def random_elem(seed):
    return F3.random_element(random.Random(seed), 4)


@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_metabelian_identities(s1, s2, s3):
    a, b, c = random_elem(s1), random_elem(s2), random_elem(s3)
    m = F3.mul
    assert m(a, b) == -m(b, a)
    assert not (m(m(a, b), c) + m(m(b, c), a) + m(m(c, a), b))
    assert not m(m(a, b), m(c, a))
    assert m(a + b, c) == m(a, c) + m(b, c)


@given(letters)
def test_normal_form_is_stable_under_reparsing(word):
    elem = normalize(word, F3)
    assert parse_element(str(elem), F3) == elem


@given(st.lists(st.integers(0, 2), min_size=3, max_size=6))
def test_tail_letters_commute(word):
    """Letters after the first two act through a commutative ring."""
    swapped = word[:2] + list(reversed(word[2:]))
    assert normalize(word, F3) == normalize(swapped, F3)
