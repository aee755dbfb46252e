from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoidgeo.words import (
    EMPTY,
    count_words_up_to,
    format_word,
    occurrences,
    parse_word,
    replace_at,
    tokenize,
    words_up_to,
)

letters = st.sampled_from(["a", "b", "c"])
words = st.lists(letters, max_size=8).map(tuple)


def test_parse_simple():
    assert parse_word("a b a") == ("a", "b", "a")
    assert parse_word("1") == EMPTY
    assert parse_word("  a   b ") == ("a", "b")


def test_parse_rejects_embedded_identity():
    with pytest.raises(ValueError):
        parse_word("a 1 b")


def test_format_identity():
    assert format_word(EMPTY) == "1"
    assert format_word(("a", "b")) == "a b"


@given(words)
def test_round_trip(word):
    assert parse_word(format_word(word)) == word


def test_tokenize_concatenated():
    assert tokenize("aabb", ("a", "b")) == ("a", "a", "b", "b")
    assert tokenize("a a b b", ("a", "b")) == ("a", "a", "b", "b")
    assert tokenize("1", ("a", "b")) == EMPTY


def test_tokenize_longest_match_with_backtracking():
    # Greedy alone would read "ab" then fail on the lone "b".
    assert tokenize("abb", ("ab", "a", "bb")) == ("a", "bb")
    assert tokenize("aba", ("ab", "a")) == ("ab", "a")


def test_tokenize_multichar_names():
    gens = ("a1", "a1'", "b")
    assert tokenize("a1'b", gens) == ("a1'", "b")
    assert tokenize("a1 a1' b", gens) == ("a1", "a1'", "b")


def test_tokenize_rejects_unknown():
    with pytest.raises(ValueError):
        tokenize("abc", ("a", "b"))


@given(words)
def test_tokenize_inverts_concatenation(word):
    assert tokenize("".join(word) or "1", ("a", "b", "c")) == word


def test_occurrences():
    assert occurrences(("a", "b", "a", "b"), ("a", "b")) == [0, 2]
    assert occurrences(("a", "a", "a"), ("a", "a")) == [0, 1]
    assert occurrences(("a",), EMPTY) == [0, 1]


def test_replace_at():
    assert replace_at(("a", "b", "c"), 1, 1, ("x", "y")) == ("a", "x", "y", "c")
    assert replace_at(("a", "b"), 0, 2, EMPTY) == EMPTY


def test_words_up_to_order_and_count():
    listed = list(words_up_to(("a", "b"), 2))
    assert listed == [
        (),
        ("a",),
        ("b",),
        ("a", "a"),
        ("a", "b"),
        ("b", "a"),
        ("b", "b"),
    ]
    assert len(listed) == count_words_up_to(2, 2)
    assert count_words_up_to(1, 5) == 6
