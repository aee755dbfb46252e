"""Words over a finite alphabet of named generators.

A word is a tuple of generator names; the empty tuple is the monoid
identity.  Generator names are arbitrary non-whitespace strings, so words
are rendered as space-separated tokens and the identity as ``1``.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

Word = tuple[str, ...]

EMPTY: Word = ()

__all__ = [
    "Word",
    "EMPTY",
    "parse_word",
    "format_word",
    "check_word",
    "occurrences",
    "replace_at",
    "tokenize",
    "words_up_to",
    "count_words_up_to",
]


def parse_word(text: str) -> Word:
    """Parse a space-separated word; the token ``1`` denotes the empty word."""
    tokens = text.split()
    if tokens == ["1"]:
        return EMPTY
    if "1" in tokens:
        raise ValueError("the identity token '1' cannot appear inside a longer word")
    return tuple(tokens)


def format_word(word: Word) -> str:
    return " ".join(word) if word else "1"


def tokenize(text: str, alphabet: Iterable[str]) -> Word:
    """Parse a word, allowing generator names to be run together.

    ``tokenize("aabb", "ab")`` gives ``("a", "a", "b", "b")`` and the
    spaced spelling ``"a a b b"`` parses the same.  Unspaced tokens are
    segmented into generator names preferring longest matches first, with
    backtracking, so any segmentable spelling is accepted.
    """
    names = frozenset(alphabet)
    tokens = text.split()
    if tokens == ["1"]:
        return EMPTY
    out: list[str] = []
    for token in tokens:
        if token == "1":
            raise ValueError("the identity token '1' cannot appear inside a longer word")
        if token in names:
            out.append(token)
            continue
        segmented = _segment(token, names)
        if segmented is None:
            raise ValueError(
                f"cannot split {token!r} into generators from "
                f"{{{', '.join(sorted(names))}}}"
            )
        out.extend(segmented)
    return tuple(out)


def _segment(token: str, names: frozenset[str]) -> list[str] | None:
    lengths = sorted({len(n) for n in names}, reverse=True)
    end = len(token)
    dead: set[int] = set()

    def go(i: int) -> list[str] | None:
        if i == end:
            return []
        if i in dead:
            return None
        for k in lengths:
            if i + k <= end and token[i : i + k] in names:
                rest = go(i + k)
                if rest is not None:
                    return [token[i : i + k]] + rest
        dead.add(i)
        return None

    return go(0)


def check_word(word: Word, alphabet: Iterable[str]) -> Word:
    """Validate that every letter of ``word`` is a known generator."""
    allowed = set(alphabet)
    for letter in word:
        if letter not in allowed:
            raise ValueError(f"unknown generator {letter!r} in word {format_word(word)!r}")
    return word


def occurrences(word: Word, factor: Word) -> list[int]:
    """Start indices of every occurrence of ``factor`` in ``word``.

    The empty factor occurs at every boundary position 0..len(word).
    """
    if not factor:
        return list(range(len(word) + 1))
    k = len(factor)
    return [i for i in range(len(word) - k + 1) if word[i : i + k] == factor]


def replace_at(word: Word, position: int, old_length: int, replacement: Word) -> Word:
    return word[:position] + replacement + word[position + old_length :]


def words_up_to(alphabet: Iterable[str], max_length: int) -> Iterator[Word]:
    """All words of length <= max_length in length-then-lexicographic order.

    Lexicographic order is taken with respect to the given generator order.
    """
    letters = tuple(alphabet)
    for length in range(max_length + 1):
        for combo in itertools.product(letters, repeat=length):
            yield combo


def count_words_up_to(alphabet_size: int, max_length: int) -> int:
    if alphabet_size == 1:
        return max_length + 1
    return (alphabet_size ** (max_length + 1) - 1) // (alphabet_size - 1)
