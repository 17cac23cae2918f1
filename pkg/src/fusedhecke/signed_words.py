"""Signed permutations (the type B Coxeter group) and their block normal form.

A signed word ``(b_1, ..., b_n)`` stores the image of ``i`` at position ``i``;
a negative entry is a barred letter. Right multiplication by the generator
``s_i`` swaps positions ``i`` and ``i+1``, and right multiplication by ``x_1``
bars position 1.

Block ``(i, m)`` spells a descending run of generators:

* ``m >= 1``: ``s_i s_{i-1} ... s_m``
* ``m == 0``: ``s_i ... s_1 x_1``
* ``m < 0``: ``s_i ... s_1 x_1 s_1 ... s_{|m|}``

Every signed permutation is a unique product of blocks with strictly
increasing first indices.

>>> to_blocks((-1, -2))
((0, 0), (1, -1))
>>> from_blocks([(0, 0), (1, 0)])
(-2, -1)
>>> format_word(from_blocks([(1, 0)], 3))
'-2 1 3'
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence

__all__ = [
    "SignedWord",
    "BlockWord",
    "WordFilter",
    "ALL",
    "AVOIDING",
    "avoiding_cap",
    "identity_word",
    "block_letters",
    "spelling",
    "spelling_text",
    "apply_letter",
    "from_blocks",
    "to_blocks",
    "coxeter_length",
    "block_length",
    "bar_count",
    "m_bits",
    "is_avoiding_12bar",
    "is_avoiding_with_cap",
    "enumerate_words",
    "avoiding_count",
    "column_key",
    "format_word",
    "parse_word",
    "compose",
]

SignedWord = tuple[int, ...]
BlockWord = tuple[tuple[int, int], ...]

X1 = 0  # letter code for x_1; s_i is coded by i


def identity_word(n: int) -> SignedWord:
    return tuple(range(1, n + 1))


def block_letters(block: tuple[int, int]) -> tuple[int, ...]:
    """Generator codes of one block, read left to right (0 stands for x_1)."""
    i, m = block
    if m >= 1:
        return tuple(range(i, m - 1, -1))
    down = tuple(range(i, 0, -1)) + (X1,)
    return down + tuple(range(1, -m + 1))


def block_length(block: tuple[int, int]) -> int:
    i, m = block
    return i - m + 1 if m >= 1 else i + 1 - m


def spelling(blocks: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    return tuple(g for b in blocks for g in block_letters(b))


def spelling_text(blocks: Sequence[tuple[int, int]]) -> str:
    """Generator string such as ``x1s1x1s1``; the identity is ``1``."""
    letters = spelling(blocks)
    if not letters:
        return "1"
    return "".join("x1" if g == X1 else f"s{g}" for g in letters)


def apply_letter(w: Sequence[int], g: int) -> SignedWord:
    """Right multiply a signed word by one generator."""
    w = list(w)
    if g == X1:
        w[0] = -w[0]
    else:
        w[g - 1], w[g] = w[g], w[g - 1]
    return tuple(w)


def from_blocks(blocks: Sequence[tuple[int, int]], n: int | None = None) -> SignedWord:
    if n is None:
        n = max((i for i, _ in blocks), default=-1) + 1
    w = list(range(1, n + 1))
    for g in spelling(blocks):
        if g == X1:
            w[0] = -w[0]
        else:
            w[g - 1], w[g] = w[g], w[g - 1]
    return tuple(w)


@lru_cache(maxsize=None)
def to_blocks(w: SignedWord) -> BlockWord:
    """Peel the largest strand off repeatedly.

    If ``n`` sits unbarred at position ``p < n`` the last block is
    ``(n-1, p)``; if it sits barred at position ``p`` the last block is
    ``(n-1, 1-p)``.
    """
    w = tuple(w)
    blocks = []
    while w:
        n = len(w)
        if n in w:
            p = w.index(n) + 1
            if p != n:
                blocks.append((n - 1, p))
        else:
            p = w.index(-n) + 1
            blocks.append((n - 1, 1 - p))
        w = w[: p - 1] + w[p:]
    return tuple(reversed(blocks))


def coxeter_length(w: SignedWord) -> int:
    return sum(block_length(b) for b in to_blocks(tuple(w)))


def bar_count(w: SignedWord) -> int:
    return sum(1 for b in w if b < 0)


def m_bits(w: SignedWord, n: int | None = None) -> tuple[int, ...]:
    """Bit ``i`` records whether the normal form uses ``x_1`` in block ``i``."""
    n = len(w) if n is None else n
    bits = [0] * n
    for i, m in to_blocks(tuple(w)):
        if m <= 0:
            bits[i] = 1
    return tuple(bits)


def is_avoiding_12bar(w: SignedWord) -> bool:
    barred = [-b for b in w if b < 0]
    return all(a > b for a, b in zip(barred, barred[1:]))


def is_avoiding_with_cap(w: SignedWord, k: int) -> bool:
    return is_avoiding_12bar(w) and bar_count(w) <= k


@dataclass(frozen=True)
class WordFilter:
    """Which words to keep: all, the avoiding ones, or avoiding with a bar cap."""

    kind: str = "all"
    k: int | None = None

    def __call__(self, w: SignedWord) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "avoiding":
            return is_avoiding_12bar(w)
        return is_avoiding_with_cap(w, self.k)

    def __str__(self) -> str:
        return f"cap{self.k}" if self.kind == "cap" else self.kind


ALL = WordFilter("all")
AVOIDING = WordFilter("avoiding")


def avoiding_cap(k: int) -> WordFilter:
    if k < 0:
        raise ValueError("cap must be non-negative")
    return WordFilter("cap", k)


def _lex_key(w: SignedWord):
    return tuple((abs(b), b < 0) for b in w)


@lru_cache(maxsize=None)
def _all_words(n: int) -> tuple[SignedWord, ...]:
    words = [
        tuple(s * p for s, p in zip(signs, perm))
        for perm in itertools.permutations(range(1, n + 1))
        for signs in itertools.product((1, -1), repeat=n)
    ]
    words.sort(key=_lex_key)
    return tuple(words)


def enumerate_words(n: int, filter: WordFilter = ALL) -> Iterator[SignedWord]:
    """Words of size ``n`` passing ``filter``, in lexicographic order
    (unbarred before barred at equal absolute value).

    >>> sum(1 for _ in enumerate_words(3, AVOIDING))
    34
    >>> sum(1 for _ in enumerate_words(3, avoiding_cap(1)))
    24
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    return (w for w in _all_words(n) if filter(w))


def avoiding_count(n: int, k: int | None = None) -> int:
    """Closed form for the number of avoiding words, optionally capped."""
    top = n if k is None else min(k, n)
    return sum(comb(n, i) ** 2 * factorial(n - i) for i in range(top + 1))


def column_key(w: SignedWord):
    """Grading used to order matrix columns: bars, then length, then lex."""
    return (bar_count(w), coxeter_length(w), _lex_key(w))


def compose(u: SignedWord, v: SignedWord) -> SignedWord:
    """Group product ``u v`` as functions, ``v`` applied first."""
    return tuple(u[b - 1] if b > 0 else -u[-b - 1] for b in v)


def format_word(w: SignedWord) -> str:
    return " ".join(str(b) for b in w)


def parse_word(text: str) -> SignedWord:
    w = tuple(int(t) for t in text.replace(",", " ").split())
    if sorted(abs(b) for b in w) != list(range(1, len(w) + 1)):
        raise ValueError(f"not a signed permutation: {text!r}")
    return w
