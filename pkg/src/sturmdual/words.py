"""Positive and freely reduced words over the two-letter alphabet.

Positive words are plain strings over ``"ab"``.  Free-group elements are
strings over ``"abAB"`` where an uppercase letter is the inverse of its
lowercase partner; they are kept freely reduced (no adjacent inverse
pair).  The empty word prints as ``"e"``.
"""

from __future__ import annotations

from .errors import ParseError

LETTERS = "ab"
SIGNED_LETTERS = "abAB"

_SWAP = str.maketrans("abAB", "baBA")
_FLIP_A = str.maketrans("aA", "Aa")


def is_positive(word: str) -> bool:
    return all(c in LETTERS for c in word)


def is_reduced(word: str) -> bool:
    if any(c not in SIGNED_LETTERS for c in word):
        return False
    return all(a.swapcase() != b for a, b in zip(word, word[1:]))


def check_positive(word: str) -> str:
    for i, c in enumerate(word):
        if c not in LETTERS:
            raise ParseError(f"not a positive word: {word!r}", i)
    return word


def check_reduced(word: str) -> str:
    for i, c in enumerate(word):
        if c not in SIGNED_LETTERS:
            raise ParseError(f"not a word over a, b, A, B: {word!r}", i)
    if not is_reduced(word):
        raise ParseError(f"word is not freely reduced: {word!r}")
    return word


def reduce_word(word: str) -> str:
    """Freely reduce a string over abAB by cancelling adjacent inverses."""
    out: list[str] = []
    for c in word:
        if out and out[-1] == c.swapcase():
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def reduce_concat(u: str, v: str) -> str:
    """Product u*v in the free group, freely reduced.

    Both inputs must already be reduced; only the junction can cancel.
    """
    i = len(u)
    j = 0
    while i > 0 and j < len(v) and u[i - 1] == v[j].swapcase():
        i -= 1
        j += 1
    return u[:i] + v[j:]


def invert_word(u: str) -> str:
    """Group inverse: reverse the word and flip every sign."""
    return u[::-1].swapcase()


def abelianize(u: str) -> tuple[int, int]:
    """Signed occurrence counts (n_a, n_b)."""
    return (u.count("a") - u.count("A"), u.count("b") - u.count("B"))


def swap_letters(u: str) -> str:
    """Exchange the roles of a and b, preserving signs.  Involution."""
    return u.translate(_SWAP)


def flip_a(u: str) -> str:
    """Map a to its inverse and back, fixing b.  Involution."""
    return reduce_word(u.translate(_FLIP_A))


def parse_word(text: str) -> str:
    """Parse a word over [abAB]; the single letter "e" denotes the empty word."""
    text = text.strip()
    if text == "e":
        return ""
    return check_reduced(text)


def format_word(u: str) -> str:
    return u if u else "e"
