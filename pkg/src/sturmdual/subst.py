"""Substitutions and free-group endomorphisms on two letters.

A Substitution sends each letter to a nonempty positive word; a
FreeEndo sends each letter to a reduced word over abAB.  Both extend to
arbitrary reduced words by concatenation and free reduction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import words
from .errors import ParseError, SturmdualError


@dataclass(frozen=True)
class Mat2:
    """2x2 integer matrix; entry (i, j) counts letter i in the image of j."""

    m11: int
    m12: int
    m21: int
    m22: int

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.m11, self.m12), (self.m21, self.m22))

    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def transpose(self) -> "Mat2":
        return Mat2(self.m11, self.m21, self.m12, self.m22)

    def mul(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def apply(self, vec: tuple[int, int]) -> tuple[int, int]:
        return (
            self.m11 * vec[0] + self.m12 * vec[1],
            self.m21 * vec[0] + self.m22 * vec[1],
        )

    def power(self, n: int) -> "Mat2":
        if n < 0:
            raise ValueError("negative power")
        out = MAT_IDENTITY
        base = self
        while n:
            if n & 1:
                out = out.mul(base)
            base = base.mul(base)
            n >>= 1
        return out

    def inverse_unimodular(self) -> "Mat2":
        d = self.det()
        if d not in (1, -1):
            raise SturmdualError(f"matrix has determinant {d}, not +-1")
        return Mat2(self.m22 // d, -self.m12 // d, -self.m21 // d, self.m11 // d)

    def is_positive(self) -> bool:
        return min(self.m11, self.m12, self.m21, self.m22) > 0

    def is_primitive(self) -> bool:
        # Wielandt bound for 2x2 nonnegative matrices: primitive iff M^2 > 0
        if min(self.m11, self.m12, self.m21, self.m22) < 0:
            return False
        return self.mul(self).is_positive()


MAT_IDENTITY = Mat2(1, 0, 0, 1)


class _MorphismBase:
    """Shared extension-by-concatenation machinery."""

    img_a: str
    img_b: str

    def image(self, letter: str) -> str:
        if letter == "a":
            return self.img_a
        if letter == "b":
            return self.img_b
        raise ValueError(f"not a letter: {letter!r}")

    def apply(self, word: str) -> str:
        """Image of a reduced word, freely reduced."""
        pieces = []
        for c in word:
            if c in "ab":
                pieces.append(self.image(c))
            elif c in "AB":
                pieces.append(words.invert_word(self.image(c.lower())))
            else:
                raise ValueError(f"not a signed letter: {c!r}")
        out = ""
        for piece in pieces:
            out = words.reduce_concat(out, piece)
        return out

    def matrix(self) -> Mat2:
        na_a, nb_a = words.abelianize(self.img_a)
        na_b, nb_b = words.abelianize(self.img_b)
        return Mat2(na_a, na_b, nb_a, nb_b)

    def det(self) -> int:
        return self.matrix().det()

    def is_unimodular(self) -> bool:
        return self.det() in (1, -1)


@dataclass(frozen=True)
class Substitution(_MorphismBase):
    """Positive morphism: both letter images nonempty words over ab."""

    img_a: str
    img_b: str

    def __post_init__(self):
        for img in (self.img_a, self.img_b):
            if not img:
                raise ValueError("substitution images must be nonempty")
            words.check_positive(img)

    def apply_positive(self, word: str) -> str:
        """Image of a positive word (no reduction needed)."""
        return "".join(self.image(c) for c in word)

    def compose(self, other: "Substitution | FreeEndo"):
        """self after other: (self . other)(x) = self(other(x))."""
        if isinstance(other, Substitution):
            return Substitution(
                self.apply_positive(other.img_a), self.apply_positive(other.img_b)
            )
        return FreeEndo(self.apply(other.img_a), self.apply(other.img_b))

    def power(self, n: int) -> "Substitution":
        if n < 1:
            raise ValueError("power must be >= 1")
        out = self
        for _ in range(n - 1):
            out = out.compose(self)
        return out

    def is_primitive(self) -> bool:
        return self.matrix().is_primitive()

    def __str__(self):
        return f"a->{self.img_a},b->{self.img_b}"


@dataclass(frozen=True)
class FreeEndo(_MorphismBase):
    """General endomorphism of the rank-2 free group."""

    img_a: str
    img_b: str

    def __post_init__(self):
        words.check_reduced(self.img_a)
        words.check_reduced(self.img_b)

    def compose(self, other: "Substitution | FreeEndo") -> "FreeEndo":
        return FreeEndo(self.apply(other.img_a), self.apply(other.img_b))

    def power(self, n: int) -> "FreeEndo":
        if n < 1:
            raise ValueError("power must be >= 1")
        out = self
        for _ in range(n - 1):
            out = out.compose(self)
        return out

    def __str__(self):
        return f"a->{words.format_word(self.img_a)},b->{words.format_word(self.img_b)}"


IDENTITY = Substitution("a", "b")


_RULE_RE = re.compile(r"^([ab])->([abAB]*)$")


def _parse_rules(text: str) -> dict[str, str]:
    compact = "".join(text.split())
    parts = [p for p in re.split(r"[,;]", compact) if p]
    rules: dict[str, str] = {}
    offset = 0
    for part in parts:
        m = _RULE_RE.match(part)
        if not m:
            raise ParseError(f"bad substitution rule {part!r}", text.find(part))
        letter, image = m.group(1), m.group(2)
        if letter in rules:
            raise ParseError(f"duplicate rule for {letter!r}")
        rules[letter] = image
        offset += len(part)
    if set(rules) != {"a", "b"}:
        raise ParseError("need exactly one rule for each of a and b")
    return rules


def parse_substitution(text: str) -> Substitution:
    """Parse ``a->W,b->W`` with W nonempty over ab (``;`` also separates)."""
    rules = _parse_rules(text)
    for letter, image in rules.items():
        if not image or not words.is_positive(image):
            raise ParseError(f"rule for {letter!r} must be a nonempty word over ab")
    return Substitution(rules["a"], rules["b"])


def parse_endo(text: str) -> FreeEndo:
    """Parse ``a->W,b->W`` with W over abAB (``e`` allowed for empty)."""
    rules = _parse_rules(text)
    return FreeEndo(
        words.reduce_word(rules["a"] if rules["a"] != "e" else ""),
        words.reduce_word(rules["b"] if rules["b"] != "e" else ""),
    )


# ---------------------------------------------------------------------------
# Fixed points and factor languages
# ---------------------------------------------------------------------------


def fixed_point_prefix(sigma: Substitution, n: int) -> str:
    """Length-n prefix of the one-sided fixed point of a power of sigma.

    Uses the smallest power p <= 4 whose image of some letter starts
    with that letter (p <= 2 suffices for primitive substitutions; 4 is
    a defensive bound).
    """
    if n < 0:
        raise ValueError("prefix length must be >= 0")
    tau = None
    seed = None
    power = sigma
    for _ in range(4):
        for letter in "ab":
            if power.image(letter).startswith(letter) and len(power.image(letter)) > 1:
                tau, seed = power, letter
                break
        if tau:
            break
        power = power.compose(sigma)
    if tau is None:
        raise SturmdualError("no expanding letter-fixed power <= 4; not primitive")
    word = seed
    while len(word) < n:
        word = tau.apply_positive(word)
    prefix = word[:n]
    assert tau.apply_positive(prefix).startswith(prefix)
    return prefix


def factor_language(sigma: Substitution, max_len: int) -> set[str]:
    """All words of length <= max_len occurring in some iterated letter image.

    Levels sigma^k(a), sigma^k(b) are scanned until both images are at
    least twice max_len long (their factor sets only grow with k), then
    the collection is completed to closure: the images of all top-length
    members may not contribute new factors.
    """
    if max_len < 1:
        return set()
    if not sigma.is_primitive():
        raise SturmdualError("factor language requires a primitive substitution")
    found: set[str] = set()
    wa, wb = "a", "b"
    guard = 2 * max_len
    for _ in range(64):
        for w in (wa, wb):
            _collect_factors(w, max_len, found)
        if min(len(wa), len(wb)) >= guard:
            break
        wa, wb = sigma.apply_positive(wa), sigma.apply_positive(wb)
    else:
        raise SturmdualError("factor language did not reach its length guard")
    # closure over images of the longest factors
    pending = sorted(w for w in found if len(w) == max_len)
    processed: set[str] = set()
    while pending:
        w = pending.pop()
        if w in processed:
            continue
        processed.add(w)
        fresh: set[str] = set()
        _collect_factors(sigma.apply_positive(w), max_len, found, fresh)
        pending.extend(x for x in fresh if len(x) == max_len)
    return found


def _collect_factors(word: str, max_len: int, into: set[str], fresh=None):
    n = len(word)
    for length in range(1, min(max_len, n) + 1):
        for i in range(n - length + 1):
            piece = word[i : i + length]
            if piece not in into:
                into.add(piece)
                if fresh is not None:
                    fresh.add(piece)


def factor_set(sigma: Substitution, n: int) -> set[str]:
    """All length-n factors of the substitution language."""
    return {w for w in factor_language(sigma, n) if len(w) == n}


def complexity_profile(sigma: Substitution, max_len: int) -> list[int]:
    """Factor counts p(1), ..., p(max_len)."""
    lang = factor_language(sigma, max_len)
    counts = [0] * max_len
    for w in lang:
        counts[len(w) - 1] += 1
    return counts


def is_sturmian_language(sigma: Substitution, max_len: int) -> bool:
    """p(n) = n + 1 for all n <= max_len."""
    return complexity_profile(sigma, max_len) == [n + 1 for n in range(1, max_len + 1)]


def hulls_equal_upto(sigma: Substitution, rho: Substitution, max_len: int) -> bool:
    """Finite certificate: equal factor sets at every length <= max_len.

    A necessary condition for equal hulls; conclusive as a refutation.
    """
    return factor_language(sigma, max_len) == factor_language(rho, max_len)


def conjugate_power_search(
    sigma: Substitution, rho: Substitution, kmax: int
) -> tuple[int, int, str] | None:
    """Search k, m <= kmax with equal matrix powers and a conjugating word.

    Returns (k, m, witness) for the first power pair (ordered by k + m,
    then k) whose matrices agree and whose powers are conjugate; None
    when no power pair matches.
    """
    from .invert import find_conjugator

    ms = sigma.matrix()
    mr = rho.matrix()
    pairs = sorted(
        ((k, m) for k in range(1, kmax + 1) for m in range(1, kmax + 1)),
        key=lambda km: (km[0] + km[1], km[0]),
    )
    for k, m in pairs:
        if ms.power(k) != mr.power(m):
            continue
        witness = find_conjugator(sigma.power(k), rho.power(m))
        if witness is not None:
            return (k, m, witness)
    return None
