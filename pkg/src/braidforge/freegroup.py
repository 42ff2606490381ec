"""Reduced words in finitely generated free groups, and their endomorphisms.

A word in the free group on t_1, ..., t_rank is a fully reduced sequence of
signed generator indices: the letter ``i`` stands for t_i and ``-i`` for
t_i^-1.  Every constructor reduces, so equality of group elements is plain
sequence equality.

Endomorphisms compose under the right-action convention: ``compose(a, b)``
is the map "apply a, then b".  Conjugation is ``u^v = v^-1 u v`` and the
commutator is ``[u, v] = u v u^-1 v^-1``.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Word",
    "Endomorphism",
    "WordError",
    "WordLengthError",
    "max_word_len",
    "reduce",
    "word",
    "multiply",
    "invert",
    "conjugate",
    "commutator",
    "apply",
    "compose",
    "identity",
    "abelianize",
    "word_to_text",
    "word_from_text",
]

DEFAULT_MAX_WORD_LEN = 10**6
_MAX_LEN_ENV = "BRAIDFORGE_MAX_WORD_LEN"


class WordError(ValueError):
    """Malformed word data: bad letter, rank mismatch, or parse failure."""


class WordLengthError(WordError):
    """An intermediate word outgrew the BRAIDFORGE_MAX_WORD_LEN cap."""


def max_word_len() -> int:
    raw = os.environ.get(_MAX_LEN_ENV)
    if raw is None:
        return DEFAULT_MAX_WORD_LEN
    try:
        value = int(raw)
    except ValueError as exc:
        raise WordError(f"{_MAX_LEN_ENV} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise WordError(f"{_MAX_LEN_ENV} must be positive, got {value}")
    return value


def _check_letters(letters: Iterable[int], rank: int) -> None:
    for x in letters:
        if x == 0 or abs(x) > rank:
            raise WordError(f"letter {x} out of range for rank {rank}")


def _reduce_list(letters: Iterable[int]) -> list[int]:
    out: list[int] = []
    push = out.append
    pop = out.pop
    for x in letters:
        if out and out[-1] == -x:
            pop()
        else:
            push(x)
    return out


@dataclass(frozen=True)
class Word:
    """A reduced word in the free group of the given rank.

    Instances are immutable; build them through :func:`word` or the group
    operations, which always reduce.
    """

    rank: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise WordError(f"rank must be positive, got {self.rank}")
        _check_letters(self.letters, self.rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else invert(self)
        out = Word(self.rank, ())
        for _ in range(abs(k)):
            out = multiply(out, base)
        return out

    def __str__(self) -> str:
        return word_to_text(self)


def reduce(letters: Sequence[int], rank: int) -> Word:
    """Freely reduce a raw signed-index sequence into a Word."""
    _check_letters(letters, rank)
    return Word(rank, tuple(_reduce_list(letters)))


def word(rank: int, letters: Sequence[int]) -> Word:
    return reduce(letters, rank)


def _same_rank(u: Word, v: Word) -> None:
    if u.rank != v.rank:
        raise WordError(f"rank mismatch: {u.rank} != {v.rank}")


def multiply(u: Word, v: Word) -> Word:
    _same_rank(u, v)
    out = list(u.letters)
    for x in v.letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return Word(u.rank, tuple(out))


def invert(u: Word) -> Word:
    return Word(u.rank, tuple(-x for x in reversed(u.letters)))


def conjugate(u: Word, v: Word) -> Word:
    """u^v = v^-1 u v."""
    _same_rank(u, v)
    return multiply(multiply(invert(v), u), v)


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    _same_rank(u, v)
    return multiply(multiply(u, v), multiply(invert(u), invert(v)))


def abelianize(u: Word) -> tuple[int, ...]:
    """Exponent-sum vector of the word, one entry per generator."""
    counts = [0] * u.rank
    for x in u.letters:
        if x > 0:
            counts[x - 1] += 1
        else:
            counts[-x - 1] -= 1
    return tuple(counts)


@dataclass(frozen=True)
class Endomorphism:
    """An endomorphism of the free group, stored by generator images."""

    rank: int
    images: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.rank:
            raise WordError(f"need {self.rank} images, got {len(self.images)}")
        for img in self.images:
            if img.rank != self.rank:
                raise WordError("image rank mismatch")

    def __call__(self, u: Word) -> Word:
        return apply(self, u)

    def __mul__(self, other: "Endomorphism") -> "Endomorphism":
        return compose(self, other)


def identity(rank: int) -> Endomorphism:
    return Endomorphism(rank, tuple(Word(rank, (i,)) for i in range(1, rank + 1)))


def apply(e: Endomorphism, u: Word) -> Word:
    """Image of a word under an endomorphism, fully reduced."""
    if e.rank != u.rank:
        raise WordError(f"rank mismatch: {e.rank} != {u.rank}")
    cap = max_word_len()
    out: list[int] = []
    for x in u.letters:
        img = e.images[abs(x) - 1].letters
        if x < 0:
            img = tuple(-y for y in reversed(img))
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
        if len(out) > cap:
            raise WordLengthError(
                f"intermediate word exceeded {cap} letters; "
                f"raise {_MAX_LEN_ENV} to allow larger computations"
            )
    return Word(u.rank, tuple(out))


def compose(a: Endomorphism, b: Endomorphism) -> Endomorphism:
    """Right-action product a*b = b after a: apply(compose(a,b), w) = b(a(w))."""
    if a.rank != b.rank:
        raise WordError(f"rank mismatch: {a.rank} != {b.rank}")
    return Endomorphism(a.rank, tuple(apply(b, img) for img in a.images))


_TOKEN_RE = re.compile(r"^t(\d+)(?:\^(-?\d+))?$")


def word_to_text(u: Word) -> str:
    """Render as juxtaposed tokens like ``t3 t3^-1``; the empty word is ``1``."""
    if not u.letters:
        return "1"
    parts = []
    for x in u.letters:
        parts.append(f"t{x}" if x > 0 else f"t{-x}^-1")
    return " ".join(parts)


def word_from_text(text: str, rank: int) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return Word(rank, ())
    letters: list[int] = []
    for token in text.split():
        m = _TOKEN_RE.match(token)
        if not m:
            raise WordError(f"bad word token {token!r}")
        idx = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) else 1
        if idx == 0 or idx > rank:
            raise WordError(f"generator t{idx} out of range for rank {rank}")
        if exp == 0:
            continue
        sign = 1 if exp > 0 else -1
        letters.extend([sign * idx] * abs(exp))
    return reduce(letters, rank)
