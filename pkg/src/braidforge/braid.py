"""Braid words, the Artin representation, and pure braid machinery.

Braid words are unreduced sequences of signed Artin generator indices:
``i`` means sigma_i, ``-i`` means sigma_i^-1.  Products concatenate, and
the word farther left acts first: artin(a*b) = compose(artin(a), artin(b))
under the right-action convention of :mod:`braidforge.freegroup`.

Equality of braids is decided through the Artin representation, which is
faithful, so two words are equal in the braid group exactly when their
induced free-group endomorphisms agree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .freegroup import Endomorphism, Word, WordLengthError, max_word_len, _MAX_LEN_ENV
from .report import Report

__all__ = [
    "BraidWord",
    "StrandPermutation",
    "BraidError",
    "braid",
    "empty_braid",
    "artin",
    "braid_equal",
    "permutation",
    "pure_gen",
    "full_twist",
    "u_chain",
    "linking_numbers",
    "linking_pairs",
    "product",
    "pretty",
    "verify_braid_relations",
    "verify_pure_braid_relations",
    "braid_to_text",
    "braid_from_text",
]


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of B_n; no reduction is performed."""

    strands: int
    letters: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise BraidError(f"strand count must be positive, got {self.strands}")
        for x in self.letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise BraidError(f"letter {x} out of range for {self.strands} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise BraidError(f"strand mismatch: {self.strands} != {other.strands}")
        return BraidWord(self.strands, self.letters + other.letters)

    def __invert__(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else ~self
        return BraidWord(self.strands, base.letters * abs(k))

    def __str__(self) -> str:
        return braid_to_text(self)


def braid(n: int, letters: Iterable[int], name: str | None = None) -> BraidWord:
    return BraidWord(n, tuple(letters), name)


def empty_braid(n: int) -> BraidWord:
    return BraidWord(n, ())


def product(braids: Sequence[BraidWord], n: int | None = None) -> BraidWord:
    if not braids:
        if n is None:
            raise BraidError("empty product needs an explicit strand count")
        return empty_braid(n)
    out = braids[0]
    for b in braids[1:]:
        out = out * b
    return out


# Images of t_i, t_{i+1} under a single Artin generator, per the defining
# action: sigma_i sends t_i -> t_i t_{i+1} t_i^-1 and t_{i+1} -> t_i.
def _subst_letter(letters: list[int], gen: int, cap: int) -> list[int]:
    i = abs(gen)
    j = i + 1
    out: list[int] = []
    push = out.append
    pop = out.pop

    def emit(seq: tuple[int, ...]) -> None:
        for y in seq:
            if out and out[-1] == -y:
                pop()
            else:
                push(y)

    if gen > 0:
        table = {i: (i, j, -i), -i: (i, -j, -i), j: (i,), -j: (-i,)}
    else:
        table = {i: (j,), -i: (-j,), j: (-j, i, j), -j: (-j, -i, j)}
    for x in letters:
        rep = table.get(x)
        if rep is None:
            if out and out[-1] == -x:
                pop()
            else:
                push(x)
        else:
            emit(rep)
    if len(out) > cap:
        raise WordLengthError(
            f"Artin image exceeded {cap} letters; raise {_MAX_LEN_ENV} if intended"
        )
    return out


def artin(b: BraidWord) -> Endomorphism:
    """The Artin representation of a braid word as a free-group endomorphism."""
    n = b.strands
    cap = max_word_len()
    images: list[list[int]] = [[i] for i in range(1, n + 1)]
    for gen in b.letters:
        images = [_subst_letter(img, gen, cap) for img in images]
    return Endomorphism(n, tuple(Word(n, tuple(img)) for img in images))


def braid_equal(a: BraidWord, b: BraidWord) -> bool:
    """True iff the two words define the same element of B_n (faithfulness)."""
    if a.strands != b.strands:
        raise BraidError(f"strand mismatch: {a.strands} != {b.strands}")
    return artin(a) == artin(b)


@dataclass(frozen=True)
class StrandPermutation:
    """The start-position to end-position map induced by a braid word."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, self.n + 1)):
            raise BraidError(f"not a permutation of [{self.n}]: {self.images}")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def of_set(self, items: Iterable[int]) -> frozenset[int]:
        return frozenset(self.images[i - 1] for i in items)

    def inverse(self) -> "StrandPermutation":
        inv = [0] * self.n
        for start, end in enumerate(self.images, start=1):
            inv[end - 1] = start
        return StrandPermutation(self.n, tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))


def permutation(b: BraidWord) -> StrandPermutation:
    """Strand permutation of a braid word, sign-insensitive per letter."""
    at = list(range(1, b.strands + 1))
    for x in b.letters:
        i = abs(x) - 1
        at[i], at[i + 1] = at[i + 1], at[i]
    images = [0] * b.strands
    for pos, label in enumerate(at, start=1):
        images[label - 1] = pos
    return StrandPermutation(b.strands, tuple(images))


def pure_gen(i: int, j: int, n: int) -> BraidWord:
    """A_{i,j} = s_{j-1} ... s_{i+1} s_i^2 s_{i+1}^-1 ... s_{j-1}^-1."""
    if not (1 <= i < j <= n):
        raise BraidError(f"need 1 <= i < j <= n, got ({i}, {j}, {n})")
    letters = list(range(j - 1, i, -1)) + [i, i] + [-k for k in range(i + 1, j)]
    return BraidWord(n, tuple(letters), name=f"A[{i},{j}]")


def full_twist(V: Iterable[int], n: int) -> BraidWord:
    """Full twist A_V on the strand set V; a singleton gives the empty braid."""
    ks = sorted(set(V))
    if not ks:
        raise BraidError("full twist needs a nonempty strand set")
    if ks[0] < 1 or ks[-1] > n:
        raise BraidError(f"strand indices {ks} out of range for n={n}")
    letters: list[int] = []
    for t in range(1, len(ks)):
        for s in range(t):
            letters.extend(pure_gen(ks[s], ks[t], n).letters)
    return BraidWord(n, tuple(letters), name="A[" + ",".join(map(str, ks)) + "]")


def u_chain(r: int, s: int, n: int) -> BraidWord:
    """U_{r,s} = A_{r,r+1} A_{r,r+2} ... A_{r,s}; empty when s = r."""
    if not (1 <= r <= s <= n):
        raise BraidError(f"need 1 <= r <= s <= n, got ({r}, {s}, {n})")
    letters: list[int] = []
    for k in range(r + 1, s + 1):
        letters.extend(pure_gen(r, k, n).letters)
    return BraidWord(n, tuple(letters), name=f"U[{r},{s}]")


def linking_numbers(b: BraidWord) -> list[list[int]]:
    """Linking matrix of a pure braid: half the signed crossings per strand pair.

    This is the abelianization of P_n onto the free abelian group on the
    A_{i,j}, computed by direct crossing counting, independently of the
    Artin representation.
    """
    if not permutation(b).is_identity:
        raise BraidError("linking numbers are defined for pure braids only")
    n = b.strands
    counts = [[0] * n for _ in range(n)]
    at = list(range(n))
    for x in b.letters:
        i = abs(x) - 1
        a, c = at[i], at[i + 1]
        sign = 1 if x > 0 else -1
        counts[a][c] += sign
        counts[c][a] += sign
        at[i], at[i + 1] = at[i + 1], at[i]
    for a in range(n):
        for c in range(n):
            if counts[a][c] % 2 != 0:
                raise BraidError("odd crossing count on a pure braid")
            counts[a][c] //= 2
    return counts


def linking_pairs(b: BraidWord) -> dict[tuple[int, int], int]:
    """Nonzero linking entries as {(i, j): value} with i < j, 1-based."""
    m = linking_numbers(b)
    out = {}
    for i in range(b.strands):
        for j in range(i + 1, b.strands):
            if m[i][j]:
                out[(i + 1, j + 1)] = m[i][j]
    return out


def braid_relation_instances(n: int) -> list[tuple[str, BraidWord, BraidWord]]:
    """All defining relations of B_n as (name, lhs, rhs) word pairs."""
    if n < 2:
        raise BraidError("need n >= 2")
    out = []
    for i in range(1, n - 1):
        out.append(
            (
                f"s{i} s{i+1} s{i} = s{i+1} s{i} s{i+1}",
                braid(n, (i, i + 1, i)),
                braid(n, (i + 1, i, i + 1)),
            )
        )
    for i in range(1, n):
        for j in range(i + 2, n):
            out.append((f"s{i} s{j} = s{j} s{i}", braid(n, (i, j)), braid(n, (j, i))))
    return out


def _pure_rel_rhs(i: int, j: int, k: int, l: int, n: int) -> BraidWord:
    A = lambda a, b: pure_gen(a, b, n)
    if k == i or k == j:
        c = A(i, l) * A(j, l)
    elif i < k < j:
        ail, ajl = A(i, l), A(j, l)
        c = ail * ajl * ~ail * ~ajl
    else:
        return A(k, l)
    return c * A(k, l) * ~c


def pure_braid_relation_instances(n: int) -> list[tuple[str, BraidWord, BraidWord]]:
    """All pure braid relation instances A_{i,j}^-1 A_{k,l} A_{i,j} = rhs."""
    if n < 2:
        raise BraidError("need n >= 2")
    out = []
    for j in range(2, n + 1):
        for i in range(1, j):
            for l in range(j + 1, n + 1):
                for k in range(1, l):
                    conj = pure_gen(i, j, n)
                    lhs = ~conj * pure_gen(k, l, n) * conj
                    rhs = _pure_rel_rhs(i, j, k, l, n)
                    if k == i or k == j:
                        case = "k=i" if k == i else "k=j"
                    elif i < k < j:
                        case = "i<k<j"
                    else:
                        case = "otherwise"
                    out.append(
                        (f"A[{i},{j}]^-1 A[{k},{l}] A[{i},{j}] ({case})", lhs, rhs)
                    )
    return out


def verify_braid_relations(n: int) -> Report:
    """Check every defining relation of B_n through the Artin representation."""
    report = Report(f"braid relations, n={n}")
    for name, lhs, rhs in braid_relation_instances(n):
        report.add(name, braid_equal(lhs, rhs))
    return report


def verify_pure_braid_relations(n: int) -> Report:
    """Check every instance of the pure braid relations A_{i,j}^-1 A_{k,l} A_{i,j}."""
    report = Report(f"pure braid relations, n={n}")
    for name, lhs, rhs in pure_braid_relation_instances(n):
        report.add(name, braid_equal(lhs, rhs))
    return report


def braid_to_text(b: BraidWord) -> str:
    """Space-separated signed integers; the trivial braid is the empty string."""
    return " ".join(str(x) for x in b.letters)


def pretty(b: BraidWord) -> str:
    return b.name if b.name is not None else braid_to_text(b)


def braid_from_text(text: str, n: int) -> BraidWord:
    text = text.strip()
    if not text:
        return empty_braid(n)
    try:
        letters = tuple(int(tok) for tok in text.split())
    except ValueError as exc:
        raise BraidError(f"bad braid text {text!r}") from exc
    return BraidWord(n, letters)
