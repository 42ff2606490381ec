"""Braided wiring diagrams and the braid monodromy of real line arrangements.

A wiring diagram on n wires is a sequence of events, one per multiple point
encountered while traversing a generic line from the right.  Each event
carries the consecutive-block partition I(j) of the current wire ordering
and the interleaving braid beta_{j,j+1} read on the way to the next event.
The local monodromy at an event is the squared half-twist Upsilon_{I(j)}^2,
and the global braid monodromy generators are

    gamma(u_j) = beta_j^-1 Upsilon_{I(j)}^2 beta_j,
    beta_1 = 1,  beta_{j+1} = beta_{j,j+1} Upsilon_{I(j)} beta_j.

Real line input is handled with exact rational arithmetic throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations as _perms

from .braid import (
    BraidWord,
    BraidError,
    artin,
    braid_equal,
    empty_braid,
    linking_numbers,
    permutation,
)
from .freegroup import Word, abelianize
from .report import Report

__all__ = [
    "ConsecutivePartition",
    "WiringDiagram",
    "MonodromyGenerator",
    "RealLine",
    "WiringError",
    "partition",
    "singletons",
    "real_line",
    "permutation_braid_mu",
    "upsilon",
    "braid_monodromy",
    "block_partition_V",
    "verify_twist_shape",
    "wiring_from_real_lines",
    "parse_wiring",
    "serialize_wiring",
]


class WiringError(ValueError):
    pass


@dataclass(frozen=True)
class ConsecutivePartition:
    """An ordered partition of {1,...,n} into intervals of consecutive integers."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        expect = 1
        for block in self.blocks:
            for k, x in enumerate(block):
                if x != expect + k:
                    raise WiringError(f"blocks not consecutive/ordered: {self.blocks}")
            expect += len(block)
        if expect != self.n + 1:
            raise WiringError(f"blocks do not cover [1,{self.n}]: {self.blocks}")

    def nontrivial_blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(b for b in self.blocks if len(b) > 1)

    def __str__(self) -> str:
        return "(" + " | ".join(" ".join(map(str, b)) for b in self.blocks) + ")"


def partition(n: int, blocks) -> ConsecutivePartition:
    return ConsecutivePartition(n, tuple(tuple(b) for b in blocks))


def singletons(n: int) -> ConsecutivePartition:
    return ConsecutivePartition(n, tuple((i,) for i in range(1, n + 1)))


@dataclass(frozen=True)
class WiringDiagram:
    """Events (I(j), beta_{j,j+1}) on n wires.

    The braid paired with the final event is the trailing braid: stored for
    fidelity to the diagram definition, never consulted by the monodromy.
    """

    n: int
    events: tuple[tuple[ConsecutivePartition, BraidWord], ...]

    def __post_init__(self) -> None:
        if not self.events:
            raise WiringError("a wiring diagram needs at least one event")
        for part, b in self.events:
            if part.n != self.n or b.strands != self.n:
                raise WiringError("event size disagrees with diagram strand count")

    @property
    def m(self) -> int:
        return len(self.events)


@dataclass(frozen=True)
class MonodromyGenerator:
    """One braid monodromy generator gamma(u_j) with its block data."""

    index: int
    braid: BraidWord
    blocks: tuple[tuple[int, ...], ...]
    conjugator: BraidWord

    def nontrivial_blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(b for b in self.blocks if len(b) > 1)


def permutation_braid_mu(block, n: int) -> BraidWord:
    """Half twist on an interval block: (s_i..s_{i+s-1})(s_i..s_{i+s-2})..(s_i)."""
    block = tuple(block)
    if not block:
        raise WiringError("mu needs a nonempty block")
    for k, x in enumerate(block):
        if x != block[0] + k:
            raise WiringError(f"mu needs an interval block, got {block}")
    if block[0] < 1 or block[-1] > n:
        raise WiringError(f"block {block} out of range for n={n}")
    i = block[0]
    letters: list[int] = []
    for top in range(block[-1] - 1, i - 1, -1):
        letters.extend(range(i, top + 1))
    return BraidWord(n, tuple(letters))


def upsilon(I: ConsecutivePartition) -> BraidWord:
    """Product of the half twists of all blocks of the partition."""
    out = empty_braid(I.n)
    for block in I.blocks:
        out = out * permutation_braid_mu(block, I.n)
    return out


def _conjugators(W: WiringDiagram) -> list[BraidWord]:
    betas = [empty_braid(W.n)]
    for j in range(W.m - 1):
        I, between = W.events[j]
        betas.append(between * upsilon(I) * betas[-1])
    return betas


def block_partition_V(W: WiringDiagram, j: int) -> tuple[tuple[int, ...], ...]:
    """Partition of [n] by original wire label of the lines meeting at event j.

    The wire entering event j at position p is the one beta_j carries there,
    so each block of I(j) transports through the strand permutation of
    beta_j back to basepoint labels.  Singleton blocks are retained so the
    result partitions [n].
    """
    if not (1 <= j <= W.m):
        raise WiringError(f"event index {j} out of range")
    beta = _conjugators(W)[j - 1]
    perm = permutation(beta)
    I = W.events[j - 1][0]
    blocks = [tuple(sorted(perm.of_set(block))) for block in I.blocks]
    return tuple(sorted(blocks, key=lambda b: b[0]))


def braid_monodromy(W: WiringDiagram) -> list[MonodromyGenerator]:
    """The pure braids gamma(u_j) = beta_j^-1 Upsilon_{I(j)}^2 beta_j, in order."""
    gens: list[MonodromyGenerator] = []
    beta = empty_braid(W.n)
    for j, (I, between) in enumerate(W.events, start=1):
        ups = upsilon(I)
        gamma = ~beta * ups * ups * beta
        if not permutation(gamma).is_identity:
            raise WiringError(f"monodromy generator {j} is not pure")
        perm = permutation(beta)
        blocks = tuple(
            sorted(
                (tuple(sorted(perm.of_set(b))) for b in I.blocks),
                key=lambda b: b[0],
            )
        )
        gens.append(MonodromyGenerator(j, gamma, blocks, beta))
        beta = between * ups * beta
    return gens


def _peel_conjugate(w: Word) -> tuple[Word, int]:
    """Split a reduced word of the form u t_s u^-1 into (u, s)."""
    letters = w.letters
    m = len(letters)
    if m % 2 == 0:
        raise WiringError(f"not a conjugate of a generator: {w}")
    half = m // 2
    core = letters[half]
    for k in range(half):
        if letters[k] != -letters[m - 1 - k]:
            raise WiringError(f"not a conjugate of a generator: {w}")
    if core < 0:
        raise WiringError(f"conjugate of an inverse generator: {w}")
    return Word(w.rank, letters[:half]), core


def verify_twist_shape(g: MonodromyGenerator, n: int) -> Report:
    """Check a monodromy generator against the commuting-full-twist shape.

    (a) its linking matrix is 1 exactly on pairs inside a common block;
    (b) each generator image reduces to w t_s w^-1 where abelianize(w) lies
        in the lattice spanned by the block's characteristic vector and e_s;
    (c) the braid equals the product of its per-block conjugated half-twist
        squares in every block order.
    """
    report = Report(f"twist shape, generator {g.index}")
    lk = linking_numbers(g.braid)
    in_block: dict[tuple[int, int], int] = {}
    for block in g.blocks:
        for a in block:
            for b in block:
                if a < b:
                    in_block[(a, b)] = 1
    ok = all(
        lk[a - 1][b - 1] == in_block.get((a, b), 0)
        for a in range(1, n + 1)
        for b in range(a + 1, n + 1)
    )
    report.add("linking pattern matches V(j)", ok)

    by_strand = {s: block for block in g.blocks for s in block}
    e = artin(g.braid)
    for s in range(1, n + 1):
        img = e.images[s - 1]
        try:
            w, core = _peel_conjugate(img)
        except WiringError:
            report.add(f"image of t{s} is a conjugate of t{s}", False, str(img))
            continue
        if core != s:
            report.add(f"image of t{s} is a conjugate of t{s}", False, str(img))
            continue
        block = by_strand[s]
        ab = abelianize(w)
        inside = {ab[k - 1] for k in block if k != s}
        outside_ok = all(ab[k - 1] == 0 for k in range(1, n + 1) if k not in block)
        report.add(
            f"conjugator of t{s} abelianizes into span(block, e{s})",
            outside_ok and len(inside) <= 1,
            f"block={block} ab={ab}",
        )

    nontrivial = g.nontrivial_blocks()
    perm_inv = permutation(g.conjugator).inverse()
    orders = list(_perms(range(len(nontrivial))))
    if len(orders) > 24:
        orders = [orders[0], orders[-1]]
    for order in orders:
        prod = empty_braid(n)
        for idx in order:
            positions = sorted(perm_inv(s) for s in nontrivial[idx])
            mu = permutation_braid_mu(positions, n)
            prod = prod * ~g.conjugator * mu * mu * g.conjugator
        report.add(
            f"per-block product, order {order}",
            braid_equal(prod, g.braid),
        )
    return report


@dataclass(frozen=True)
class RealLine:
    """The real line z = slope*x + intercept, with exact rational data."""

    slope: Fraction
    intercept: Fraction

    def value(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept


def real_line(slope, intercept) -> RealLine:
    return RealLine(Fraction(slope), Fraction(intercept))


def wiring_from_real_lines(lines: list[RealLine]) -> WiringDiagram:
    """Unbraided wiring diagram of a real line arrangement.

    Events are the distinct x-values of pairwise intersections, traversed by
    decreasing x; simultaneous intersections of disjoint subsets at one
    x-value form a single event with several nontrivial blocks.  Wires are
    numbered by increasing height at a basepoint right of every event, and
    all interleaving braids are trivial.
    """
    if len(lines) < 2:
        raise WiringError("need at least two lines")
    if len(set(lines)) != len(lines):
        raise WiringError("lines must be pairwise distinct")
    xs: set[Fraction] = set()
    for a in range(len(lines)):
        for b in range(a + 1, len(lines)):
            la, lb = lines[a], lines[b]
            if la.slope == lb.slope:
                continue
            xs.add((lb.intercept - la.intercept) / (la.slope - lb.slope))
    if not xs:
        raise WiringError("no intersections: parallel lines give no events")
    events_x = sorted(xs, reverse=True)

    n = len(lines)
    x0 = events_x[0] + 1
    base_order = sorted(lines, key=lambda l: l.value(x0))

    events: list[tuple[ConsecutivePartition, BraidWord]] = []
    for xe in events_x:
        # Vertical order just right of the event: by value at x_e, then slope.
        ordered = sorted(base_order, key=lambda l: (l.value(xe), l.slope))
        blocks: list[tuple[int, ...]] = []
        pos = 1
        while pos <= n:
            stop = pos
            while stop < n and ordered[stop].value(xe) == ordered[pos - 1].value(xe):
                stop += 1
            blocks.append(tuple(range(pos, stop + 1)))
            pos = stop + 1
        events.append((ConsecutivePartition(n, tuple(blocks)), empty_braid(n)))
    return WiringDiagram(n, tuple(events))


def parse_wiring(text: str) -> WiringDiagram:
    """Parse the line-oriented wiring format; see serialize_wiring for the shape."""
    n: int | None = None
    items: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            head = line.split()
            if len(head) != 2 or head[0] != "n":
                raise WiringError(f"line {lineno}: expected header 'n <int>'")
            try:
                n = int(head[1])
            except ValueError as exc:
                raise WiringError(f"line {lineno}: bad strand count") from exc
            continue
        if line.startswith("I:"):
            items.append(("I", line[2:].strip(), lineno))
        elif line.startswith("B:"):
            items.append(("B", line[2:].strip(), lineno))
        else:
            raise WiringError(f"line {lineno}: expected 'I:' or 'B:' line")
    if n is None:
        raise WiringError("missing 'n <int>' header")

    events: list[tuple[ConsecutivePartition, BraidWord]] = []
    current: ConsecutivePartition | None = None
    for kind, body, lineno in items:
        if kind == "I":
            if current is not None:
                events.append((current, empty_braid(n)))
            blocks = []
            for chunk in body.split("|"):
                entries = chunk.split()
                if not entries:
                    raise WiringError(f"line {lineno}: empty block in partition")
                try:
                    blocks.append(tuple(int(tok) for tok in entries))
                except ValueError as exc:
                    raise WiringError(f"line {lineno}: bad block entry") from exc
            current = ConsecutivePartition(n, tuple(blocks))
        else:
            if current is None:
                raise WiringError(f"line {lineno}: braid line before any partition")
            try:
                b = BraidWord(n, tuple(int(tok) for tok in body.split()))
            except (BraidError, ValueError) as exc:
                raise WiringError(f"line {lineno}: {exc}") from exc
            events.append((current, b))
            current = None
    if current is not None:
        events.append((current, empty_braid(n)))
    if not events:
        raise WiringError("diagram has no events")
    return WiringDiagram(n, tuple(events))


def serialize_wiring(W: WiringDiagram) -> str:
    lines = [f"n {W.n}"]
    for I, b in W.events:
        lines.append("I: " + " | ".join(" ".join(map(str, blk)) for blk in I.blocks))
        lines.append(("B: " + " ".join(map(str, b.letters))).rstrip())
    return "\n".join(lines) + "\n"
