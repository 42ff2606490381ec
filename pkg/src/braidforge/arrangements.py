"""Type-B tower data, monomial arrangement flats, and presentation assembly.

The type-B arrangement on n coordinates is sliced by a generic line into
2n+1 real fiber lines; its braid monodromy has a closed form in the pure
braid generators which this module builds and cross-checks against the
wiring-diagram computation.  The monomial arrangement's codimension-two
flats and the iterated semidirect-product presentations of both towers are
assembled here as well.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from . import monomial as mono
from .braid import BraidWord, artin, braid_equal, full_twist, permutation, pure_gen, u_chain
from .freegroup import Word, invert, multiply, reduce as reduce_word
from .report import Report
from .wiring import RealLine, braid_monodromy, real_line, wiring_from_real_lines

__all__ = [
    "Hyperplane",
    "FlatC2",
    "BSym",
    "TowerLevel",
    "Presentation",
    "typeb_lines",
    "typeb_meridian_symbols",
    "typeb_monodromy_closed",
    "typeb_wiring_cross_check",
    "exponents",
    "monomial_flats",
    "build_typeb_tower",
    "build_monomial_tower",
    "assemble_presentation",
    "format_presentation",
    "pbn_table_cells",
    "verify_pbn_table",
]


class ArrangementError(ValueError):
    pass


# ---------------------------------------------------------------------------
# type-B line data and closed-form monodromy


def _b_coeff(k: int) -> int:
    return 0 if k == 1 else math.factorial(2 * k + 1)


def typeb_lines(n: int) -> list[RealLine]:
    """The 2n+1 fiber lines z = 0, z = +-(k x + b_k) with b_k = (2k+1)!.

    Returned in increasing slope order, which is also the height order at
    the basepoint far to the right.
    """
    if n < 1:
        raise ArrangementError("need n >= 1")
    lines = [real_line(-k, -_b_coeff(k)) for k in range(n, 0, -1)]
    lines.append(real_line(0, 0))
    lines.extend(real_line(k, _b_coeff(k)) for k in range(1, n + 1))
    return lines


class BSym(NamedTuple):
    """A type-B meridian symbol: c_j, a_{i,j}, or b_{i,j} (i = 0 for c)."""

    kind: str
    i: int
    j: int

    def label(self) -> str:
        if self.kind == "c":
            return f"c[{self.j}]"
        return f"{self.kind}[{self.i},{self.j}]"


def c_sym(j: int) -> BSym:
    return BSym("c", 0, j)


def a_sym(i: int, j: int) -> BSym:
    return BSym("a", i, j)


def b_sym(i: int, j: int) -> BSym:
    return BSym("b", i, j)


def typeb_meridian_symbols(n: int) -> list[BSym]:
    """Meridian names in wiring-event order (decreasing intersection x).

    c_j sits at x = -b_j/j, a_{i,j} at the slope-difference point, and
    b_{i,j} at the slope-sum point; the order is recomputed from the exact
    values rather than assumed.
    """
    points: list[tuple[Fraction, BSym]] = []
    for j in range(1, n + 1):
        points.append((Fraction(-_b_coeff(j), j), c_sym(j)))
        for i in range(1, j):
            bi, bj = _b_coeff(i), _b_coeff(j)
            points.append((Fraction(-(bj - bi), j - i), a_sym(i, j)))
            points.append((Fraction(-(bj + bi), j + i), b_sym(i, j)))
    points.sort(key=lambda t: t[0], reverse=True)
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ArrangementError("type-B intersection points are not distinct")
    return [sym for _, sym in points]


def typeb_monodromy_closed(n: int) -> dict[BSym, BraidWord]:
    """Closed-form braid monodromy chi: PB_n -> P_{2n+1} on all meridians."""
    if n < 1:
        raise ArrangementError("need n >= 1")
    N = 2 * n + 1
    chi: dict[BSym, BraidWord] = {}
    for j in range(1, n + 1):
        u = u_chain(n - j + 1, n, N)
        chi[c_sym(j)] = u * full_twist({n - j + 1, n + 1, n + j + 1}, N) * ~u
        for i in range(1, j):
            ua = u_chain(n - j + 1, n - i, N)
            chi[a_sym(i, j)] = (
                pure_gen(n + i + 1, n + j + 1, N)
                * ua
                * pure_gen(n - j + 1, n - i + 1, N)
                * ~ua
            )
            ub = u_chain(n - j + 1, n + i, N)
            chi[b_sym(i, j)] = (
                pure_gen(n - i + 1, n + j + 1, N)
                * ub
                * pure_gen(n - j + 1, n + i + 1, N)
                * ~ub
            )
    return chi


def typeb_wiring_cross_check(n: int) -> Report:
    """braid_equal of each closed-form braid against the wiring computation."""
    report = Report(f"type-B closed form vs wiring, n={n}")
    gens = braid_monodromy(wiring_from_real_lines(typeb_lines(n)))
    symbols = typeb_meridian_symbols(n)
    if len(gens) != len(symbols):
        report.add("event count equals meridian count", False,
                   f"{len(gens)} events vs {len(symbols)} meridians")
        return report
    chi = typeb_monodromy_closed(n)
    for g, sym in zip(gens, symbols):
        report.add(
            f"chi({sym.label()}) = gamma(u_{g.index})",
            braid_equal(chi[sym], g.braid),
        )
    return report


def exponents(kind: str, *params: int) -> list[int]:
    """Fiber-type exponents: type-B n gives odd numbers, monomial gives r(j-1)+1."""
    if kind == "typeb":
        (n,) = params
        return [2 * j - 1 for j in range(1, n + 1)]
    if kind == "monomial":
        r, n = params
        return [r * (j - 1) + 1 for j in range(1, n + 1)]
    raise ArrangementError(f"unknown arrangement kind {kind!r}")


# ---------------------------------------------------------------------------
# monomial arrangement flats


class Hyperplane(NamedTuple):
    """A monomial-arrangement hyperplane: H_j when i = p = 0, else H^{(p)}_{i,j}."""

    i: int
    j: int
    p: int

    def label(self) -> str:
        if self.i == 0:
            return f"H[{self.j}]"
        return f"H[{self.i},{self.j};{self.p}]"

    @property
    def level(self) -> int:
        return self.j


def z_hyp(j: int) -> Hyperplane:
    return Hyperplane(0, j, 0)


def a_hyp(i: int, j: int, p: int) -> Hyperplane:
    return Hyperplane(i, j, p)


@dataclass(frozen=True)
class FlatC2:
    """A maximal codimension-two flat, as the hyperplanes containing it."""

    ids: tuple[Hyperplane, ...]

    def __post_init__(self) -> None:
        if len(self.ids) < 2 or len(set(self.ids)) != len(self.ids):
            raise ArrangementError(f"bad flat {self.ids}")


def monomial_hyperplanes(r: int, n: int) -> list[Hyperplane]:
    """All hyperplanes of the monomial arrangement, levels ascending."""
    out: list[Hyperplane] = []
    for j in range(1, n + 1):
        out.append(z_hyp(j))
        for i in range(1, j):
            out.extend(a_hyp(i, j, p) for p in range(1, r + 1))
    return out


def monomial_flats(r: int, n: int) -> list[FlatC2]:
    """Maximal codimension-two flats of the monomial arrangement.

    Each unordered pair of hyperplanes lies in exactly one listed flat;
    the test suite checks this against a brute-force intersection oracle
    over the cyclotomic field.
    """
    if r < 1 or n < 2:
        raise ArrangementError("need r >= 1 and n >= 2")
    flats: list[FlatC2] = []
    for j in range(1, n + 1):
        for l in range(j + 1, n + 1):
            big = (z_hyp(j),) + tuple(a_hyp(j, l, p) for p in range(1, r)) + (
                z_hyp(l),
                a_hyp(j, l, r),
            )
            flats.append(FlatC2(big))
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            for m in range(1, n + 1):
                if m in (k, l):
                    continue
                for q in range(1, r + 1):
                    flats.append(FlatC2((z_hyp(m), a_hyp(k, l, q))))
    pairs = [(i, j) for j in range(2, n + 1) for i in range(1, j)]
    for ai in range(len(pairs)):
        for bi in range(ai + 1, len(pairs)):
            (i, j), (k, l) = pairs[ai], pairs[bi]
            if {i, j} & {k, l}:
                continue
            for p in range(1, r + 1):
                for q in range(1, r + 1):
                    flats.append(FlatC2((a_hyp(i, j, p), a_hyp(k, l, q))))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for l in range(j + 1, n + 1):
                for p in range(1, r + 1):
                    for q in range(1, r + 1):
                        m = (p + q - 1) % r + 1
                        flats.append(
                            FlatC2((a_hyp(i, j, p), a_hyp(i, l, m), a_hyp(j, l, q)))
                        )
    return flats


# ---------------------------------------------------------------------------
# towers and presentations


@dataclass(frozen=True)
class TowerLevel:
    """One level of a fiber-type tower: its fiber rank and monodromy braids.

    ``braids`` maps every lower-level generator name to the pure braid it
    induces on this level's fiber strands.
    """

    level: int
    rank: int
    gen_names: tuple[str, ...]
    braids: dict[str, BraidWord]

    def __post_init__(self) -> None:
        if len(self.gen_names) != self.rank:
            raise ArrangementError("generator count disagrees with rank")
        for name, b in self.braids.items():
            if b.strands != self.rank:
                raise ArrangementError(f"braid for {name} has wrong strand count")
            if not permutation(b).is_identity:
                raise ArrangementError(f"braid for {name} is not pure")


@dataclass(frozen=True)
class GenInfo:
    name: str
    level: int
    position: int


@dataclass(frozen=True)
class Relation:
    conj: str
    target: str
    level: int
    rhs: Word


@dataclass(frozen=True)
class Presentation:
    """Iterated semidirect-product presentation: conjugation relations only."""

    generators: tuple[GenInfo, ...]
    relations: tuple[Relation, ...]


def build_typeb_tower(n: int) -> list[TowerLevel]:
    """Type-B tower; level j carries the closed-form braids of rank j-1."""
    levels = []
    for j in range(1, n + 1):
        rank = 2 * j - 1
        names = tuple(
            _typeb_position_name(q, j)
            for q in range(1, rank + 1)
        )
        braids: dict[str, BraidWord] = {}
        if j > 1:
            chi = typeb_monodromy_closed(j - 1)
            for sym, b in chi.items():
                braids[sym.label()] = b
        levels.append(TowerLevel(j, rank, names, braids))
    return levels


def _typeb_position_name(q: int, j: int) -> str:
    if q < j:
        return b_sym(j - q, j).label()
    if q == j:
        return c_sym(j).label()
    return a_sym(q - j, j).label()


def build_monomial_tower(r: int, n: int) -> list[TowerLevel]:
    """Monomial tower; level j's braids are the monomial braids at (r, j-1)."""
    levels = []
    for j in range(1, n + 1):
        rank = r * (j - 1) + 1
        names = ["Z[%d]" % j]
        for i in range(1, j):
            names.extend(f"A[{i},{j};{p}]" for p in range(1, r + 1))
        braids: dict[str, BraidWord] = {}
        if j > 1:
            prm = mono.params(r, j - 1)
            for t in range(1, j):
                braids[f"Z[{t}]"] = mono.Z(t, prm)
                for k in range(1, t):
                    for p in range(1, r + 1):
                        braids[f"A[{k},{t};{p}]"] = mono.A(k, t, p, prm)
        levels.append(TowerLevel(j, rank, tuple(names), braids))
    return levels


def assemble_presentation(tower: list[TowerLevel]) -> Presentation:
    """Emit the conjugation relations x^-1 y x = eta(x)(y) of the tower.

    For each lower generator x and each level-j generator y = t_q, the
    right-hand side is the Artin image of t_q under the stored braid for x,
    rewritten over level-j symbols.
    """
    gens: list[GenInfo] = []
    for lvl in tower:
        for pos, name in enumerate(lvl.gen_names, start=1):
            gens.append(GenInfo(name, lvl.level, pos))
    relations: list[Relation] = []
    for lvl in tower:
        lower = [g for g in gens if g.level < lvl.level]
        for g in lower:
            braid = lvl.braids.get(g.name)
            if braid is None:
                raise ArrangementError(f"tower level {lvl.level} lacks a braid for {g.name}")
            eta = artin(braid)
            for q in range(1, lvl.rank + 1):
                relations.append(
                    Relation(g.name, lvl.gen_names[q - 1], lvl.level, eta.images[q - 1])
                )
    return Presentation(tuple(gens), tuple(relations))


def format_presentation(pres: Presentation) -> str:
    lines = ["# generators: name (level, position)"]
    for g in pres.generators:
        lines.append(f"# {g.name} ({g.level}, {g.position})")
    by_level = {}
    for g in pres.generators:
        by_level.setdefault(g.level, []).append(g.name)
    for rel in pres.relations:
        names = by_level[rel.level]
        rhs = " ".join(
            names[abs(x) - 1] + ("" if x > 0 else "^-1") for x in rel.rhs.letters
        ) or "1"
        lines.append(f"{rel.conj}^-1 {rel.target} {rel.conj} = {rhs}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the type-B action table


@dataclass(frozen=True)
class TableCell:
    """One cell of the type-B action table: g^-1 y g = K y K^-1.

    ``conjugator`` is K as a list of (symbol, sign) over level-l symbols.
    Cells whose printed conjugator has no well-formed reading carry
    ``special=True`` and an optional emendation to test informationally.
    """

    name: str
    j: int
    l: int
    conj: BSym
    target: BSym
    conjugator: tuple[tuple[BSym, int], ...] | None
    special: bool = False
    emendation: tuple[tuple[BSym, int], ...] | None = None


def _abar(i: int, l: int) -> list[tuple[BSym, int]]:
    return [(a_sym(s, l), 1) for s in range(1, i)]


def _bbar(i: int, l: int) -> list[tuple[BSym, int]]:
    return [(b_sym(s, l), 1) for s in range(i - 1, 0, -1)]


def _inv(word: list[tuple[BSym, int]]) -> list[tuple[BSym, int]]:
    return [(sym, -sign) for sym, sign in reversed(word)]


def _bhat(i: int, l: int) -> list[tuple[BSym, int]]:
    bb = _bbar(i, l)
    return _inv(bb) + [(b_sym(i, l), 1)] + bb


def _comm(x: list[tuple[BSym, int]], y: list[tuple[BSym, int]]) -> list[tuple[BSym, int]]:
    return x + y + _inv(x) + _inv(y)


def pbn_table_cells(n: int) -> list[TableCell]:
    """Every action-table cell for all level pairs j < l <= n."""
    cells: list[TableCell] = []
    for l in range(2, n + 1):
        for j in range(1, l):
            conjs: list[BSym] = [c_sym(j)]
            for i in range(1, j):
                conjs.extend([a_sym(i, j), b_sym(i, j)])
            targets: list[BSym] = [c_sym(l)]
            for k in range(1, l):
                targets.extend([a_sym(k, l), b_sym(k, l)])
            for g in conjs:
                for y in targets:
                    cells.append(_table_cell(g, y, j, l))
    return cells


def _table_cell(g: BSym, y: BSym, j: int, l: int) -> TableCell:
    name = f"{g.label()}^-1 {y.label()} {g.label()}"
    i = g.i
    k = y.i
    al = lambda s: [(a_sym(s, l), 1)]
    bl = lambda s: [(b_sym(s, l), 1)]
    cl = [(c_sym(l), 1)]
    K: list[tuple[BSym, int]] | None
    special = False
    emend = None
    if g.kind == "a":
        if y.kind == "a":
            if k == i or k == j:
                K = al(i) + al(j)
            elif i < k < j:
                K = _comm(al(i), al(j))
            else:
                K = []
        elif y.kind == "b":
            if k == i:
                # printed conjugator references an unbound index; no reading
                K = None
                special = True
            elif k == j:
                K = bl(j) + _bbar(j, l) + _bhat(i, l) + _inv(_bbar(j, l))
            else:
                K = []
        else:
            K = []
    elif g.kind == "b":
        if y.kind == "a":
            if k < i or i < k < j:
                K = _comm(bl(i), al(j))
            elif k == i:
                tail = cl + _abar(i, l)
                K = _comm(bl(i), al(j)) + _inv(tail) + _bhat(j, l) + tail
            elif k == j:
                K = bl(i)
            else:
                K = []
        elif y.kind == "b":
            if k < i:
                K = _comm(bl(i), al(j))
            elif k == i:
                K = bl(i) + al(j)
            elif k == j:
                K = bl(j) + _comm(_bbar(j, l) + cl + _abar(i, l), al(i)) + al(i)
            else:
                K = []
        else:
            K = _comm(bl(i), al(j))
    else:  # g = c_j
        if y.kind == "a":
            if k < j:
                K = _comm(_bhat(j, l) + cl, al(j))
            elif k == j:
                K = _bhat(j, l) + cl
            else:
                K = []
        elif y.kind == "b":
            if k == j:
                # printed conjugator mixes in the level-j symbol c_j; test
                # the c_l reading informationally
                K = None
                special = True
                emend = tuple(bl(j) + _bbar(j, l) + cl + al(j) + _inv(_bbar(j, l)))
            else:
                K = []
        else:
            K = _bhat(j, l) + cl + al(j)
    return TableCell(
        name,
        j,
        l,
        g,
        y,
        None if K is None else tuple(K),
        special,
        emend,
    )


def _sym_position(sym: BSym, l: int) -> int:
    if sym.kind == "b":
        return l - sym.i
    if sym.kind == "c":
        return l
    return l + sym.i


def _sym_word(syms: Iterable[tuple[BSym, int]], l: int) -> Word:
    rank = 2 * l - 1
    letters = [sign * _sym_position(sym, l) for sym, sign in syms]
    return reduce_word(letters, rank)


def _word_as_symbols(w: Word, l: int) -> str:
    names = [_typeb_position_name(q, l) for q in range(1, 2 * l)]
    if not w.letters:
        return "1"
    return " ".join(names[abs(x) - 1] + ("" if x > 0 else "^-1") for x in w.letters)


def verify_pbn_table(n: int) -> Report:
    """Check the type-B action table against the computed monodromy.

    Each literal cell is evaluated as reduced words; the two cells without a
    well-formed printed conjugator are reported informationally with the
    computed right-hand side (and, for the c-on-b cell, whether the c_l
    emendation matches).
    """
    if not (2 <= n):
        raise ArrangementError("need n >= 2")
    report = Report(f"type-B action table, n={n}")
    chis: dict[int, dict[BSym, BraidWord]] = {}
    for cell in pbn_table_cells(n):
        l = cell.l
        chi = chis.setdefault(l - 1, typeb_monodromy_closed(l - 1))
        eta = artin(chi[cell.conj])
        q = _sym_position(cell.target, l)
        computed = eta.images[q - 1]
        if not cell.special:
            K = _sym_word(cell.conjugator, l)
            expected = multiply(multiply(K, Word(K.rank, (q,))), invert(K))
            report.add(cell.name, computed == expected)
            continue
        # no literal reading: peel the computed conjugator and report it
        w = _peel(computed, q)
        detail = f"computed: w tw^-1 with w = {_word_as_symbols(w, l)}"
        if cell.emendation is not None:
            K = _sym_word(cell.emendation, l)
            expected = multiply(multiply(K, Word(K.rank, (q,))), invert(K))
            detail += "; c_l reading %s" % ("matches" if expected == computed else "differs")
        report.add(f"{cell.name} [no literal reading]", True, detail)
    return report


def _peel(w: Word, core: int) -> Word:
    letters = w.letters
    m = len(letters)
    if m % 2 == 1 and letters[m // 2] == core:
        half = m // 2
        if all(letters[k] == -letters[m - 1 - k] for k in range(half)):
            return Word(w.rank, letters[:half])
    raise ArrangementError(f"image is not a conjugate of t{core}: {w}")
