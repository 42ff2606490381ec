from fractions import Fraction
from itertools import combinations

import pytest

from braidforge.arrangements import (
    ArrangementError,
    a_hyp,
    a_sym,
    assemble_presentation,
    b_sym,
    build_monomial_tower,
    build_typeb_tower,
    c_sym,
    exponents,
    format_presentation,
    monomial_flats,
    monomial_hyperplanes,
    pbn_table_cells,
    typeb_lines,
    typeb_meridian_symbols,
    typeb_monodromy_closed,
    typeb_wiring_cross_check,
    verify_pbn_table,
    z_hyp,
    TowerLevel,
)
from braidforge.braid import braid_equal, empty_braid, full_twist, pure_gen, u_chain
from braidforge.freegroup import abelianize, invert, multiply, word
from braidforge.wiring import wiring_from_real_lines


def test_typeb_lines_values():
    lines = typeb_lines(2)
    assert [(l.slope, l.intercept) for l in lines] == [
        (-2, -120),
        (-1, 0),
        (0, 0),
        (1, 0),
        (2, 120),
    ]
    assert len(typeb_lines(3)) == 7


def test_typeb_n1_single_event():
    W = wiring_from_real_lines(typeb_lines(1))
    assert W.m == 1
    assert W.events[0][0].blocks == ((1, 2, 3),)


def test_typeb_wiring_reproduces_b2_partitions():
    W = wiring_from_real_lines(typeb_lines(2))
    assert [I.blocks for I, _ in W.events] == [
        ((1,), (2, 3, 4), (5,)),
        ((1, 2), (3,), (4, 5)),
        ((1,), (2, 3, 4), (5,)),
        ((1, 2), (3,), (4, 5)),
    ]


def test_meridian_symbols_order():
    assert [s.label() for s in typeb_meridian_symbols(2)] == [
        "c[1]",
        "b[1,2]",
        "c[2]",
        "a[1,2]",
    ]
    syms3 = [s.label() for s in typeb_meridian_symbols(3)]
    assert syms3[:4] == ["c[1]", "b[1,2]", "c[2]", "a[1,2]"]
    assert syms3[4:] == ["b[2,3]", "b[1,3]", "c[3]", "a[1,3]", "a[2,3]"]


def test_closed_form_small_values():
    chi = typeb_monodromy_closed(2)
    assert braid_equal(chi[c_sym(1)], full_twist({2, 3, 4}, 5))
    A = lambda i, j: pure_gen(i, j, 5)
    assert braid_equal(chi[a_sym(1, 2)], A(1, 2) * A(4, 5))
    want_b = A(2, 5) * u_chain(1, 3, 5) * A(1, 4) * ~u_chain(1, 3, 5)
    assert braid_equal(chi[b_sym(1, 2)], want_b)


@pytest.mark.parametrize("n", [2, 3])
def test_closed_form_matches_wiring(n):
    rep = typeb_wiring_cross_check(n)
    assert rep.passed, rep.failures


def test_exponents():
    assert exponents("typeb", 3) == [1, 3, 5]
    assert exponents("monomial", 2, 3) == [1, 3, 5]
    assert exponents("monomial", 1, 3) == [1, 2, 3]
    with pytest.raises(ArrangementError):
        exponents("bogus", 1)


# ---------------------------------------------------------------------------
# flats and the cyclotomic brute-force oracle


class Cyc:
    """Elements of Q(zeta_r) as polynomials in zeta modulo the r-th cyclotomic."""

    def __init__(self, r, coeffs):
        self.r = r
        phi = _cyclotomic(r)
        cs = list(coeffs)
        while len(cs) >= len(phi):  # reduce degree by the minimal polynomial
            lead = cs.pop()
            if lead:
                for k, c in enumerate(phi[:-1]):
                    cs[len(cs) - len(phi) + 1 + k] -= lead * c
        cs += [Fraction(0)] * (len(phi) - 1 - len(cs))
        self.coeffs = tuple(Fraction(c) for c in cs)

    def __add__(self, other):
        return Cyc(self.r, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return Cyc(self.r, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        out = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Cyc(self.r, out)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)


def _cyclotomic(r):
    """Coefficients of the r-th cyclotomic polynomial, low degree first."""
    # divide x^r - 1 by the cyclotomic polynomials of the proper divisors
    poly = [Fraction(-1)] + [Fraction(0)] * (r - 1) + [Fraction(1)]
    for d in range(1, r):
        if r % d == 0:
            q = [Fraction(c) for c in _cyclotomic(d)]
            poly = _poly_div(poly, q)
    return poly


def _poly_div(num, den):
    num = num[:]
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        out[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    assert all(c == 0 for c in num[len(out) + len(den) - 2 :] + num[: len(den) - 1])
    return out


def _zeta_power(r, p):
    coeffs = [Fraction(0)] * (p % r) + [Fraction(1)]
    return Cyc(r, coeffs)


def _form(h, r, n):
    """Coefficient vector over Q(zeta_r) of the defining linear form."""
    zero = Cyc(r, [0])
    vec = [zero] * n
    one = Cyc(r, [1])
    if h.i == 0:
        vec[h.j - 1] = one
    else:
        vec[h.j - 1] = one
        vec[h.i - 1] = zero - _zeta_power(r, h.p)
    return vec


def _rank3(v1, v2, v3, r):
    """True if the three coefficient vectors are linearly independent."""
    n = len(v1)
    for cols in combinations(range(n), 3):
        det = _det3([[v[c] for c in cols] for v in (v1, v2, v3)], r)
        if not det.is_zero():
            return True
    return False


def _det3(m, r):
    def p(a, b, c):
        return m[0][a] * m[1][b] * m[2][c]

    return (
        p(0, 1, 2)
        - p(0, 2, 1)
        - p(1, 0, 2)
        + p(1, 2, 0)
        + p(2, 0, 1)
        - p(2, 1, 0)
    )


def brute_force_flats(r, n):
    """Group hyperplane pairs by their maximal flat, from the linear forms."""
    hyps = monomial_hyperplanes(r, n)
    forms = {h: _form(h, r, n) for h in hyps}
    flats = set()
    for h1, h2 in combinations(hyps, 2):
        members = set()
        for h3 in hyps:
            if h3 in (h1, h2):
                members.add(h3)
            elif not _rank3(forms[h1], forms[h2], forms[h3], r):
                members.add(h3)
        flats.add(frozenset(members))
    return flats


@pytest.mark.parametrize("r,n", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_monomial_flats_against_brute_force(r, n):
    ours = {frozenset(f.ids) for f in monomial_flats(r, n)}
    assert ours == brute_force_flats(r, n)


def test_monomial_flats_r2_n2_single_flat():
    flats = monomial_flats(2, 2)
    assert len(flats) == 1
    assert flats[0].ids == (z_hyp(1), a_hyp(1, 2, 1), z_hyp(2), a_hyp(1, 2, 2))


@pytest.mark.parametrize("r,n", [(1, 3), (2, 3), (3, 4), (2, 4)])
def test_every_pair_in_exactly_one_flat(r, n):
    flats = monomial_flats(r, n)
    seen = {}
    for f in flats:
        for pair in combinations(sorted(f.ids), 2):
            assert pair not in seen, f"pair {pair} in two flats"
            seen[pair] = f
    hyps = monomial_hyperplanes(r, n)
    assert len(seen) == len(hyps) * (len(hyps) - 1) // 2


def test_r2_flats_match_typeb_shape():
    # under a=A^{(2)}, b=A^{(1)}, c=Z the r=2 flats mirror the type-B wiring
    # blocks: one big flat per (j,l) and triples matching double points
    flats = monomial_flats(2, 2)
    assert {len(f.ids) for f in flats} == {4}
    flats3 = monomial_flats(2, 3)
    sizes = sorted(len(f.ids) for f in flats3)
    assert sizes == [2] * 6 + [3] * 4 + [4] * 3


# ---------------------------------------------------------------------------
# towers and presentations


def test_trivial_tower_direct_product():
    tower = [
        TowerLevel(1, 1, ("x",), {}),
        TowerLevel(2, 2, ("y1", "y2"), {"x": empty_braid(2)}),
    ]
    pres = assemble_presentation(tower)
    assert len(pres.relations) == 2
    for rel in pres.relations:
        assert rel.rhs.letters in ((1,), (2,))
    text = format_presentation(pres)
    assert "x^-1 y1 x = y1" in text


def test_typeb_tower_relation_count_and_abelianization():
    tower = build_typeb_tower(3)
    pres = assemble_presentation(tower)
    # sum over i<j of d_i * d_j with d = (1, 3, 5)
    assert len(pres.relations) == 1 * 3 + 1 * 5 + 3 * 5
    by_level = {}
    for g in pres.generators:
        by_level.setdefault(g.level, []).append(g.name)
    for rel in pres.relations:
        target_pos = by_level[rel.level].index(rel.target) + 1
        ab = abelianize(rel.rhs)
        assert ab[target_pos - 1] == 1
        assert all(v == 0 for k, v in enumerate(ab) if k != target_pos - 1)


def test_typeb_tower_reproduces_b2_table():
    tower = build_typeb_tower(3)
    pres = assemble_presentation(tower)
    # conjugation of t_3 by c_1 at level 3 has RHS (t2 t3 t4) t3 (t2 t3 t4)^-1
    t = lambda *xs: word(5, xs)
    rel = next(
        r for r in pres.relations if r.conj == "c[1]" and r.target == "c[3]"
    )
    wconj = t(2, 3, 4)
    assert rel.rhs == multiply(multiply(wconj, t(3)), invert(wconj))


def test_monomial_tower_matches_typeb_at_r2():
    # same tower shape: level ranks equal and relation counts agree
    tb = assemble_presentation(build_typeb_tower(3))
    mo = assemble_presentation(build_monomial_tower(2, 3))
    assert len(tb.relations) == len(mo.relations)


@pytest.mark.parametrize("n", [2, 3])
def test_pbn_table(n):
    rep = verify_pbn_table(n)
    assert rep.passed, rep.failures
    specials = [c for c in rep.checks if "no literal reading" in c.name]
    # exactly the two flagged conjugator cells appear per (j,l) instance:
    # a-on-b at k=i and c-on-b at k=j
    for c in specials:
        assert c.detail.startswith("computed:")
    names = [c.name for c in specials]
    assert all(("a[" in nm or "c[" in nm) for nm in names)


def test_pbn_table_special_cells_have_computed_rhs():
    rep = verify_pbn_table(2)
    specials = [c for c in rep.checks if "no literal reading" in c.name]
    assert len(specials) == 1  # only c[1]^-1 b[1,2] c[1] exists at n=2
    assert "c_l reading matches" in specials[0].detail


def test_pbn_cells_cover_expected_count():
    # n=3: (1,2): 1 conj x 3 targets; (1,3): 1 x 5; (2,3): 3 x 5
    assert len(pbn_table_cells(3)) == 3 + 5 + 15


@pytest.mark.parametrize("n", [4, 5])
def test_closed_form_matches_wiring_larger(n):
    assert typeb_wiring_cross_check(n).passed


def test_twist_shape_on_typeb_towers():
    from braidforge.wiring import braid_monodromy, verify_twist_shape

    for n in (3, 4):
        W = wiring_from_real_lines(typeb_lines(n))
        for g in braid_monodromy(W):
            rep = verify_twist_shape(g, W.n)
            assert rep.passed, rep.failures
