import random

import pytest

from braidforge.arrangements import (
    build_typeb_tower,
    monomial_flats,
    monomial_hyperplanes,
)
from braidforge.liealg import (
    HolonomyPresentation,
    LieElement,
    LieError,
    _echelon_insert,
    flat_relations,
    _rank_of_rows,
    bracket,
    check_lcs_additive,
    degree2_torsion_diagnostic,
    ft_bracket_relations,
    generator,
    graded_ranks,
    holonomy_relations_from_flats,
    lemma_brackets_transform,
    lyndon_basis,
    lyndon_words,
    monomial_bracket_relations,
    standard_factorization,
    witt_rank,
)


def test_witt_values():
    assert [witt_rank(2, k) for k in (1, 2, 3)] == [2, 1, 2]
    assert witt_rank(1, 1) == 1
    assert all(witt_rank(1, k) == 0 for k in range(2, 9))
    assert [witt_rank(3, k) for k in range(1, 6)] == [3, 3, 8, 18, 48]


def test_necklace_identity():
    for d in range(1, 6):
        for k in range(1, 9):
            assert d ** k == sum(
                m * witt_rank(d, m) for m in range(1, k + 1) if k % m == 0
            )


def test_lyndon_word_counts_match_witt():
    for d in range(1, 6):
        for k in range(1, 9 - d // 2):
            assert len(lyndon_words(d, k)) == witt_rank(d, k)


def test_lyndon_enumeration_by_brute_force():
    def is_lyndon(w):
        return all(w < w[s:] + w[:s] for s in range(1, len(w)))

    from itertools import product

    for d, k in [(2, 5), (3, 4)]:
        brute = sorted(
            w for w in product(range(1, d + 1), repeat=k) if is_lyndon(w)
        )
        assert list(lyndon_words(d, k)) == brute


def test_standard_factorization():
    assert standard_factorization((1, 2)) == ((1,), (2,))
    assert standard_factorization((1, 1, 2)) == ((1,), (1, 2))
    assert standard_factorization((1, 2, 2)) == ((1, 2), (2,))
    with pytest.raises(LieError):
        standard_factorization((1,))


def test_bracket_basics():
    x1, x2 = generator(1), generator(2)
    assert bracket(x1, x1).is_zero()
    assert bracket(x1, x2).terms == {(1, 2): 1}
    assert bracket(x2, x1).terms == {(1, 2): -1}


def basis_elements(d, max_deg):
    return [
        LieElement(k, {w: 1})
        for k in range(1, max_deg + 1)
        for w in lyndon_words(d, k)
    ]


def test_jacobi_exhaustive_small():
    elems = basis_elements(3, 2)
    for u in elems:
        for v in elems:
            for w in elems:
                if u.degree + v.degree + w.degree > 5:
                    continue
                lhs = bracket(u, bracket(v, w))
                rhs = bracket(v, bracket(u, w)) + bracket(bracket(u, v), w)
                assert (lhs - rhs).is_zero()
                assert (bracket(u, v) + bracket(v, u)).is_zero()


def test_degree_mismatch_raises():
    with pytest.raises(LieError):
        generator(1) + LieElement(2, {(1, 2): 1})


def test_flat_relation_example():
    rels = flat_relations([1, 2], 2)
    # [x_a + x_b, x_a] = [x_b, x_a] and [x_a + x_b, x_b] = [x_a, x_b]
    assert rels[0].terms == {(1, 2): -1}
    assert rels[1].terms == {(1, 2): 1}


def test_holonomy_from_flats_monomial22():
    hp = holonomy_relations_from_flats(monomial_flats(2, 2), monomial_hyperplanes(2, 2))
    assert hp.d == 4
    assert hp.levels == (1, 2, 2, 2)
    assert len(hp.relations) == 4
    # sum of the four relations of the single flat vanishes
    total = LieElement(2, {})
    for rel in hp.relations:
        total = total + rel
    assert total.is_zero()


def test_braid_arrangement_infinitesimal_relations():
    # flats of the braid arrangement on 3 strands: one triple flat
    rels = tuple(flat_relations([1, 2, 3], 3))
    pres = HolonomyPresentation(3, ("A12", "A13", "A23"), rels)
    assert graded_ranks(pres, 4) == [witt_rank(1, k) + witt_rank(2, k) for k in range(1, 5)]


def test_free_case_ranks_are_witt():
    pres = HolonomyPresentation(3, ("a", "b", "c"), ())
    assert graded_ranks(pres, 5) == [witt_rank(3, k) for k in range(1, 6)]


def test_monomial_22_ranks():
    hp = holonomy_relations_from_flats(monomial_flats(2, 2), monomial_hyperplanes(2, 2))
    assert graded_ranks(hp, 5, method="elimination") == [4, 3, 8, 18, 48]
    assert graded_ranks(hp, 5, method="tower") == [4, 3, 8, 18, 48]


@pytest.mark.parametrize("r,n", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_monomial_rank_equalities(r, n):
    hp = holonomy_relations_from_flats(monomial_flats(r, n), monomial_hyperplanes(r, n))
    exps = [r * (j - 1) + 1 for j in range(1, n + 1)]
    expect = [sum(witt_rank(d, k) for d in exps) for k in range(1, 6)]
    assert graded_ranks(hp, 5) == expect
    rep = check_lcs_additive(exps, graded_ranks(hp, 5))
    assert rep.passed


@pytest.mark.parametrize("r,n", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (3, 3)])
def test_explicit_relations_span_equalsflat_relations(r, n):
    flat_pres = holonomy_relations_from_flats(
        monomial_flats(r, n), monomial_hyperplanes(r, n)
    )
    thm_pres = monomial_bracket_relations(r, n)
    r1, piv1 = _rank_of_rows(dict(x.terms) for x in flat_pres.relations)
    r2, piv2 = _rank_of_rows(dict(x.terms) for x in thm_pres.relations)
    assert r1 == r2
    for rel in thm_pres.relations:
        assert not _echelon_insert(dict(piv1), dict(rel.terms))
    for rel in flat_pres.relations:
        assert not _echelon_insert(dict(piv2), dict(rel.terms))


def test_monomial_bracket_relations_families_present():
    thm = monomial_bracket_relations(2, 3)
    # commutators [Z_k, A^{(p)}_{i,j}] with k outside {i,j} appear as plain brackets
    singles = [rel for rel in thm.relations if len(rel.terms) == 1]
    assert singles, "expected some plain commutation relations"


def test_elimination_agrees_with_tower_where_both_run():
    # (1,3): ambient dimensions allow elimination through degree 4
    hp = holonomy_relations_from_flats(monomial_flats(1, 3), monomial_hyperplanes(1, 3))
    elim = graded_ranks(hp, 4, method="elimination", elimination_limit=400)
    tower = graded_ranks(hp, 4, method="tower")
    assert elim == tower


def test_elimination_guard():
    hp = holonomy_relations_from_flats(monomial_flats(3, 3), monomial_hyperplanes(3, 3))
    with pytest.raises(LieError):
        graded_ranks(hp, 5, method="elimination")


def test_tower_needs_structure():
    pres = HolonomyPresentation(3, ("a", "b", "c"), ())
    with pytest.raises(LieError):
        graded_ranks(pres, 3, method="tower")


def test_auto_without_structure_raises_when_too_big():
    pres = HolonomyPresentation(13, tuple(f"g{i}" for i in range(13)), ())
    with pytest.raises(LieError):
        graded_ranks(pres, 5, elimination_limit=100)


def test_tower_certificate_rejects_corruption():
    hp = holonomy_relations_from_flats(monomial_flats(2, 3), monomial_hyperplanes(2, 3))
    with pytest.raises(LieError):
        bad = HolonomyPresentation(hp.d, hp.labels, hp.relations[:-4], hp.levels, hp.flats)
        graded_ranks(bad, 3, method="tower")
    junk = LieElement(2, {(1, 2): 1})
    with pytest.raises(LieError):
        bad_rels = hp.relations[:1] + (hp.relations[1] + junk,) + hp.relations[2:]
        bad = HolonomyPresentation(hp.d, hp.labels, bad_rels, hp.levels, hp.flats)
        graded_ranks(bad, 3, method="tower")
    with pytest.raises(LieError):
        bad = HolonomyPresentation(hp.d, hp.labels, hp.relations, hp.levels, hp.flats[:-1])
        graded_ranks(bad, 3, method="tower")


def test_monotone_under_added_relations():
    rng = random.Random(3)
    base = tuple(flat_relations([1, 2, 3], 4))
    pres = HolonomyPresentation(4, ("a", "b", "c", "d"), base)
    ranks = graded_ranks(pres, 4)
    for _ in range(5):
        extra = LieElement(
            2, {(rng.randint(1, 3), 4): rng.choice([-2, -1, 1, 2])}
        )
        bigger = HolonomyPresentation(4, ("a", "b", "c", "d"), base + (extra,))
        ranks2 = graded_ranks(bigger, 4)
        assert all(r2 <= r1 for r1, r2 in zip(ranks, ranks2))
        assert ranks2[0] == 4  # degree-1 rank is always the generator count


def test_lemma_brackets_transform():
    # empty conjugator: plain commutation [x, y]
    rel = lemma_brackets_transform(1, 4, (0, 0, 0), offset=1)
    assert rel.terms == {(1, 4): 1}
    # w = t2 t3 t4 acting on t2 at level offset 1 (type-B n=2 table cell)
    rel = lemma_brackets_transform(1, 3, (1, 1, 1), offset=1)
    # [x_1 + x_2 + x_3 + x_4, x_3]
    assert rel.terms == {(1, 3): 1, (2, 3): 1, (3, 4): -1}
    # conjugate-invariance: abelianization of w is all that enters
    assert lemma_brackets_transform(1, 3, (1, 1, 1), offset=1) == rel


def test_ft_bracket_relations_typeb_ranks():
    tower = build_typeb_tower(3)
    hp = ft_bracket_relations(tower)
    assert hp.d == 9
    exps = [1, 3, 5]
    expect = [sum(witt_rank(d, k) for d in exps) for k in range(1, 5)]
    assert graded_ranks(hp, 4) == expect


def test_ft_relations_span_matches_raw_lemma_transform():
    # the cleaned block relations span the same degree-2 space as the raw
    # conjugator-abelianization transforms of the assembled presentation
    from braidforge.arrangements import assemble_presentation
    from braidforge.freegroup import abelianize

    tower = build_typeb_tower(3)
    hp = ft_bracket_relations(tower)
    pres = assemble_presentation(tower)
    name_index = {g.name: i + 1 for i, g in enumerate(pres.generators)}
    offsets = {}
    for g in pres.generators:
        offsets.setdefault(g.level, name_index[g.name] - 1)
    raw = []
    for rel in pres.relations:
        x = name_index[rel.conj]
        y = name_index[rel.target]
        img = rel.rhs
        half = (len(img.letters) - 1) // 2
        w_ab = abelianize(
            type(img)(img.rank, img.letters[:half])
        )
        raw.append(lemma_brackets_transform(x, y, w_ab, offsets[rel.level]))
    # same-rank spans
    r1, piv1 = _rank_of_rows(dict(x.terms) for x in hp.relations)
    r2, piv2 = _rank_of_rows(dict(x.terms) for x in raw)
    assert r1 == r2
    for rel in raw:
        assert not _echelon_insert(dict(piv1), dict(rel.terms))


def test_typeb_equals_monomial_r2_ranks():
    from braidforge.arrangements import build_monomial_tower

    tb = graded_ranks(ft_bracket_relations(build_typeb_tower(3)), 4)
    mo = graded_ranks(ft_bracket_relations(build_monomial_tower(2, 3)), 4)
    assert tb == mo


def test_check_lcs_additive_reports():
    rep = check_lcs_additive([1, 3], [4, 3, 8])
    assert rep.passed
    rep = check_lcs_additive([1, 3], [4, 3, 9])
    assert not rep.passed
    assert "degree 3" in rep.failures[0].name


def test_check_lcs_degenerate_exponent_one():
    pres = HolonomyPresentation(1, ("x",), ())
    ranks = graded_ranks(pres, 4)
    assert ranks == [1, 0, 0, 0]
    assert check_lcs_additive([1], ranks).passed


def test_monomial_32_degree1_is_hyperplane_count():
    hp = holonomy_relations_from_flats(monomial_flats(3, 2), monomial_hyperplanes(3, 2))
    ranks = graded_ranks(hp, 2)
    assert ranks[0] == 5 == len(monomial_hyperplanes(3, 2))


def test_degree2_torsion_diagnostic():
    hp = holonomy_relations_from_flats(monomial_flats(2, 2), monomial_hyperplanes(2, 2))
    assert degree2_torsion_diagnostic(hp)
    hp3 = holonomy_relations_from_flats(monomial_flats(3, 3), monomial_hyperplanes(3, 3))
    assert degree2_torsion_diagnostic(hp3)
    # a deliberately torsionful quotient: 2[x1,x2] = 0
    bad = HolonomyPresentation(2, ("a", "b"), (LieElement(2, {(1, 2): 2}),))
    assert not degree2_torsion_diagnostic(bad)


def test_lyndon_basis_type():
    basis = lyndon_basis(2, 4)
    assert [len(basis.degree(k)) for k in range(1, 5)] == [2, 1, 2, 3]
    with pytest.raises(LieError):
        basis.degree(9)


def test_r2_flats_correspond_to_typeb_tower_flats():
    # under a = A^{(2)}, b = A^{(1)}, c = Z the monomial tower's flats equal
    # the type-B tower's flats as families of generator-name sets
    from braidforge.arrangements import build_monomial_tower

    def name_sets(hp):
        return {frozenset(hp.labels[i] for i in flat) for flat in hp.flats}

    tb = ft_bracket_relations(build_typeb_tower(3))
    mo = ft_bracket_relations(build_monomial_tower(2, 3))
    rename = {}
    for name in mo.labels:
        if name.startswith("Z["):
            rename[name] = "c[" + name[2:]
        elif name.endswith(";2]"):
            rename[name] = "a[" + name[2:-3] + "]"
        else:
            rename[name] = "b[" + name[2:-3] + "]"
    renamed = {frozenset(rename[x] for x in flat) for flat in name_sets(mo)}
    assert renamed == name_sets(tb)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_monomial_rank_equalities_n4(r):
    from braidforge.arrangements import exponents

    hp = holonomy_relations_from_flats(monomial_flats(r, 4), monomial_hyperplanes(r, 4))
    exps = exponents("monomial", r, 4)
    expect = [sum(witt_rank(d, k) for d in exps) for k in range(1, 6)]
    assert graded_ranks(hp, 5) == expect
