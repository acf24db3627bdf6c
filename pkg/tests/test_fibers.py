import itertools
import random
from fractions import Fraction

import pytest

from gcflag.fibers import (
    Assignment,
    C_MINUS,
    C_PLUS,
    FIBER_SAMPLES,
    NC_SAMPLE_POINTS,
    TAG_C_MINUS,
    TAG_C_PLUS,
    TAG_NC,
    assignment_integrable,
    chain_residuals,
    compress_pattern_rows,
    complex_type,
    enumerate_integrable_patterns,
    expand_row,
    fiber_matrix,
    global_sign_flip,
    noncomplex_type,
    solve_noncomplex_chain,
    triple_integrable,
    verify_fiber_matrix,
)
from gcflag.isotropy import decompose_isotropy, enumerate_triples, flag_from_sigma_minus_theta, flag_from_theta
from gcflag.catalog import builtin_rows, resolve_sigma_indices
from gcflag.roots import build_root_system


def random_noncomplex(rng):
    a = Fraction(rng.randint(-12, 12), rng.randint(1, 9))
    x = Fraction(rng.randint(1, 12), rng.randint(1, 9)) * rng.choice((1, -1))
    return noncomplex_type(a, x, (a * a + 1) / x)


def test_noncomplex_invariant_enforced():
    with pytest.raises(ValueError):
        noncomplex_type(1, 2, 2)
    with pytest.raises(ValueError):
        noncomplex_type(0, 0, 1)


def test_complex_fiber_matrix_literal():
    m = fiber_matrix(C_PLUS)
    assert [[int(x) for x in row] for row in m] == [
        [0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]


def test_noncomplex_special_cases_square_to_minus_one():
    for f in (noncomplex_type(0, 1, 1), noncomplex_type(1, 2, 1)):
        assert verify_fiber_matrix(f)
    m = fiber_matrix(noncomplex_type(0, 1, 1))
    # a = 0, x = y = 1: pure anti-diagonal 2x2 blocks
    assert m[0][0] == 0 and m[0][3] == -1 and m[3][0] == 1


def test_fiber_matrix_properties_1000_random():
    rng = random.Random(314159)
    for _ in range(1000):
        assert verify_fiber_matrix(random_noncomplex(rng))
    assert verify_fiber_matrix(C_PLUS) and verify_fiber_matrix(C_MINUS)


def test_triple_integrable_table_rows():
    nc = noncomplex_type(1, 2, 1)
    # all complex: forbidden exactly when the equal-signs pair meets the flip
    assert triple_integrable(C_PLUS, C_PLUS, C_PLUS)
    assert triple_integrable(C_MINUS, C_MINUS, C_MINUS)
    assert triple_integrable(C_PLUS, C_MINUS, C_PLUS)
    assert triple_integrable(C_PLUS, C_MINUS, C_MINUS)
    assert not triple_integrable(C_PLUS, C_PLUS, C_MINUS)
    assert not triple_integrable(C_MINUS, C_MINUS, C_PLUS)
    # one noncomplex among alpha/beta: complex entries must share sign
    assert triple_integrable(nc, C_PLUS, C_PLUS)
    assert triple_integrable(C_MINUS, nc, C_MINUS)
    assert not triple_integrable(nc, C_PLUS, C_MINUS)
    assert not triple_integrable(C_PLUS, nc, C_MINUS)
    # noncomplex sum: alpha/beta signs must differ
    assert triple_integrable(C_PLUS, C_MINUS, nc)
    assert not triple_integrable(C_PLUS, C_PLUS, nc)
    # two noncomplex: never
    assert not triple_integrable(nc, nc, C_PLUS)
    assert not triple_integrable(nc, C_PLUS, nc)
    assert not triple_integrable(C_PLUS, nc, nc)


def test_triple_integrable_chain_cases():
    assert triple_integrable(
        noncomplex_type(1, 2, 1), noncomplex_type(1, 2, 1), noncomplex_type(1, 1, 2))
    assert not triple_integrable(
        noncomplex_type(1, 2, 1), noncomplex_type(1, 2, 1), noncomplex_type(0, 1, 1))
    r = chain_residuals(
        noncomplex_type(1, 2, 1), noncomplex_type(1, 2, 1), noncomplex_type(0, 1, 1))
    assert r[0] == -4 and r[1] == 0


def test_triple_integrable_symmetric_in_first_two():
    rng = random.Random(99)
    pool = list(FIBER_SAMPLES)
    for _ in range(200):
        fa, fb, fc = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        assert triple_integrable(fa, fb, fc) == triple_integrable(fb, fa, fc)


def test_solve_noncomplex_chain_examples():
    assert solve_noncomplex_chain(
        noncomplex_type(1, 2, 1), noncomplex_type(1, 2, 1)) == noncomplex_type(1, 1, 2)
    assert solve_noncomplex_chain(
        noncomplex_type(0, 1, 1), noncomplex_type(0, 1, 1)) == noncomplex_type(0, Fraction(1, 2), 2)
    assert solve_noncomplex_chain(
        noncomplex_type(1, 2, 1), noncomplex_type(-1, -2, -1)) is None


def test_solve_noncomplex_chain_feeds_back_integrable():
    rng = random.Random(1234)
    for _ in range(100):
        fa, fb = random_noncomplex(rng), random_noncomplex(rng)
        fs = solve_noncomplex_chain(fa, fb)
        if fs is not None:
            assert triple_integrable(fa, fb, fs)


def test_assignment_requires_totality():
    fs = flag_from_theta(build_root_system("B", 3), [3])
    decomp = decompose_isotropy(fs)
    with pytest.raises(ValueError) as exc:
        Assignment.from_mapping(decomp, {0: C_PLUS, 2: C_PLUS})
    assert "missing components" in str(exc.value)


def test_assignment_integrable_b2_examples():
    fs = flag_from_theta(build_root_system("B", 2), [1])
    decomp = decompose_isotropy(fs)
    assert assignment_integrable(fs, Assignment(decomp, [C_PLUS, C_PLUS])).verdict
    rep = assignment_integrable(fs, Assignment(decomp, [C_PLUS, C_MINUS]))
    assert not rep.verdict and rep.violations
    assert rep.violations[0][1] == "complex_sign_rule"


def test_assignment_integrable_b3_all_noncomplex_residuals():
    fs = flag_from_theta(build_root_system("B", 3), [3])
    decomp = decompose_isotropy(fs)
    asg = Assignment(decomp, [noncomplex_type(1, 2, 1)] * 4)
    rep = assignment_integrable(fs, asg)
    assert not rep.verdict
    assert rep.noncomplex_residuals
    assert any(r != (0, 0) for _, r in rep.noncomplex_residuals)
    # second chain polynomial on an equal-x triple: x^2 - 2x^2 = -4
    assert any(r[1] == -4 for _, r in rep.noncomplex_residuals)


# -- classification tables, transcribed from the published case analyses ----
#
# Rows use tokens P (anchor sign), M (opposite sign), N (noncomplex); each
# row expands to two patterns (anchor + and -), the all-N row to one.
# paper_tuples lists the component coefficient tuples in the source order
# m1..ms, which the test maps onto the canonical (lex-sorted) order.

ROWS_3 = ["PPP", "PMP", "PMM", "PNP", "NPP", "PMN", "NNN"]
ROWS_4 = ["PPPP", "PMPP", "PMPM", "PMMM", "PMPN", "PMNM", "PNPP", "NPPP", "NNNN"]

GOLDEN_TABLES = [
    ("A", 3, [1, 2], ROWS_3, [(1, 0), (0, 1), (1, 1)]),
    ("D", 5, [4, 5], ROWS_3, [(1, 0), (0, 1), (1, 1)]),
    ("E", 6, [1, 5], ROWS_3, [(1, 0), (0, 1), (1, 1)]),
    ("B", 3, [1, 2], ROWS_4, [(1, 0), (0, 1), (1, 1), (1, 2)]),
    ("C", 4, [2, 4], ROWS_4, [(0, 1), (1, 0), (1, 1), (2, 1)]),
    ("D", 5, [1, 2], ROWS_4, [(1, 0), (0, 1), (1, 1), (1, 2)]),
    ("E", 6, [1, 2], ROWS_4, [(1, 0), (0, 1), (1, 1), (1, 2)]),
    ("E", 7, [1, 2], ROWS_4, [(1, 0), (0, 1), (1, 1), (1, 2)]),
]


def expected_pattern_set(rows, paper_tuples, canonical_keys):
    pos = {key: i for i, key in enumerate(canonical_keys)}
    perm = [pos[t] for t in paper_tuples]  # paper index -> canonical index
    expected = set()
    for row in rows:
        for anchor in (TAG_C_PLUS, TAG_C_MINUS):
            other = TAG_C_MINUS if anchor == TAG_C_PLUS else TAG_C_PLUS
            tags = [None] * len(row)
            for paper_idx, tok in enumerate(row):
                tag = TAG_NC if tok == "N" else anchor if tok == "P" else other
                tags[perm[paper_idx]] = tag
            expected.add(tuple(tags))
    return expected


@pytest.mark.parametrize("fam,rank,sigma,rows,paper_tuples", GOLDEN_TABLES)
def test_classification_matches_published_tables(fam, rank, sigma, rows, paper_tuples):
    rs = build_root_system(fam, rank)
    fs = flag_from_sigma_minus_theta(rs, sigma)
    decomp = decompose_isotropy(fs)
    patterns = enumerate_integrable_patterns(fs, decomp)
    keys = [c.key for c in decomp.components]
    expected = expected_pattern_set(rows, paper_tuples, keys)
    assert {p.tags for p in patterns} == expected
    assert len(compress_pattern_rows(patterns)) == len(rows)


def test_a_case_complex_sign_vectors():
    # 3-summand cross flag: exactly 6 of 8 all-complex sign vectors survive.
    fs = flag_from_sigma_minus_theta(build_root_system("A", 3), [1, 2])
    patterns = enumerate_integrable_patterns(fs)
    all_c = [p for p in patterns if TAG_NC not in p.tags]
    assert len(all_c) == 6
    decomp = decompose_isotropy(fs)
    keys = [c.key for c in decomp.components]
    i10, i01, i11 = keys.index((1, 0)), keys.index((0, 1)), keys.index((1, 1))
    excluded = set()
    for s in (TAG_C_PLUS, TAG_C_MINUS):
        o = TAG_C_MINUS if s == TAG_C_PLUS else TAG_C_PLUS
        tags = [None] * 3
        tags[i10], tags[i01], tags[i11] = s, s, o
        excluded.add(tuple(tags))
    assert excluded.isdisjoint({p.tags for p in all_c})


def test_all_nc_pattern_is_conditional():
    fs = flag_from_sigma_minus_theta(build_root_system("A", 3), [1, 2])
    patterns = enumerate_integrable_patterns(fs)
    nc_all = [p for p in patterns if set(p.tags) == {TAG_NC}]
    assert len(nc_all) == 1 and nc_all[0].is_conditional


def test_expand_row_roundtrip():
    assert set(expand_row(("C±", "C∓", "NC"))) == {
        (TAG_C_PLUS, TAG_C_MINUS, TAG_NC), (TAG_C_MINUS, TAG_C_PLUS, TAG_NC)}
    assert expand_row(("NC", "NC")) == ((TAG_NC, TAG_NC),)


def _random_assignment(rng, decomp):
    fibers = []
    for _ in decomp.components:
        roll = rng.random()
        if roll < 0.4:
            fibers.append(rng.choice((C_PLUS, C_MINUS)))
        elif roll < 0.7:
            fibers.append(rng.choice(NC_SAMPLE_POINTS))
        else:
            fibers.append(random_noncomplex(rng))
    return Assignment(decomp, fibers)


def test_global_sign_flip_preserves_verdict_200_random():
    rng = random.Random(777)
    flags = [
        flag_from_theta(build_root_system("B", 3), [3]),
        flag_from_theta(build_root_system("B", 2), [1]),
        flag_from_sigma_minus_theta(build_root_system("A", 3), [1, 2]),
        flag_from_theta(build_root_system("G", 2), []),
        flag_from_sigma_minus_theta(build_root_system("C", 4), [2, 4]),
    ]
    cases = [(fs, decompose_isotropy(fs)) for fs in flags]
    triples = {id(fs): enumerate_triples(fs, d) for fs, d in cases}
    for i in range(200):
        fs, decomp = cases[i % len(cases)]
        asg = _random_assignment(rng, decomp)
        flipped = global_sign_flip(asg)
        v1 = assignment_integrable(fs, asg, triples[id(fs)]).verdict
        v2 = assignment_integrable(fs, flipped, triples[id(fs)]).verdict
        assert v1 == v2


def test_two_summand_catalog_flags_are_monotype():
    # Every two-summand catalog flag with an intra-component triple admits
    # only equal-sign complex patterns and the all-noncomplex pattern.
    for row in builtin_rows():
        if row.expected_summands != 2:
            continue
        rs = build_root_system(row.family, row.rank)
        sigma = resolve_sigma_indices(rs, row.sigma_minus_theta)
        fs = flag_from_sigma_minus_theta(rs, sigma)
        decomp = decompose_isotropy(fs)
        triples = enumerate_triples(fs, decomp)
        assert any(t.comps[0] == t.comps[1] for t in triples), row.label
        patterns = enumerate_integrable_patterns(fs, decomp)
        assert {p.tags for p in patterns} == {
            (TAG_C_PLUS, TAG_C_PLUS), (TAG_C_MINUS, TAG_C_MINUS), (TAG_NC, TAG_NC)}


def test_single_painted_root_flags_are_monotype_rank_le_6():
    for fam, lo, hi in [("A", 1, 6), ("B", 2, 6), ("C", 3, 6), ("D", 4, 6),
                        ("E", 6, 6), ("F", 4, 4), ("G", 2, 2)]:
        for rank in range(lo, hi + 1):
            rs = build_root_system(fam, rank)
            for i in range(1, rank + 1):
                fs = flag_from_sigma_minus_theta(rs, [i])
                for p in enumerate_integrable_patterns(fs):
                    assert len(set(p.tags)) == 1, (fam, rank, i, p.tags)
