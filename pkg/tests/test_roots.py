import itertools
import random
from fractions import Fraction

import pytest

from gcflag.roots import (
    LieType,
    POSITIVE_ROOT_COUNTS,
    RANK_BOUNDS,
    build_root_system,
    vadd,
    vneg,
    vsub,
)

ALL_TYPES_LE8 = [
    (fam, r)
    for fam, (lo, hi) in RANK_BOUNDS.items()
    for r in range(lo, (hi if hi is not None else 8) + 1)
    if r <= 8
]

COXETER = {"A": lambda l: l + 1, "B": lambda l: 2 * l, "C": lambda l: 2 * l,
           "D": lambda l: 2 * l - 2, "G": lambda l: 6, "F": lambda l: 12,
           "E": lambda l: {6: 12, 7: 18, 8: 30}[l]}


def test_rank_bounds_rejected_with_message():
    for fam, lo, bad in [("A", 1, 0), ("B", 2, 1), ("C", 3, 2), ("D", 4, 3),
                         ("F", 4, 5), ("G", 2, 3), ("E", 6, 5), ("E", 6, 9)]:
        with pytest.raises(ValueError) as exc:
            LieType(fam, bad)
        assert "rank" in str(exc.value)


@pytest.mark.parametrize("fam,rank", ALL_TYPES_LE8)
def test_positive_root_counts(fam, rank):
    rs = build_root_system(fam, rank)
    assert len(rs.positive_roots) == POSITIVE_ROOT_COUNTS[fam](rank)


@pytest.mark.parametrize("fam,rank", ALL_TYPES_LE8)
def test_highest_root_dominates(fam, rank):
    rs = build_root_system(fam, rank)
    h = rs.highest_root
    for r in rs.positive_roots:
        assert all(hc >= rc for hc, rc in zip(h, r))


@pytest.mark.parametrize("fam,rank", ALL_TYPES_LE8)
def test_heights_sum_to_coxeter_number(fam, rank):
    rs = build_root_system(fam, rank)
    assert sum(rs.height(i) for i in range(1, rank + 1)) + 1 == COXETER[fam](rank)
    assert sum(rs.highest_root) == COXETER[fam](rank) - 1


def test_b3_positive_roots_match_worked_example():
    rs = build_root_system("B", 3)
    expected = {
        (1, 0, 0), (0, 1, 0), (0, 0, 1),
        (1, 1, 0), (0, 1, 1), (1, 1, 1),
        (0, 1, 2), (1, 1, 2), (1, 2, 2),
    }
    assert set(rs.positive_roots) == expected


def test_a2_positive_roots():
    rs = build_root_system("A", 2)
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1)}


def test_e7_has_63_positive_roots():
    # (dim - rank)/2 = (133 - 7)/2; a count of 64 sometimes seen in print is wrong.
    assert len(build_root_system("E", 7).positive_roots) == 63


def test_height_examples():
    assert build_root_system("B", 3).height(3) == 2
    for l in range(1, 9):
        rs = build_root_system("A", l)
        assert all(rs.height(i) == 1 for i in range(1, l + 1))
    assert build_root_system("E", 6).height(3) == 3
    with pytest.raises(ValueError):
        build_root_system("B", 3).height(4)


def test_e_type_heights_match_labeling():
    assert build_root_system("E", 6).highest_root == (1, 2, 3, 2, 1, 2)
    assert build_root_system("E", 7).highest_root == (1, 2, 3, 4, 3, 2, 2)
    assert build_root_system("E", 8).highest_root == (2, 3, 4, 5, 6, 4, 2, 3)


def test_inner_product_length_ratios():
    b2 = build_root_system("B", 2)
    a1, a2 = (1, 0), (0, 1)
    assert b2.inner_product(a1, a1) == 2 * b2.inner_product(a2, a2)
    g2 = build_root_system("G", 2)
    assert g2.inner_product((1, 0), (1, 0)) == 3 * g2.inner_product((0, 1), (0, 1))
    f4 = build_root_system("F", 4)
    assert all(f4.inner_product(r, r) > 0 for r in f4.positive_roots)


@pytest.mark.parametrize("fam,rank", [(f, r) for f, r in ALL_TYPES_LE8 if r <= 4])
def test_gram_positive_definite(fam, rank):
    rs = build_root_system(fam, rank)
    g = [list(row) for row in rs.gram]
    assert all(g[i][j] == g[j][i] for i in range(rank) for j in range(rank))
    # leading principal minors via fraction-free elimination
    m = [[Fraction(x) for x in row] for row in g]
    for k in range(1, rank + 1):
        sub = [row[:k] for row in m[:k]]
        det = Fraction(1)
        for col in range(k):
            piv = next((r for r in range(col, k) if sub[r][col] != 0), None)
            assert piv is not None
            if piv != col:
                sub[col], sub[piv] = sub[piv], sub[col]
                det = -det
            det *= sub[col][col]
            for r in range(col + 1, k):
                f = sub[r][col] / sub[col][col]
                sub[r] = [x - f * y for x, y in zip(sub[r], sub[col])]
        assert det > 0


@pytest.mark.parametrize("fam,rank", [(f, r) for f, r in ALL_TYPES_LE8 if r <= 4])
def test_root_string_structure(fam, rank):
    # The alpha-string through beta has exactly (p+1) - <beta, alpha^vee>
    # members above and including beta, for every pair with a root sum.
    rs = build_root_system(fam, rank)
    for alpha in rs.positive_roots:
        for beta in rs.positive_roots:
            if alpha == beta or not rs.is_root(vadd(alpha, beta)):
                continue
            p = rs.string_down_length(alpha, beta)
            pairing = sum(
                beta[i] * 2 * rs.inner_product(alpha, tuple(
                    1 if j == i else 0 for j in range(rank))) for i in range(rank)
            ) / rs.inner_product(alpha, alpha)
            up = 0
            cur = beta
            while rs.is_root(cur):
                up += 1
                cur = vadd(cur, alpha)
            assert up == (p + 1) - pairing


@pytest.mark.parametrize("fam,rank", [("A", 2), ("B", 2), ("G", 2), ("B", 3),
                                      ("C", 4), ("F", 4), ("E", 6)])
def test_chevalley_constant_laws(fam, rank):
    rs = build_root_system(fam, rank)
    consts = rs.chevalley_constants()
    assert consts
    for (a, b), n in consts.items():
        assert abs(n) == rs.string_down_length(a, b) + 1
        assert rs.structure_constant(b, a) == -n
        assert rs.structure_constant(vneg(a), vneg(b)) == -n


def test_chevalley_specific_values():
    a2 = build_root_system("A", 2)
    assert abs(a2.structure_constant((1, 0), (0, 1))) == 1
    b2 = build_root_system("B", 2)
    assert abs(b2.structure_constant((0, 1), (1, 1))) == 2


def test_chevalley_antisymmetry_random_pairs():
    rng = random.Random(20240817)
    rs = build_root_system("F", 4)
    pos = rs.positive_roots
    seen = 0
    while seen < 100:
        a = rng.choice(pos)
        b = rng.choice(pos)
        sa = a if rng.random() < 0.5 else vneg(a)
        sb = b if rng.random() < 0.5 else vneg(b)
        s = vadd(sa, sb)
        if not rs.is_root(s) or all(c == 0 for c in s):
            continue
        assert rs.structure_constant(sa, sb) == -rs.structure_constant(sb, sa)
        seen += 1


def _jacobi_violations(rs, convention):
    """Full Jacobi check over the Chevalley basis (X_r for all roots, coroots)."""
    def bracket_keys(k1, k2):
        t1, a1 = k1
        t2, a2 = k2
        out = {}
        if t1 == "H" and t2 == "H":
            return out
        if t1 == "H":
            c = rs.cartan_pairing(a2, a1)
            if c:
                out[("X", a2)] = Fraction(c)
            return out
        if t2 == "H":
            c = rs.cartan_pairing(a1, a2)
            if c:
                out[("X", a1)] = Fraction(-c)
            return out
        s = vadd(a1, a2)
        if all(c == 0 for c in s):
            for i, c in enumerate(rs.coroot_coords(a1)):
                if c:
                    out[("H", i)] = c
            return out
        if rs.is_root(s):
            n = rs.structure_constant(a1, a2, convention)
            if n:
                out[("X", s)] = Fraction(n)
        return out

    basis = ([("X", r) for r in rs.positive_roots]
             + [("X", vneg(r)) for r in rs.positive_roots]
             + [("H", i) for i in range(rs.rank)])
    cache = {}

    def br(k1, k2):
        if (k1, k2) not in cache:
            cache[(k1, k2)] = bracket_keys(k1, k2)
        return cache[(k1, k2)]

    bad = 0
    for k1, k2, k3 in itertools.combinations(basis, 3):
        acc = {}
        for (x, y, z) in ((k1, k2, k3), (k2, k3, k1), (k3, k1, k2)):
            for kk, c in br(x, y).items():
                for kk2, c2 in br(kk, z).items():
                    acc[kk2] = acc.get(kk2, Fraction(0)) + c * c2
        if any(v != 0 for v in acc.values()):
            bad += 1
    return bad


@pytest.mark.parametrize("fam,rank", [("A", 2), ("B", 2), ("G", 2), ("B", 3)])
def test_jacobi_identity_both_conventions(fam, rank):
    rs = build_root_system(fam, rank)
    assert _jacobi_violations(rs, 1) == 0
    assert _jacobi_violations(rs, -1) == 0


def test_flipped_convention_negates_table():
    rs = build_root_system("G", 2)
    for (a, b), n in rs.chevalley_constants(1).items():
        assert rs.structure_constant(a, b, -1) == -n


def test_serialization_roundtrip_shape():
    rs = build_root_system("B", 3)
    doc = rs.to_json_dict()
    assert doc["type"] == "B" and doc["rank"] == 3
    assert doc["positive_roots"][0] == [0, 0, 1]  # construction order: height then lex
    assert doc["highest_root"] == [1, 2, 2]
    assert len(doc["cartan"]) == 3


def test_root_system_cached_and_immutable_reuse():
    assert build_root_system("B", 3) is build_root_system("B", 3)
