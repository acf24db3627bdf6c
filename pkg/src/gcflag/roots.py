"""Exact root-system data for the simple Lie types A-G.

A root is its integer coefficient vector over the simple roots
alpha_1..alpha_l.  Positive roots are generated by closing the simple roots
under root strings read off the Cartan pairing, and are kept sorted by
(height, coefficients), which is the canonical construction order used
everywhere else.

The inner product is normalized so short roots have squared length 2; with
that choice the Gram matrix of the simple roots is integral.  Chevalley
structure constants ([X_x, X_y] = N(x,y) X_{x+y}, [X_x, X_{-x}] = coroot
of x) are produced by the extraspecial-pair recursion, so every defined
constant satisfies |N(x,y)| = p + 1 where p is the largest integer with
y - p*x still a root.

Simple-root labels follow the Dynkin diagrams used by the classification
tables this library reproduces:

    A/B/C/D  chains as usual (B: alpha_l short; C: alpha_l long;
             D: alpha_l attached to alpha_{l-2})
    E6       chain a1-a2-a3-a4-a5 with a6 attached to a3
    E7       chain a1-...-a6 with a7 attached to a4
    E8       chain a1-...-a7 with a8 attached to a5
    F4       a1-a2=>a3-a4 (a1, a2 long)
    G2       a1 long, a2 short
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

Root = Tuple[int, ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

# (min rank, max rank or None for unbounded)
RANK_BOUNDS = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

POSITIVE_ROOT_COUNTS = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "G": lambda l: 6,
    "F": lambda l: 24,
    "E": lambda l: {6: 36, 7: 63, 8: 120}[l],
}


@dataclass(frozen=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        lo, hi = RANK_BOUNDS[self.family]
        if self.rank < lo or (hi is not None and self.rank > hi):
            bound = f"rank >= {lo}" if hi is None else f"{lo} <= rank <= {hi}"
            raise ValueError(f"family {self.family} requires {bound}, got rank {self.rank}")

    def __str__(self):
        return f"{self.family}{self.rank}"


def _chain_edges(l: int):
    return [(i, i + 1) for i in range(l - 1)]


def _diagram_edges(lt: LieType):
    l = lt.rank
    if lt.family in ("A", "B", "C", "G"):
        return _chain_edges(l)
    if lt.family == "F":
        return _chain_edges(4)
    if lt.family == "D":
        return _chain_edges(l - 1) + [(l - 3, l - 1)]
    # E types: chain on the first l-1 nodes, last node attached mid-chain.
    attach = {6: 2, 7: 3, 8: 4}[l]
    return _chain_edges(l - 1) + [(attach, l - 1)]


def _simple_norms(lt: LieType) -> Tuple[int, ...]:
    l = lt.rank
    if lt.family in ("A", "D", "E"):
        return (2,) * l
    if lt.family == "B":
        return (4,) * (l - 1) + (2,)
    if lt.family == "C":
        return (2,) * (l - 1) + (4,)
    if lt.family == "F":
        return (4, 4, 2, 2)
    return (6, 2)  # G2


def _cartan_matrix(lt: LieType) -> Tuple[Tuple[int, ...], ...]:
    """Cartan matrix C[i][j] = <alpha_i, alpha_j^vee> built from the diagram."""
    l = lt.rank
    norms = _simple_norms(lt)
    gram = [[0] * l for _ in range(l)]
    for i in range(l):
        gram[i][i] = norms[i]
    for (i, j) in _diagram_edges(lt):
        # Joined nodes pair to minus half the larger squared length.
        v = -max(norms[i], norms[j]) // 2
        gram[i][j] = v
        gram[j][i] = v
    cartan = tuple(
        tuple(2 * gram[i][j] // norms[j] for j in range(l)) for i in range(l)
    )
    return cartan


def vadd(u: Root, v: Root) -> Root:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Root, v: Root) -> Root:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Root) -> Root:
    return tuple(-a for a in u)


class RootSystem:
    """Immutable root-system data; construct through build_root_system()."""

    def __init__(self, lie_type: LieType):
        self.lie_type = lie_type
        self.rank = lie_type.rank
        self.cartan = _cartan_matrix(lie_type)
        self.simple_norms = _simple_norms(lie_type)
        self.gram = tuple(
            tuple(self.cartan[i][j] * self.simple_norms[j] // 2 for j in range(self.rank))
            for i in range(self.rank)
        )
        self.positive_roots: Tuple[Root, ...] = self._generate_positive_roots()
        self._index: Dict[Root, int] = {r: i for i, r in enumerate(self.positive_roots)}
        self.highest_root: Root = self.positive_roots[-1]
        self._chevalley_tables: Dict[int, Dict[Tuple[int, int], int]] = {}

    # -- basic queries ---------------------------------------------------

    def is_positive_root(self, v: Root) -> bool:
        return v in self._index

    def is_root(self, v: Root) -> bool:
        return v in self._index or vneg(v) in self._index

    def root_index(self, v: Root) -> int:
        return self._index[v]

    def height_of(self, v: Root) -> int:
        return sum(v)

    def height(self, i: int) -> int:
        """Coefficient of alpha_i in the highest root (1-based index)."""
        if not 1 <= i <= self.rank:
            raise ValueError(f"simple-root index {i} out of range 1..{self.rank}")
        return self.highest_root[i - 1]

    def inner_product(self, u: Root, v: Root) -> Fraction:
        total = 0
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b:
                    total += a * b * self.gram[i][j]
        return Fraction(total)

    def norm(self, v: Root) -> int:
        return int(self.inner_product(v, v))

    def cartan_pairing(self, v: Root, j: int) -> int:
        """<v, alpha_j^vee> for 0-based simple index j."""
        return sum(v[i] * self.cartan[i][j] for i in range(self.rank) if v[i])

    def coroot_coords(self, v: Root) -> Tuple[Fraction, ...]:
        """Coordinates of the coroot of v over the simple coroots."""
        nv = self.norm(v)
        return tuple(Fraction(v[i] * self.simple_norms[i], nv) for i in range(self.rank))

    # -- generation ------------------------------------------------------

    def _generate_positive_roots(self) -> Tuple[Root, ...]:
        l = self.rank
        simples = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
        roots = set(simples)
        frontier = list(simples)
        while frontier:
            new = []
            for v in frontier:
                for i, e in enumerate(simples):
                    cand = vadd(v, e)
                    if cand in roots:
                        continue
                    # String through v in direction alpha_i: q = p - <v, alpha_i^vee>.
                    p = 0
                    cur = vsub(v, e)
                    while cur in roots:
                        p += 1
                        cur = vsub(cur, e)
                    if p - self.cartan_pairing(v, i) >= 1:
                        roots.add(cand)
                        new.append(cand)
            frontier = new
        return tuple(sorted(roots, key=lambda r: (sum(r), r)))

    # -- root strings and Chevalley constants -----------------------------

    def string_down_length(self, alpha: Root, beta: Root) -> int:
        """Largest p with beta - p*alpha a root."""
        p = 0
        cur = vsub(beta, alpha)
        while self.is_root(cur):
            p += 1
            cur = vsub(cur, alpha)
        return p

    def _chevalley_table(self, convention: int) -> Dict[Tuple[int, int], int]:
        if convention not in (1, -1):
            raise ValueError("convention must be +1 or -1")
        table = self._chevalley_tables.get(convention)
        if table is None:
            table = self._build_chevalley(convention)
            self._chevalley_tables[convention] = table
        return table

    def _build_chevalley(self, sign: int) -> Dict[Tuple[int, int], int]:
        """Extraspecial-pair recursion over positive roots in height order.

        The extraspecial pair of each non-simple positive root gets
        sign * (p + 1); every other special pair is then forced by the
        Jacobi identity applied to (X_{a1}, X_{b1}, X_{-beta}).
        """
        pr = self.positive_roots
        table: Dict[Tuple[int, int], int] = {}
        for g, gamma in enumerate(pr):
            if sum(gamma) < 2:
                continue
            pairs = []
            for i in range(g):
                beta = vsub(gamma, pr[i])
                j = self._index.get(beta)
                if j is not None and i < j:
                    pairs.append((i, j))
            pairs.sort()
            i1, j1 = pairs[0]
            n_extra = sign * (self.string_down_length(pr[i1], pr[j1]) + 1)
            table[(i1, j1)] = n_extra
            a1, b1 = pr[i1], pr[j1]
            for (i, j) in pairs[1:]:
                alpha, beta = pr[i], pr[j]
                t1 = self._nconst(b1, vneg(beta), table)
                if t1:
                    t1 *= self._nconst(vsub(b1, beta), a1, table)
                t2 = self._nconst(vneg(beta), a1, table)
                if t2:
                    t2 *= self._nconst(vsub(a1, beta), b1, table)
                val = -Fraction(self.norm(gamma), self.norm(alpha)) * Fraction(t1 + t2, n_extra)
                if val.denominator != 1 or val == 0:
                    raise AssertionError(f"bad derived constant for {alpha}+{beta}={gamma}")
                table[(i, j)] = int(val)
        return table

    def _nconst(self, x: Root, y: Root, table: Dict[Tuple[int, int], int]) -> int:
        """N(x, y) for roots of either sign, reduced to table lookups."""
        s = vadd(x, y)
        if all(c == 0 for c in s):
            raise ValueError("N(x, -x) is not a structure constant (Cartan bracket)")
        if not self.is_root(s):
            return 0
        xpos = x in self._index
        ypos = y in self._index
        if xpos and ypos:
            i, j = self._index[x], self._index[y]
            return table[(i, j)] if i < j else -table[(j, i)]
        if not xpos and not ypos:
            return -self._nconst(vneg(x), vneg(y), table)
        if not xpos:
            return -self._nconst(y, x, table)
        # x positive, y negative; rotate the zero-sum triple (x, y, -s).
        if s in self._index:
            val = -Fraction(self.norm(s), self.norm(x)) * self._nconst(vneg(y), s, table)
        else:
            val = -Fraction(self.norm(s), self.norm(y)) * self._nconst(x, vneg(s), table)
        if val.denominator != 1:
            raise AssertionError(f"non-integral constant for pair {x}, {y}")
        return int(val)

    def structure_constant(self, x: Root, y: Root, convention: int = 1) -> int:
        """N(x, y) for any pair of roots with x + y a root; 0 when x + y is not."""
        table = self._chevalley_table(convention)
        s = vadd(x, y)
        if not self.is_root(s):
            if all(c == 0 for c in s):
                raise ValueError("x + y = 0 has a Cartan bracket, not a constant")
            return 0
        return self._nconst(x, y, table)

    def chevalley_constants(self, convention: int = 1) -> Dict[Tuple[Root, Root], int]:
        """The full map (alpha, beta) -> N on pairs of positive roots with root sum."""
        table = self._chevalley_table(convention)
        out: Dict[Tuple[Root, Root], int] = {}
        pr = self.positive_roots
        for (i, j), n in table.items():
            out[(pr[i], pr[j])] = n
            out[(pr[j], pr[i])] = -n
        return out

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "schema": "gcflag.roots.v1",
            "type": self.lie_type.family,
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "positive_roots": [list(r) for r in self.positive_roots],
            "highest_root": list(self.highest_root),
        }


_CACHE: Dict[Tuple[str, int], RootSystem] = {}


def build_root_system(family, rank: Optional[int] = None) -> RootSystem:
    """Build (and cache) the root system for a LieType or (family, rank)."""
    if isinstance(family, LieType):
        lt = family
    else:
        lt = LieType(str(family).upper(), int(rank))
    key = (lt.family, lt.rank)
    rs = _CACHE.get(key)
    if rs is None:
        rs = RootSystem(lt)
        expected = POSITIVE_ROOT_COUNTS[lt.family](lt.rank)
        if len(rs.positive_roots) != expected:
            raise AssertionError(
                f"{lt}: generated {len(rs.positive_roots)} positive roots, expected {expected}"
            )
        _CACHE[key] = rs
    return rs
