"""Isotropy decompositions of partial flag manifolds from root data.

A flag is fixed by a subset Theta of the simple roots.  The tangent space
at the origin splits into components m(s_1,...,s_r) indexed by the
restriction of root coefficients to the complement Sigma \ Theta; roots
with equal restricted tuples span one irreducible summand.  Triples
(alpha, beta, alpha+beta) of roots outside <Theta> drive all the
integrability analysis downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from .roots import Root, RootSystem, vadd


@dataclass(frozen=True)
class FlagSpec:
    """A partial flag manifold: a root system plus Theta (1-based indices)."""

    rs: RootSystem
    theta: Tuple[int, ...]

    def __post_init__(self):
        seen = sorted(set(self.theta))
        if list(self.theta) != seen:
            raise ValueError("theta must be sorted and duplicate-free")
        for i in self.theta:
            if not 1 <= i <= self.rs.rank:
                raise ValueError(f"theta index {i} out of range 1..{self.rs.rank}")

    @property
    def sigma_minus_theta(self) -> Tuple[int, ...]:
        ts = set(self.theta)
        return tuple(i for i in range(1, self.rs.rank + 1) if i not in ts)

    def __str__(self):
        return f"{self.rs.lie_type} theta={{{','.join(map(str, self.theta))}}}"


def flag_from_theta(rs: RootSystem, theta: Iterable[int]) -> FlagSpec:
    return FlagSpec(rs, tuple(sorted(set(int(i) for i in theta))))


def flag_from_sigma_minus_theta(rs: RootSystem, sigma: Iterable[int]) -> FlagSpec:
    keep = set(int(i) for i in sigma)
    for i in keep:
        if not 1 <= i <= rs.rank:
            raise ValueError(f"simple-root index {i} out of range 1..{rs.rank}")
    return FlagSpec(rs, tuple(i for i in range(1, rs.rank + 1) if i not in keep))


def _support_in_theta(root: Root, theta_set) -> bool:
    return all(c == 0 or (i + 1) in theta_set for i, c in enumerate(root))


def theta_span(fs: FlagSpec) -> Tuple[Root, ...]:
    """<Theta>^+: the positive roots supported inside Theta."""
    ts = set(fs.theta)
    return tuple(r for r in fs.rs.positive_roots if _support_in_theta(r, ts))


@dataclass(frozen=True)
class IsotropyComponent:
    key: Tuple[int, ...]  # coefficients restricted to Sigma \ Theta
    roots: Tuple[Root, ...]


class IsotropyDecomposition:
    """Components of the isotropy representation, sorted lexicographically by key."""

    def __init__(self, flag: FlagSpec, components: Tuple[IsotropyComponent, ...],
                 is_point: bool = False):
        self.flag = flag
        self.components = components
        self.is_point = is_point
        self.notice = "point manifold (Theta = Sigma)" if is_point else ""
        self._comp_of: Dict[Root, int] = {}
        for idx, comp in enumerate(components):
            for r in comp.roots:
                self._comp_of[r] = idx

    def __len__(self):
        return len(self.components)

    def component_index(self, root: Root) -> int:
        return self._comp_of[root]

    @property
    def m_roots(self) -> Tuple[Root, ...]:
        """All roots outside <Theta>, in construction order."""
        out = [r for r in self.flag.rs.positive_roots if r in self._comp_of]
        return tuple(out)


def decompose_isotropy(fs: FlagSpec) -> IsotropyDecomposition:
    """Group the roots outside <Theta> by their restricted coefficient tuples."""
    sigma = fs.sigma_minus_theta
    if not sigma:
        return IsotropyDecomposition(fs, (), is_point=True)
    ts = set(fs.theta)
    groups: Dict[Tuple[int, ...], list] = {}
    for r in fs.rs.positive_roots:
        if _support_in_theta(r, ts):
            continue
        key = tuple(r[i - 1] for i in sigma)
        groups.setdefault(key, []).append(r)
    components = tuple(
        IsotropyComponent(key, tuple(groups[key])) for key in sorted(groups)
    )
    return IsotropyDecomposition(fs, components)


@dataclass(frozen=True)
class Triple:
    """A root triple (alpha, beta, alpha+beta) with component indices."""

    alpha: Root
    beta: Root
    sum_root: Root
    comps: Tuple[int, int, int]

    @property
    def comp_class(self) -> Tuple[int, int, int]:
        i, j, k = self.comps
        return (min(i, j), max(i, j), k)


def enumerate_triples(fs: FlagSpec,
                      decomp: Optional[IsotropyDecomposition] = None) -> Tuple[Triple, ...]:
    """Every unordered pair of m-roots whose sum is again an m-root."""
    if decomp is None:
        decomp = decompose_isotropy(fs)
    rs = fs.rs
    mroots = decomp.m_roots
    mset = set(mroots)
    out = []
    for ia, alpha in enumerate(mroots):
        for beta in mroots[ia + 1:]:
            s = vadd(alpha, beta)
            if not rs.is_positive_root(s):
                continue
            # Tuples add, so the sum can never fall back into <Theta>.
            assert s in mset, f"sum {s} of m-roots landed in <Theta>"
            out.append(Triple(
                alpha, beta, s,
                (decomp.component_index(alpha),
                 decomp.component_index(beta),
                 decomp.component_index(s)),
            ))
    return tuple(out)


def verify_height_lemma(rs: RootSystem, i: int) -> bool:
    """Theta = Sigma \ {alpha_i} must give exactly height(alpha_i) components."""
    fs = flag_from_sigma_minus_theta(rs, [i])
    return len(decompose_isotropy(fs)) == rs.height(i)
