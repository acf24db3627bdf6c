"""Computational check that fiber structures are constant on each component.

Invariance under the isotropy algebra forces, for every root gamma inside
<Theta> and every root alpha with beta = alpha + gamma also outside
<Theta>, the commutation equation

    J_beta . M = M . J_alpha

on the 4x4 block M of (ad + ad*)(A_gamma) mapping the alpha-line to the
beta-line.  The tangent half of M is the Chevalley constant N(gamma, alpha)
times the identity; the cotangent half is the coadjoint block induced
through the KKS identification.  Solving the equation at sampled fiber
values and propagating along the component graph (edges = +/-<Theta> steps)
confirms each component carries a single fiber structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Set, Tuple

from .fibers import (
    FIBER_SAMPLES,
    FiberStructure,
    complex_type,
    fiber_matrix,
    noncomplex_type,
)
from .isotropy import FlagSpec, IsotropyDecomposition, decompose_isotropy, theta_span
from .ratmat import mat_mul, solve_linear
from .roots import Root, vadd, vneg, vsub

_F0, _F1 = Fraction(0), Fraction(1)

# Basis matrices of the noncomplex family: NC(a, x, y) = a*D + x*X + y*Y.
_D = ((_F1, _F0, _F0, _F0), (_F0, _F1, _F0, _F0),
      (_F0, _F0, -_F1, _F0), (_F0, _F0, _F0, -_F1))
_X = ((_F0, _F0, _F0, -_F1), (_F0, _F0, _F1, _F0),
      (_F0, _F0, _F0, _F0), (_F0, _F0, _F0, _F0))
_Y = ((_F0, _F0, _F0, _F0), (_F0, _F0, _F0, _F0),
      (_F0, -_F1, _F0, _F0), (_F1, _F0, _F0, _F0))


@dataclass(frozen=True)
class CommutationBlock:
    gamma: Root
    alpha: Root
    beta: Root
    matrix: Tuple[Tuple[Fraction, ...], ...]


def adjoint_block(rs, fs: FlagSpec, gamma: Root, alpha: Root,
                  convention: int = 1) -> CommutationBlock:
    """The alpha -> beta block of (ad + ad*)(A_gamma), beta = alpha + gamma."""
    span = set(theta_span(fs))
    if gamma not in span:
        raise ValueError(f"gamma {gamma} is not in <Theta>^+")
    beta = vadd(alpha, gamma)
    if not rs.is_positive_root(beta):
        raise ValueError(f"alpha + gamma = {beta} is not a root")
    if not rs.is_positive_root(alpha) or alpha in span or beta in span:
        raise ValueError("alpha and alpha + gamma must lie outside <Theta>")
    t = Fraction(rs.structure_constant(gamma, alpha, convention))
    # Coadjoint block on (-S*, A*): scalar too, via the KKS weights 4i/(r,r).
    c = -Fraction(rs.norm(beta), rs.norm(alpha)) \
        * rs.structure_constant(gamma, vneg(beta), convention)
    m = (
        (t, _F0, _F0, _F0),
        (_F0, t, _F0, _F0),
        (_F0, _F0, c, _F0),
        (_F0, _F0, _F0, c),
    )
    return CommutationBlock(gamma, alpha, beta, m)


def solve_commutation(block: CommutationBlock,
                      j_alpha: FiberStructure) -> frozenset:
    """All fiber structures J_beta with J_beta . M = M . J_alpha, exactly."""
    m = block.matrix
    target = mat_mul(m, fiber_matrix(j_alpha))
    out = set()
    for s in (1, -1):
        cand = complex_type(s)
        if mat_mul(fiber_matrix(cand), m) == target:
            out.add(cand)
    dm, xm, ym = mat_mul(_D, m), mat_mul(_X, m), mat_mul(_Y, m)
    rows, rhs = [], []
    for r in range(4):
        for col in range(4):
            rows.append((dm[r][col], xm[r][col], ym[r][col]))
            rhs.append(target[r][col])
    status, sol = solve_linear(rows, rhs)
    if status == "unique":
        a, x, y = sol
        if x != 0 and a * a == x * y - 1:
            out.add(noncomplex_type(a, x, y))
    elif status == "underdetermined":
        raise ValueError("degenerate commutation block: solution space is positive-dimensional")
    return frozenset(out)


def _component_edges(rs, span: Set[Root], roots: Sequence[Root]):
    """Oriented edges (alpha, gamma) with alpha + gamma in the component."""
    rset = set(roots)
    edges = []
    for a in roots:
        for b in roots:
            if a == b:
                continue
            d = vsub(b, a)
            if d in span:
                edges.append((a, d))
    # Undirected adjacency for connectivity.
    adj: Dict[Root, Set[Root]] = {r: set() for r in roots}
    for a, d in edges:
        b = vadd(a, d)
        if b in rset:
            adj[a].add(b)
            adj[b].add(a)
    return edges, adj


def _connected(adj: Dict[Root, Set[Root]]) -> bool:
    nodes = list(adj)
    if len(nodes) <= 1:
        return True
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(nodes)


def constancy_report(fs: FlagSpec,
                     samples: Sequence[FiberStructure] = FIBER_SAMPLES,
                     decomp: Optional[IsotropyDecomposition] = None) -> dict:
    """Per-component connectivity and commutation-solve results."""
    rs = fs.rs
    if decomp is None:
        decomp = decompose_isotropy(fs)
    span = set(theta_span(fs))
    components = []
    ok = True
    solve_cache: Dict[Tuple, frozenset] = {}
    for comp in decomp.components:
        edges, adj = _component_edges(rs, span, comp.roots)
        connected = _connected(adj)
        # Single-step completeness: every pair joined by one <Theta> step.
        single_step = all(
            vsub(b, a) in span or vsub(a, b) in span
            for i, a in enumerate(comp.roots)
            for b in comp.roots[i + 1:]
        )
        forced = True
        for alpha, gamma in edges:
            block = adjoint_block(rs, fs, gamma, alpha)
            key = (block.matrix[0][0], block.matrix[2][2])
            for j in samples:
                ckey = key + (j,)
                sols = solve_cache.get(ckey)
                if sols is None:
                    sols = solve_commutation(block, j)
                    solve_cache[ckey] = sols
                if sols != frozenset({j}):
                    forced = False
        comp_ok = connected and forced
        ok = ok and comp_ok
        components.append({
            "key": list(comp.key),
            "size": len(comp.roots),
            "edges": len(edges),
            "connected": connected,
            "single_step": single_step,
            "solves_forced": forced,
            "ok": comp_ok,
        })
    return {"constant": ok, "components": components}


def verify_constancy(fs: FlagSpec,
                     samples: Sequence[FiberStructure] = FIBER_SAMPLES) -> bool:
    """True iff every component is connected by <Theta> steps and each edge
    solve pins J_beta = J_alpha at all sampled fiber values."""
    return constancy_report(fs, samples)["constant"]
