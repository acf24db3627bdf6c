"""Independent integrability oracle via the Nijenhuis operator.

Works in the compact-form basis A_r = X_r - X_{-r}, S_r = i(X_r + X_{-r})
over exact Gaussian-rational scalars.  Cotangent vectors are identified
with tangent ones through the Kirillov-Kostant-Souriau form at a regular
element H, which turns the operator on elements A = A_1 + A_2*,
B = B_1 + B_2*, C = C_1 + C_2* supported on root lines a, b, c into

    N(A, B, C) = (1/2) * ( k_c <H, [C_2, [A_1, B_1]]>
                         + k_a <H, [A_2, [B_1, C_1]]>
                         + k_b <H, [B_2, [C_1, A_1]]> ),

with k_r = 1 / r(H).  An assignment is integrable exactly when N vanishes
on every triple of basis vectors of its i-eigenbundle L.

Element encoding: sparse dicts mapping basis keys to GaussianRational.
Keys are ("A", ridx), ("S", ridx), ("A*", ridx), ("S*", ridx) with ridx an
index into rs.positive_roots, and ("H", i) for the i-th simple coroot.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .fibers import Assignment, FiberStructure
from .gaussian import GaussianRational
from .isotropy import FlagSpec, IsotropyDecomposition, decompose_isotropy, theta_span
from .roots import RootSystem, vadd, vneg, vsub

GQ = GaussianRational
_ZERO = GQ(0)

_ODD_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23)

TANGENT_KINDS = ("A", "S")
COTANGENT_KINDS = ("A*", "S*")


class RegularElement:
    """H = sum a_j H_j over Sigma \ Theta, with alpha_j(H_j) = delta_ij."""

    def __init__(self, fs: FlagSpec, coeffs: Dict[int, Fraction]):
        sigma = fs.sigma_minus_theta
        if set(coeffs) != set(sigma):
            raise ValueError(f"coefficients must be indexed by {sigma}")
        self.fs = fs
        self.coeffs = {j: Fraction(v) for j, v in coeffs.items()}
        span = set(theta_span(fs))
        for r in fs.rs.positive_roots:
            val = self.root_value(r)
            if (val == 0) != (r in span):
                raise ValueError(f"element is not regular for Theta: root {r}")

    @classmethod
    def odd_primes(cls, fs: FlagSpec) -> "RegularElement":
        sigma = fs.sigma_minus_theta
        return cls(fs, {j: Fraction(_ODD_PRIMES[k]) for k, j in enumerate(sigma)})

    @classmethod
    def powers_of_ten(cls, fs: FlagSpec) -> "RegularElement":
        sigma = fs.sigma_minus_theta
        return cls(fs, {j: Fraction(10 ** k) for k, j in enumerate(sigma)})

    def root_value(self, root) -> Fraction:
        return sum(
            (self.coeffs[j] * root[j - 1] for j in self.coeffs if root[j - 1]),
            Fraction(0),
        )

    def coroot_pairing(self, i: int) -> Fraction:
        """<H, alpha_i^vee> for 0-based simple index i."""
        a = self.coeffs.get(i + 1, Fraction(0))
        return 2 * a / self.fs.rs.simple_norms[i]


def _basis_bracket(rs: RootSystem, k1, k2, convention: int):
    """Bracket of two single basis vectors as a tuple of (key, scalar)."""
    t1, i1 = k1
    t2, i2 = k2
    if t1 == "H" and t2 == "H":
        return ()
    if t1 == "H":
        v = rs.positive_roots[i2]
        pairing = rs.cartan_pairing(v, i1)
        if pairing == 0:
            return ()
        if t2 == "A":
            return ((("S", i2), GQ(0, -pairing)),)
        return ((("A", i2), GQ(0, pairing)),)
    if t2 == "H":
        return tuple((k, -c) for k, c in _basis_bracket(rs, k2, k1, convention))
    va, vb = rs.positive_roots[i1], rs.positive_roots[i2]
    if i1 == i2:
        if t1 == t2:
            return ()
        # [A_r, S_r] = 2i * coroot(r); [S_r, A_r] is its negative.
        sgn = 1 if (t1, t2) == ("A", "S") else -1
        return tuple(
            (("H", i), GQ(0, 2 * sgn * c))
            for i, c in enumerate(rs.coroot_coords(va))
            if c
        )
    if t1 == "S" and t2 == "A":
        return tuple((k, -c) for k, c in _basis_bracket(rs, k2, k1, convention))
    out = []
    s = vadd(va, vb)
    ns = rs.structure_constant(va, vb, convention) if rs.is_root(s) else 0
    d = vsub(va, vb)
    nd = rs.structure_constant(va, vneg(vb), convention) if rs.is_root(d) else 0
    if t1 == "A" and t2 == "A":
        if ns:
            out.append((("A", rs.root_index(s)), GQ(ns)))
        if nd:
            if d in rs._index:
                out.append((("A", rs.root_index(d)), GQ(-nd)))
            else:
                out.append((("A", rs.root_index(vneg(d))), GQ(nd)))
    elif t1 == "A" and t2 == "S":
        if ns:
            out.append((("S", rs.root_index(s)), GQ(ns)))
        if nd:
            idx = rs.root_index(d) if d in rs._index else rs.root_index(vneg(d))
            out.append((("S", idx), GQ(nd)))
    else:  # S, S
        if ns:
            out.append((("A", rs.root_index(s)), GQ(-ns)))
        if nd:
            if d in rs._index:
                out.append((("A", rs.root_index(d)), GQ(-nd)))
            else:
                out.append((("A", rs.root_index(vneg(d))), GQ(nd)))
    return tuple(out)


def bracket(rs: RootSystem, e1: Dict, e2: Dict, convention: int = 1,
            _memo: Optional[dict] = None) -> Dict:
    """Bilinear bracket of tangent-side elements (A/S/H kinds only)."""
    out: Dict = {}
    for k1, c1 in e1.items():
        if k1[0] in COTANGENT_KINDS:
            raise ValueError("bracket is defined on the tangent side only")
        for k2, c2 in e2.items():
            if k2[0] in COTANGENT_KINDS:
                raise ValueError("bracket is defined on the tangent side only")
            if _memo is not None:
                terms = _memo.get((k1, k2))
                if terms is None:
                    terms = _basis_bracket(rs, k1, k2, convention)
                    _memo[(k1, k2)] = terms
            else:
                terms = _basis_bracket(rs, k1, k2, convention)
            if not terms:
                continue
            cc = c1 * c2
            for key, coeff in terms:
                cur = out.get(key, _ZERO) + cc * coeff
                if cur:
                    out[key] = cur
                elif key in out:
                    del out[key]
    return out


def pair_with_regular(H: RegularElement, elem: Dict) -> GQ:
    """Killing pairing of H with the Cartan part of an element."""
    total = _ZERO
    for key, coeff in elem.items():
        if key[0] == "H":
            total = total + coeff * H.coroot_pairing(key[1])
    return total


def _split_single_root(rs: RootSystem, elem: Dict):
    """(tangent part, cotangent tangent-representative, root index)."""
    tangent: Dict = {}
    cot: Dict = {}
    ridx = None
    for key, coeff in elem.items():
        kind, idx = key
        if kind == "H":
            raise ValueError("operator arguments must carry no Cartan part")
        if ridx is None:
            ridx = idx
        elif idx != ridx:
            raise ValueError("operator arguments must be supported on a single root")
        if kind in TANGENT_KINDS:
            tangent[(kind, idx)] = coeff
        else:
            cot[(kind[0], idx)] = coeff
    if ridx is None:
        raise ValueError("empty element")
    return tangent, cot, ridx


def nijenhuis_eval(rs: RootSystem, H: RegularElement, A: Dict, B: Dict, C: Dict,
                   convention: int = 1, _memo: Optional[dict] = None) -> GQ:
    """The operator value on three single-root elements."""
    a1, a2, ra = _split_single_root(rs, A)
    b1, b2, rb = _split_single_root(rs, B)
    c1, c2, rc = _split_single_root(rs, C)
    ks = []
    for ridx in (ra, rb, rc):
        val = H.root_value(rs.positive_roots[ridx])
        if val == 0:
            raise ValueError(
                f"root {rs.positive_roots[ridx]} lies in <Theta>; k-factor undefined"
            )
        ks.append(Fraction(1) / val)
    k_a, k_b, k_c = ks
    total = _ZERO
    if c2 and a1 and b1:
        total = total + k_c * pair_with_regular(
            H, bracket(rs, c2, bracket(rs, a1, b1, convention, _memo), convention, _memo))
    if a2 and b1 and c1:
        total = total + k_a * pair_with_regular(
            H, bracket(rs, a2, bracket(rs, b1, c1, convention, _memo), convention, _memo))
    if b2 and c1 and a1:
        total = total + k_b * pair_with_regular(
            H, bracket(rs, b2, bracket(rs, c1, a1, convention, _memo), convention, _memo))
    return total * Fraction(1, 2)


def eigenbasis_vectors(ridx: int, fiber: FiberStructure) -> Tuple[Dict, Dict]:
    """Two spanning i-eigenvectors of the fiber structure on one root line."""
    if fiber.is_complex:
        s = fiber.sign
        v1 = {("A", ridx): GQ(1), ("S", ridx): GQ(0, -s)}
        v2 = {("S*", ridx): GQ(-1), ("A*", ridx): GQ(0, -s)}
        return (v1, v2)
    am_i = GQ(fiber.a, -1)
    v1 = {("A", ridx): GQ(fiber.x), ("A*", ridx): am_i}
    v2 = {("S", ridx): GQ(fiber.x), ("S*", ridx): am_i}
    return (v1, v2)


def eigenbasis(fs: FlagSpec, asg: Assignment) -> Dict[int, Tuple[Dict, Dict]]:
    """The i-eigenbundle basis of an assignment, per m-root index."""
    rs = fs.rs
    out = {}
    for root in asg.decomp.m_roots:
        ridx = rs.root_index(root)
        out[ridx] = eigenbasis_vectors(ridx, asg.fiber_of_root(root))
    return out


def element_coordinates(elem: Dict, ridx: int) -> Tuple[GQ, GQ, GQ, GQ]:
    """Coordinates of a single-root element in the basis (A, S, -S*, A*)."""
    return (
        elem.get(("A", ridx), _ZERO),
        elem.get(("S", ridx), _ZERO),
        -elem.get(("S*", ridx), _ZERO),
        elem.get(("A*", ridx), _ZERO),
    )


def oracle_triples(fs: FlagSpec,
                   decomp: Optional[IsotropyDecomposition] = None
                   ) -> Tuple[Tuple[int, int, int], ...]:
    """Distinct m-root triples with at least one pairwise sum a root.

    The operator vanishes identically on every other triple, which tests
    assert on samples rather than trusting silently.
    """
    if decomp is None:
        decomp = decompose_isotropy(fs)
    rs = fs.rs
    idxs = [rs.root_index(r) for r in decomp.m_roots]
    roots = rs.positive_roots
    out = []
    for a in range(len(idxs)):
        for b in range(a + 1, len(idxs)):
            ia, ib = idxs[a], idxs[b]
            sum_ab = rs.is_root(vadd(roots[ia], roots[ib]))
            for c in range(b + 1, len(idxs)):
                ic = idxs[c]
                if (sum_ab
                        or rs.is_root(vadd(roots[ib], roots[ic]))
                        or rs.is_root(vadd(roots[ia], roots[ic]))):
                    out.append((ia, ib, ic))
    return tuple(out)


class OracleSession:
    """Caches bracket terms and per-triple verdicts for sweeps over one flag."""

    def __init__(self, fs: FlagSpec, H: Optional[RegularElement] = None,
                 convention: int = 1,
                 decomp: Optional[IsotropyDecomposition] = None):
        self.fs = fs
        self.rs = fs.rs
        self.convention = convention
        self.decomp = decomp if decomp is not None else decompose_isotropy(fs)
        self.H = H if H is not None else RegularElement.odd_primes(fs)
        self.triples = oracle_triples(fs, self.decomp)
        self._bracket_memo: dict = {}
        self._verdict_memo: dict = {}
        self._eigen_memo: dict = {}

    def _eigen(self, ridx: int, fiber: FiberStructure):
        key = (ridx, fiber)
        vecs = self._eigen_memo.get(key)
        if vecs is None:
            vecs = eigenbasis_vectors(ridx, fiber)
            self._eigen_memo[key] = vecs
        return vecs

    def triple_vanishes(self, tri: Tuple[int, int, int],
                        fibers: Tuple[FiberStructure, FiberStructure, FiberStructure]) -> bool:
        key = (tri, fibers)
        cached = self._verdict_memo.get(key)
        if cached is not None:
            return cached
        ia, ib, ic = tri
        ok = True
        for u in self._eigen(ia, fibers[0]):
            for v in self._eigen(ib, fibers[1]):
                for w in self._eigen(ic, fibers[2]):
                    if nijenhuis_eval(self.rs, self.H, u, v, w,
                                      self.convention, self._bracket_memo):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        self._verdict_memo[key] = ok
        return ok

    def assignment_integrable(self, asg: Assignment) -> bool:
        roots = self.rs.positive_roots
        comp = self.decomp.component_index
        for tri in self.triples:
            fibers = tuple(asg.fibers[comp(roots[i])] for i in tri)
            if not self.triple_vanishes(tri, fibers):
                return False
        return True


def oracle_integrable(fs: FlagSpec, asg: Assignment,
                      H: Optional[RegularElement] = None,
                      convention: int = 1) -> bool:
    """True iff the operator vanishes on the i-eigenbundle of the assignment."""
    return OracleSession(fs, H, convention, asg.decomp).assignment_integrable(asg)
