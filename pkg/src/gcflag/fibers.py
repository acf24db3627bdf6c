"""Invariant fiber structures on u_alpha + u_alpha* and their integrability.

Each root line carries one of two families of pairing-preserving squares
of -1, written in the basis (A, S, -S*, A*):

    complex type      +/- J0, J0 = [[0,-1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,1,0]]
    noncomplex type   [[a,0,0,-x],[0,a,x,0],[0,-y,-a,0],[y,0,0,-a]],
                      a^2 = x*y - 1 exactly.

Whether an almost structure integrates is decided triple by triple.  For a
root triple (alpha, beta, alpha+beta) the admissible combinations are:

    all complex       not (sign(alpha) == sign(beta) != sign(alpha+beta))
    one of alpha/beta noncomplex
                      the two complex entries share their sign
    only the sum noncomplex
                      alpha and beta carry opposite signs
    two noncomplex    never integrable
    all noncomplex    both chain polynomials vanish:
                          a_s*x_a*x_b - a_b*x_a*x_s - a_a*x_b*x_s = 0
                          x_a*x_b - x_a*x_s - x_b*x_s = 0

Pattern enumeration treats noncomplex entries symbolically: a pattern whose
triples are all-noncomplex is admitted conditionally on the chain
polynomials, which solve_noncomplex_chain resolves on demand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .isotropy import FlagSpec, IsotropyDecomposition, Triple, decompose_isotropy, enumerate_triples
from .ratmat import mat_mul

COMPLEX = "complex"
NONCOMPLEX = "noncomplex"

TAG_C_PLUS = "C+"
TAG_C_MINUS = "C-"
TAG_NC = "NC"
TAGS = (TAG_C_PLUS, TAG_C_MINUS, TAG_NC)


@dataclass(frozen=True)
class FiberStructure:
    kind: str
    sign: int = 0
    a: Optional[Fraction] = None
    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind == COMPLEX:
            if self.sign not in (1, -1):
                raise ValueError("complex type needs sign +1 or -1")
        elif self.kind == NONCOMPLEX:
            if self.a is None or self.x is None or self.y is None:
                raise ValueError("noncomplex type needs parameters a, x, y")
            if self.a * self.a != self.x * self.y - 1:
                raise ValueError(f"noncomplex invariant a^2 = xy - 1 violated: {self}")
            if self.x == 0:
                raise ValueError("noncomplex x must be nonzero")
        else:
            raise ValueError(f"unknown fiber kind {self.kind!r}")

    @property
    def is_complex(self) -> bool:
        return self.kind == COMPLEX

    @property
    def tag(self) -> str:
        if self.is_complex:
            return TAG_C_PLUS if self.sign > 0 else TAG_C_MINUS
        return TAG_NC

    def __str__(self):
        if self.is_complex:
            return "C(+)" if self.sign > 0 else "C(-)"
        return f"NC({self.a},{self.x},{self.y})"


def complex_type(sign: int) -> FiberStructure:
    return FiberStructure(COMPLEX, sign=sign)


def noncomplex_type(a, x, y) -> FiberStructure:
    return FiberStructure(NONCOMPLEX, a=Fraction(a), x=Fraction(x), y=Fraction(y))


C_PLUS = complex_type(1)
C_MINUS = complex_type(-1)

# Fixed rational sample points on a^2 = xy - 1 used by sweeps and solvers.
NC_SAMPLE_POINTS = (
    noncomplex_type(0, 1, 1),
    noncomplex_type(1, 2, 1),
    noncomplex_type(2, 5, 1),
    noncomplex_type(1, 1, 2),
    noncomplex_type(0, Fraction(1, 2), 2),
)

FIBER_SAMPLES = (C_PLUS, C_MINUS) + NC_SAMPLE_POINTS

_F0, _F1 = Fraction(0), Fraction(1)

# Split pairing in the (A, S, -S*, A*) basis: A pairs with -S*, S with A*.
SPLIT_PAIRING = (
    (_F0, _F0, Fraction(1, 2), _F0),
    (_F0, _F0, _F0, Fraction(1, 2)),
    (Fraction(1, 2), _F0, _F0, _F0),
    (_F0, Fraction(1, 2), _F0, _F0),
)


def fiber_matrix(f: FiberStructure):
    """The 4x4 matrix of the structure in the basis (A, S, -S*, A*)."""
    if f.is_complex:
        s = Fraction(f.sign)
        return (
            (_F0, -s, _F0, _F0),
            (s, _F0, _F0, _F0),
            (_F0, _F0, _F0, -s),
            (_F0, _F0, s, _F0),
        )
    a, x, y = f.a, f.x, f.y
    return (
        (a, _F0, _F0, -x),
        (_F0, a, x, _F0),
        (_F0, -y, -a, _F0),
        (y, _F0, _F0, -a),
    )


def chain_residuals(f_a: FiberStructure, f_b: FiberStructure,
                    f_s: FiberStructure) -> Tuple[Fraction, Fraction]:
    """The two chain polynomials of an all-noncomplex triple."""
    r1 = f_s.a * f_a.x * f_b.x - f_b.a * f_a.x * f_s.x - f_a.a * f_b.x * f_s.x
    r2 = f_a.x * f_b.x - f_a.x * f_s.x - f_b.x * f_s.x
    return (r1, r2)


def _classify_triple(f_a: FiberStructure, f_b: FiberStructure, f_s: FiberStructure):
    """(integrable, reason-or-None, residuals-or-None) for concrete fibers."""
    nc = [not f.is_complex for f in (f_a, f_b, f_s)]
    count = sum(nc)
    if count == 0:
        if f_a.sign == f_b.sign != f_s.sign:
            return (False, "complex_sign_rule", None)
        return (True, None, None)
    if count == 3:
        res = chain_residuals(f_a, f_b, f_s)
        return (res == (0, 0), None, res)
    if count == 2:
        return (False, "two_noncomplex", None)
    # exactly one noncomplex entry
    if nc[2]:
        if f_a.sign != f_b.sign:
            return (True, None, None)
        return (False, "sum_noncomplex_sign_rule", None)
    c1, c2 = (f_b, f_s) if nc[0] else (f_a, f_s)
    if c1.sign == c2.sign:
        return (True, None, None)
    return (False, "single_noncomplex_sign_rule", None)


def triple_integrable(f_a: FiberStructure, f_b: FiberStructure,
                      f_s: FiberStructure) -> bool:
    """Decision table above; symmetric in the first two arguments."""
    return _classify_triple(f_a, f_b, f_s)[0]


class Assignment:
    """One fiber structure per isotropy component."""

    def __init__(self, decomp: IsotropyDecomposition,
                 fibers: Sequence[FiberStructure]):
        if len(fibers) != len(decomp.components):
            raise ValueError(
                f"assignment needs {len(decomp.components)} fibers, got {len(fibers)}"
            )
        self.decomp = decomp
        self.fibers = tuple(fibers)

    @classmethod
    def from_mapping(cls, decomp: IsotropyDecomposition,
                     mapping: Mapping[int, FiberStructure]) -> "Assignment":
        missing = [i for i in range(len(decomp.components)) if i not in mapping]
        if missing:
            keys = ", ".join(str(decomp.components[i].key) for i in missing)
            raise ValueError(f"partial assignment; missing components: {keys}")
        return cls(decomp, [mapping[i] for i in range(len(decomp.components))])

    def fiber_of_root(self, root) -> FiberStructure:
        return self.fibers[self.decomp.component_index(root)]

    def key(self) -> Tuple[FiberStructure, ...]:
        return self.fibers


def global_sign_flip(asg: Assignment) -> Assignment:
    """Flip every complex sign and negate every noncomplex parameter triple."""
    flipped = []
    for f in asg.fibers:
        if f.is_complex:
            flipped.append(complex_type(-f.sign))
        else:
            flipped.append(noncomplex_type(-f.a, -f.x, -f.y))
    return Assignment(asg.decomp, flipped)


@dataclass(frozen=True)
class IntegrabilityReport:
    verdict: bool
    violations: Tuple[Tuple[Triple, str], ...]
    noncomplex_residuals: Tuple[Tuple[Triple, Tuple[Fraction, Fraction]], ...]


def assignment_integrable(fs: FlagSpec, asg: Assignment,
                          triples: Optional[Tuple[Triple, ...]] = None) -> IntegrabilityReport:
    """Run the decision table over every triple of the flag."""
    if triples is None:
        triples = enumerate_triples(fs, asg.decomp)
    violations = []
    residuals = []
    for t in triples:
        i, j, k = t.comps
        ok, reason, res = _classify_triple(asg.fibers[i], asg.fibers[j], asg.fibers[k])
        if res is not None:
            residuals.append((t, res))
        if not ok and reason is not None:
            violations.append((t, reason))
    verdict = not violations and all(r == (0, 0) for _, r in residuals)
    return IntegrabilityReport(verdict, tuple(violations), tuple(residuals))


@dataclass(frozen=True)
class TypePattern:
    """Symbolic per-component tags; NC parameters left unresolved."""

    tags: Tuple[str, ...]
    conditional: Tuple[Tuple[int, int, int], ...] = ()

    @property
    def is_conditional(self) -> bool:
        return bool(self.conditional)


def _pattern_class_ok(tags, cls) -> Tuple[bool, bool]:
    """(admissible, all_noncomplex) for one triple class under symbolic tags."""
    i, j, k = cls
    ta, tb, tk = tags[i], tags[j], tags[k]
    slot_nc = (ta == TAG_NC, tb == TAG_NC, tk == TAG_NC)
    count = sum(slot_nc)
    if count == 0:
        sa, sb, sk = (t == TAG_C_PLUS for t in (ta, tb, tk))
        return (not (sa == sb != sk), False)
    if count == 3:
        return (True, True)
    if count == 2:
        return (False, False)
    if slot_nc[2]:
        return (ta != tb, False)
    c1, c2 = (tb, tk) if slot_nc[0] else (ta, tk)
    return (c1 == c2, False)


def triple_classes(triples: Iterable[Triple]) -> Tuple[Tuple[int, int, int], ...]:
    return tuple(sorted({t.comp_class for t in triples}))


def enumerate_integrable_patterns(fs: FlagSpec,
                                  decomp: Optional[IsotropyDecomposition] = None
                                  ) -> Tuple[TypePattern, ...]:
    """All 3^s symbolic patterns surviving every triple class of the flag."""
    if decomp is None:
        decomp = decompose_isotropy(fs)
    classes = triple_classes(enumerate_triples(fs, decomp))
    s = len(decomp.components)
    out = []
    for tags in itertools.product(TAGS, repeat=s):
        conditional = []
        ok = True
        for cls in classes:
            admissible, all_nc = _pattern_class_ok(tags, cls)
            if not admissible:
                ok = False
                break
            if all_nc:
                conditional.append(cls)
        if ok:
            out.append(TypePattern(tags, tuple(conditional)))
    return tuple(sorted(out, key=lambda p: p.tags))


def pattern_assignments(decomp: IsotropyDecomposition, pattern: TypePattern,
                        nc_points: Sequence[FiberStructure] = NC_SAMPLE_POINTS,
                        full_product_limit: int = 2):
    """Concrete assignments realizing a pattern, NC slots swept over nc_points.

    Up to full_product_limit noncomplex components get the full cartesian
    sweep; beyond that the sweep is the five diagonal shifts, which keeps
    large flags tractable while still mixing parameter values.
    """
    nc_slots = [i for i, t in enumerate(pattern.tags) if t == TAG_NC]
    base = [C_PLUS if t == TAG_C_PLUS else C_MINUS if t == TAG_C_MINUS else None
            for t in pattern.tags]
    if not nc_slots:
        yield Assignment(decomp, base)
        return
    n = len(nc_points)
    if len(nc_slots) <= full_product_limit:
        combos = itertools.product(range(n), repeat=len(nc_slots))
    else:
        combos = ([(pos + shift) % n for pos in range(len(nc_slots))]
                  for shift in range(n))
    for combo in combos:
        fibers = list(base)
        for slot, choice in zip(nc_slots, combo):
            fibers[slot] = nc_points[choice]
        yield Assignment(decomp, fibers)


def sweep_assignments(decomp: IsotropyDecomposition,
                      nc_points: Sequence[FiberStructure] = NC_SAMPLE_POINTS,
                      full_product_limit: int = 2):
    """Structured sweep over all 3^s patterns with NC parameters sampled."""
    s = len(decomp.components)
    for tags in itertools.product(TAGS, repeat=s):
        pattern = TypePattern(tags)
        yield from pattern_assignments(decomp, pattern, nc_points, full_product_limit)


def solve_noncomplex_chain(f_a: FiberStructure,
                           f_b: FiberStructure) -> Optional[FiberStructure]:
    """Solve the chain polynomials for the sum fiber of two noncomplex fibers.

    Returns None exactly when x_a + x_b = 0, where the second polynomial
    would force x_a*x_b = 0 against the noncomplex invariant.
    """
    if f_a.is_complex or f_b.is_complex:
        raise ValueError("solve_noncomplex_chain expects two noncomplex fibers")
    if f_a.x + f_b.x == 0:
        return None
    x_s = f_a.x * f_b.x / (f_a.x + f_b.x)
    a_s = (f_b.a * f_a.x * x_s + f_a.a * f_b.x * x_s) / (f_a.x * f_b.x)
    y_s = (a_s * a_s + 1) / x_s
    return noncomplex_type(a_s, x_s, y_s)


def compress_pattern_rows(patterns: Sequence[TypePattern]):
    """Group a sign-flip-closed pattern set into +/- table rows.

    Each row is a tuple of tokens from {"C±", "C∓", "NC"}; the anchor is
    the first complex entry, rendered "C±".  The all-noncomplex pattern is
    its own row.
    """
    remaining = {p.tags: p for p in patterns}
    rows = []
    for tags in sorted(remaining):
        if tags not in remaining:
            continue
        pattern = remaining.pop(tags)
        if all(t == TAG_NC for t in tags):
            rows.append((("NC",) * len(tags), pattern))
            continue
        anchor = next(t for t in tags if t != TAG_NC)
        base = tags if anchor == TAG_C_PLUS else tuple(
            {TAG_C_PLUS: TAG_C_MINUS, TAG_C_MINUS: TAG_C_PLUS, TAG_NC: TAG_NC}[t] for t in tags
        )
        partner = tuple(
            {TAG_C_PLUS: TAG_C_MINUS, TAG_C_MINUS: TAG_C_PLUS, TAG_NC: TAG_NC}[t] for t in tags
        )
        if partner not in remaining and partner != tags:
            raise AssertionError("pattern set is not closed under the global sign flip")
        remaining.pop(partner, None)
        tokens = tuple(
            "NC" if t == TAG_NC else ("C±" if t == TAG_C_PLUS else "C∓") for t in base
        )
        rows.append((tokens, pattern))
    rows.sort(key=lambda r: (sum(tok == "NC" for tok in r[0]), r[0]))
    return [r[0] for r in rows]


def expand_row(tokens: Sequence[str]) -> Tuple[Tuple[str, ...], ...]:
    """Expand a +/- row into its one or two concrete tag vectors."""
    if all(t == "NC" for t in tokens):
        return (tuple(TAG_NC for _ in tokens),)
    plus = tuple(
        TAG_NC if t == "NC" else (TAG_C_PLUS if t == "C±" else TAG_C_MINUS) for t in tokens
    )
    minus = tuple(
        TAG_NC if t == "NC" else (TAG_C_MINUS if t == "C±" else TAG_C_PLUS) for t in tokens
    )
    return (plus, minus)


def verify_fiber_matrix(f: FiberStructure) -> bool:
    """M^2 = -I and M^T P M = P for the split pairing."""
    m = fiber_matrix(f)
    n = len(m)
    sq = mat_mul(m, m)
    if any(sq[i][j] != (-1 if i == j else 0) for i in range(n) for j in range(n)):
        return False
    mt = tuple(tuple(m[i][j] for i in range(n)) for j in range(n))
    return mat_mul(mat_mul(mt, SPLIT_PAIRING), m) == SPLIT_PAIRING
