"""Filtered bases, the genus sequence, neededness and pole-growth bookkeeping.

Throughout, the valuation is v_inf and deg(e) = -v_inf(e).  A filtered basis
is normalized so that e_1 = 1; S_i denotes the span of e_1, ..., e_i and
gamma_i = dim S_i^2 - 2 i + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Optional, Sequence

from .errors import (
    HypothesisNotMet,
    InternalInvariantViolation,
    SmallFieldExhausted,
    SpanMismatch,
)
from .linalg import Echelon
from .places import (
    Divisor,
    INF,
    Place,
    Subspace,
    _split_roots,
    minimal_divisor,
    riemann_roch_space,
    valuation,
)
from .poly import Poly, poly_lcm
from .ratfunc import RatFunc
from .subspace import contains, poly_space, product, scale, space_sum, span


# -- filtered bases ------------------------------------------------------


@dataclass
class FilteredBasis:
    elements: list  # e_1 = 1, e_2, ..., e_n with strictly increasing degree
    normalizer: RatFunc  # the original space equals normalizer * span(elements)

    @property
    def field(self):
        return self.normalizer.field

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def degrees(self) -> list[int]:
        return [e.degree for e in self.elements]

    def space(self) -> Subspace:
        return span(self.elements, self.field)

    @classmethod
    def from_elements(cls, elements: Sequence[RatFunc]) -> "FilteredBasis":
        """Wrap an explicit basis after checking e_1 = 1 and strictly increasing degrees."""
        elements = list(elements)
        F = elements[0].field
        if elements[0] != RatFunc.constant(1, F):
            raise ValueError("a filtered basis must start with e_1 = 1")
        degs = [e.degree for e in elements]
        if any(b <= a for a, b in zip(degs, degs[1:])):
            raise ValueError(f"degrees must strictly increase, got {degs}")
        return cls(elements, RatFunc.constant(1, F))


def filtered_basis(S: Subspace) -> FilteredBasis:
    """Filtered basis of S with respect to v_inf, normalized so that e_1 = 1.

    The whole space is divided by its element of maximal v_inf; the echelon
    basis of the result, in ascending degree, is the filtered basis.
    """
    if not S.dim:
        raise ValueError("filtered basis of the zero space")
    low = min(S.rows, key=len)
    normalizer = RatFunc(Poly._make(S.field, low), S.den)
    T = scale(S, normalizer.inverse())
    elements = list(reversed(T.basis()))
    if elements[0] != RatFunc.constant(1, S.field):
        raise InternalInvariantViolation("normalized echelon basis does not start with 1")
    return FilteredBasis(elements, normalizer)


def natural_filtration(B: FilteredBasis) -> list[Subspace]:
    return [span(B.elements[:i], B.field) for i in range(1, B.n + 1)]


def _common_numerators(elements):
    F = elements[0].field
    den = Poly.constant(1, F)
    for e in elements:
        if e.den != den:
            den = poly_lcm(den, e.den)
    return den, [e.num * den.exact_div(e.den) for e in elements]


# -- genus profile ---------------------------------------------------------


@dataclass
class GenusProfile:
    gamma_seq: list[int]
    t: Optional[int]
    t1: Optional[int]
    delta: int
    degrees: list[int]
    square_dims: list[int]

    @property
    def gamma(self) -> int:
        return self.gamma_seq[-1]

    @property
    def n(self) -> int:
        return len(self.gamma_seq)

    def gamma_at(self, i: int) -> int:
        """1-based access: gamma_i."""
        return self.gamma_seq[i - 1]

    @property
    def degree_jump(self) -> Optional[int]:
        """deg e_t - deg e_{t-1}, when t is defined."""
        if self.t is None:
            return None
        return self.degrees[self.t - 1] - self.degrees[self.t - 2]

    @property
    def first_jump(self) -> Optional[int]:
        """Smallest i with gamma_i > 0 (the t of the pole-growth lemmas)."""
        return next((i + 1 for i, g in enumerate(self.gamma_seq) if g > 0), None)


def genus_profile(B: FilteredBasis, *, check: bool = True) -> GenusProfile:
    """gamma_i for every prefix, computed by incremental echelon of products.

    With ``check`` a sequence that fails to start at 0 or decreases raises
    InternalInvariantViolation.
    """
    F = B.field
    _, nums = _common_numerators(B.elements)
    ech = Echelon(F)
    dims = []
    for i, ni in enumerate(nums):
        for j in range(i + 1):
            ech.insert((nums[j] * ni).coeffs)
        dims.append(len(ech))
    gam = [d - 2 * (i + 1) + 1 for i, d in enumerate(dims)]
    if check and not genus_monotone(gam):
        raise InternalInvariantViolation(f"genus sequence not monotone from 0: {gam}")
    t = None
    if gam[-1] > 0:
        t = next(i + 1 for i, g in enumerate(gam) if g == gam[-1])
    t1 = next((i + 1 for i, g in enumerate(gam) if g == 1), None)
    delta = max((b - a for a, b in zip(gam, gam[1:])), default=0)
    return GenusProfile(gam, t, t1, delta, B.degrees, dims)


def genus_monotone(gam: Sequence[int]) -> bool:
    return gam[0] == 0 and all(a <= b for a, b in zip(gam, gam[1:]))


def combinatorial_genus(S: Subspace) -> int:
    return product(S, S).dim - 2 * S.dim + 1


def degree_table(B: FilteredBasis, k: Optional[int] = None) -> list[list[Optional[int]]]:
    """Upper-triangular table: entry (i, j), i <= j <= k, is deg(e_i e_j)."""
    k = B.n if k is None else k
    if k > B.n:
        raise ValueError(f"k = {k} exceeds n = {B.n}")
    d = B.degrees
    return [[d[i] + d[j] if j >= i else None for j in range(k)] for i in range(k)]


# -- neededness ------------------------------------------------------------


def _as_indices(E, T) -> set[int]:
    T = list(T)
    if all(isinstance(s, int) for s in T):
        return set(T)
    idx = set()
    for s in T:
        hits = [i for i, e in enumerate(E) if e == s]
        if not hits:
            raise ValueError(f"{s} is not in E")
        idx.update(hits)
    return idx


def _dim_with(base: Subspace, elems) -> int:
    elems = [e for e in elems]
    if not elems:
        return base.dim
    return space_sum(base, span(elems, base.field)).dim


def needed_count(target: Subspace, base: Subspace, E: Sequence[RatFunc], T) -> tuple[int, int]:
    """(min, max) of |B & T| over bases B within E of a complement of base in target.

    T is given as indices into E (or as elements of E).  The elements of T
    are needed exactly k times in the sense of the definition iff min = max = k.
    """
    E = list(E)
    Tidx = _as_indices(E, T)
    full = _dim_with(base, E)
    if full != target.dim or not all(contains(target, e) for e in E) or not base <= target:
        raise SpanMismatch("base + span(E) differs from the target space")
    rest = [e for i, e in enumerate(E) if i not in Tidx]
    tpart = [e for i, e in enumerate(E) if i in Tidx]
    lo = full - _dim_with(base, rest)
    hi = _dim_with(base, tpart) - base.dim
    return lo, hi


def needed_count_bruteforce(target: Subspace, base: Subspace, E, T) -> tuple[int, int]:
    """Same quantity by enumerating every candidate subset (small E only)."""
    E = list(E)
    Tidx = _as_indices(E, T)
    codim = target.dim - base.dim
    counts = []
    for B in combinations(range(len(E)), codim):
        if _dim_with(base, [E[i] for i in B]) == target.dim:
            counts.append(len(Tidx.intersection(B)))
    if not counts:
        raise SpanMismatch("no subset of E completes the base")
    return min(counts), max(counts)


def is_needed(s, target: Subspace, base: Subspace, E: Sequence[RatFunc]) -> bool:
    """s (an index into E, or an element of E) lies outside base + span(E minus s)."""
    E = list(E)
    if isinstance(s, int):
        k = s
    else:
        k = next((i for i, e in enumerate(E) if e == s), None)
        if k is None:
            raise ValueError(f"{s} is not in E")
    if _dim_with(base, E) != target.dim:
        raise SpanMismatch("base + span(E) differs from the target space")
    others = space_sum(base, span([e for i, e in enumerate(E) if i != k], base.field)) if len(E) > 1 else base
    return not contains(others, E[k])


def column_needed_counts(B: FilteredBasis, c: int) -> list[tuple[int, int]]:
    """needed_count of each single product e_i e_c (i = 1..c) relative to S_{c-1}^2.

    Same rank formulas as :func:`needed_count`, computed on numerator vectors
    over a common denominator, which avoids rebuilding subspaces per query.
    A single product is needed exactly when its (min, max) is (1, 1).
    """
    if not 2 <= c <= B.n:
        raise ValueError(f"column {c} out of range 2..{B.n}")
    F = B.field
    _, nums = _common_numerators(B.elements[:c])
    base = Echelon(F)
    for j in range(c - 1):
        for k in range(j, c - 1):
            base.insert((nums[j] * nums[k]).coeffs)
    E = [(nums[i] * nums[c - 1]).coeffs for i in range(c)]
    full = base.copy()
    for v in E:
        full.insert(v)
    out = []
    for i in range(c):
        rest = base.copy()
        for k, v in enumerate(E):
            if k != i:
                rest.insert(v)
        lo = len(full) - len(rest)
        hi = 0 if base.contains(E[i]) else 1
        out.append((lo, hi))
    return out


def needed_degree_screen(B: FilteredBasis, t: int) -> list[int]:
    """1-based i <= t with deg(e_i e_t) > max deg S_{t-1}^2 = 2 deg e_{t-1}."""
    if not 2 <= t <= B.n:
        raise ValueError(f"t = {t} out of range 2..{B.n}")
    d = B.degrees
    threshold = 2 * d[t - 2]
    return [i + 1 for i in range(t) if d[i] + d[t - 1] > threshold]


def column_products(B: FilteredBasis, c: int) -> list[RatFunc]:
    """E = [e_1 e_c, ..., e_c e_c]."""
    ec = B.elements[c - 1]
    return [B.elements[i] * ec for i in range(c)]


# -- super filtered bases --------------------------------------------------


@dataclass
class SuperFilteredBasis:
    elements: list
    pole_floor: dict  # alpha -> m_alpha < 0
    normalizer: RatFunc = None
    shifts: list = dc_field(default_factory=list)  # the a used at each i = 2..n

    @property
    def field(self):
        return self.elements[0].field

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def degrees(self) -> list[int]:
        return [e.degree for e in self.elements]

    def as_filtered(self) -> FilteredBasis:
        return FilteredBasis(list(self.elements), self.normalizer or RatFunc.constant(1, self.field))


def _laurent_lead(f: RatFunc, a):
    """(v_alpha(f), leading coefficient of the expansion of f at alpha)."""
    F = f.field
    lin = Poly._make(F, [F.norm(-a), F.one])
    num, den = f.num, f.den
    mn = md = 0
    while num(a) == 0:
        num = num.exact_div(lin)
        mn += 1
    while den(a) == 0:
        den = den.exact_div(lin)
        md += 1
    return mn - md, F.div(num(a), den(a))


def check_super_filtered(elements, pole_floor) -> bool:
    for a, m in pole_floor.items():
        P = Place(a)
        vals = [valuation(e, P) for e in elements]
        if any(b > c for c, b in zip(vals, vals[1:])) or vals[-1] != m:
            return False
    return True


def super_filter(elements: Sequence[RatFunc], normalizer: RatFunc | None = None,
                 *, check: bool = True) -> SuperFilteredBasis:
    """Sweep i = 2..n replacing e_i by e_i + a e_{i-1} with a avoiding every
    cancellation value, so v_alpha becomes non-increasing at each finite pole.

    a is the smallest nonnegative integer (cast into K) that works.
    """
    elements = list(elements)
    F = elements[0].field
    S = span(elements, F)
    poles = sorted(_split_roots(S.den, "denominator"))
    pole_floor = {}
    for a in poles:
        pole_floor[a] = min(valuation(e, Place(a)) for e in elements)
    shifts = []
    for i in range(1, len(elements)):
        bad = set()
        for a in poles:
            vi, li = _laurent_lead(elements[i], a)
            vp, lp = _laurent_lead(elements[i - 1], a)
            if vi > vp:
                bad.add(F.zero)
            elif vi == vp:
                bad.add(F.norm(-F.div(li, lp)))
        limit = F.characteristic or None
        c = 0
        while F(c) in bad:
            c += 1
            if limit is not None and c >= limit:
                raise SmallFieldExhausted(f"every element of {F.name} cancels a pole at step {i + 1}")
        if c:
            elements[i] = elements[i] + elements[i - 1] * RatFunc.constant(c, F)
        shifts.append(F(c))
    if check and not check_super_filtered(elements, pole_floor):
        raise InternalInvariantViolation("super-filter sweep did not produce monotone pole orders")
    return SuperFilteredBasis(elements, pole_floor, normalizer, shifts)


def super_filtered_basis(S: Subspace) -> SuperFilteredBasis:
    B = filtered_basis(S)
    return super_filter(B.elements, B.normalizer)


# -- pole growth -----------------------------------------------------------


@dataclass
class GrowthProfile:
    divisors: list  # D_1 .. D_n
    M: list[int]  # M_1 .. M_n
    mu: list[int]  # mu_2 .. mu_n
    degree_jumps: list[int]  # Delta_2 .. Delta_n
    delta_max: int
    basis: SuperFilteredBasis
    profile: GenusProfile
    T_spaces: Optional[list] = None  # T_{t-1} .. T_n after check_T_inclusions

    def divisor_degrees(self) -> list[int]:
        return [D.degree for D in self.divisors]


def growth_profile(B: SuperFilteredBasis, profile: GenusProfile, *, check: bool = True) -> GrowthProfile:
    """D_i, M_i, mu_i, Delta_i and Delta_Max for the natural filtration.

    ``check`` asserts M_i + deg e_i = deg D_i, which needs a super filtered basis.
    """
    F = B.field
    divisors = [minimal_divisor(span(B.elements[:i], F)) for i in range(1, B.n + 1)]
    M = []
    for e in B.elements:
        M.append(sum(max(-valuation(e, Place(a)), 0) for a in B.pole_floor))
    degs = B.degrees
    for i, D in enumerate(divisors):
        if check and M[i] + degs[i] != D.degree:
            raise InternalInvariantViolation(
                f"M_{i + 1} + deg e_{i + 1} = {M[i] + degs[i]} but deg D_{i + 1} = {D.degree}")
    mu = [M[i] - M[i - 1] for i in range(1, B.n)]
    jumps = [degs[i] - degs[i - 1] for i in range(1, B.n)]
    dmax = max((divisors[i].degree - divisors[i - 1].degree for i in range(1, B.n)), default=0)
    return GrowthProfile(divisors, M, mu, jumps, dmax, B, profile)


def T_gate(gp: GrowthProfile, t: int) -> list[str]:
    """Reasons the hypotheses of the T_i inclusion lemma fail (empty when they hold).

    Besides gamma_{t-1} = 0 and t > mu_j + Delta_j, the lemma works in the
    coordinate where S_{t-1} is the polynomial space of degree t - 2; that
    premise is checked too.
    """
    reasons = []
    prof = gp.profile
    if not 2 <= t <= prof.n:
        return [f"t = {t} outside 2..{prof.n}"]
    if prof.gamma_at(t - 1) != 0:
        reasons.append(f"gamma_{t - 1} = {prof.gamma_at(t - 1)} != 0")
    for j, (m, d) in enumerate(zip(gp.mu, gp.degree_jumps), start=2):
        if t <= m + d:
            reasons.append(f"t = {t} <= mu_{j} + Delta_{j} = {m + d}")
    F = gp.basis.field
    if span(gp.basis.elements[:t - 1], F) != poly_space(t - 2, F):
        reasons.append(f"S_{t - 1} is not the polynomial space of degree {t - 2}")
    return reasons


def check_T_inclusions(gp: GrowthProfile, t: int, *, probe: bool = False) -> list[bool]:
    """For i = t-1..n: is T_i = L((t-2) P_inf + D_i) contained in S_i^2?

    Raises HypothesisNotMet when the gate fails, unless ``probe`` is set.
    """
    reasons = T_gate(gp, t)
    if reasons and not probe:
        raise HypothesisNotMet("; ".join(reasons))
    F = gp.basis.field
    shift = Divisor(F, {INF: t - 2})
    out, spaces = [], []
    for i in range(t - 1, gp.profile.n + 1):
        Ti = riemann_roch_space(shift + gp.divisors[i - 1])
        Si = span(gp.basis.elements[:i], F)
        sq = product(Si, Si)
        spaces.append(Ti)
        out.append(all(contains(sq, f) for f in Ti.basis()))
    gp.T_spaces = spaces
    return out
