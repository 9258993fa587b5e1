"""End-to-end analysis of a subspace and the fixed checklist of findings.

The pipeline: span -> filtered basis -> genus profile -> degree table ->
neededness for one column -> super filter -> growth profile -> subfield
indices -> minimal divisor -> L(D) -> conjecture verdict, followed by one
finding per checklist entry.

If the generators only span a proper subfield K(y) of K(x), each element is
rewritten as a rational function of y and the rewritten space is analyzed;
this substitution preserves every dimension of products, and afterwards the
whole function field is generated by the space as the lemmas assume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .errors import DimensionTooLarge, FieldTooSmall, InternalInvariantViolation
from .fields import GF, Field
from .filtration import (
    FilteredBasis,
    GenusProfile,
    GrowthProfile,
    T_gate,
    check_T_inclusions,
    check_super_filtered,
    column_needed_counts,
    degree_table,
    filtered_basis,
    genus_monotone,
    genus_profile,
    growth_profile,
    natural_filtration,
    needed_degree_screen,
    super_filter,
)
from .linalg import nullspace
from .places import INF, Divisor, Place, contained_in_L, minimal_divisor, valuation_set
from .poly import Poly, poly_gcd, poly_lcm
from .ratfunc import RatFunc
from .subspace import Subspace, contains, product, space_sum, span
from .tower import express_in, luroth_generator, pole_count, subfield_index_chain, valuation_gap_probe

CHECKLIST = ("L2.2", "L2.4", "L2.5", "L2.8", "L2.9", "L2.10i", "L2.10ii",
             "L5.1", "L5.3", "T1.7", "C1.6", "Conj1")

PASS, FAIL, NA = "pass", "fail", "not-applicable"


@dataclass
class Finding:
    lemma: str
    status: str
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        return {"lemma": self.lemma, "status": self.status, "witness": self.witness}


@dataclass
class NeededEntry:
    i: int
    j: int
    degree: int
    needed: bool
    degree_forced: bool
    count: tuple  # (min, max) for T = {e_i e_j}


@dataclass
class AnalysisReport:
    field: Field
    original: Subspace
    basis: FilteredBasis
    profile: GenusProfile
    table: list
    needed_col: Optional[int]
    needed: list
    growth: GrowthProfile
    tower_indices: list
    reduced_indices: list
    generator: Optional[RatFunc]
    reduced: bool
    divisor: Divisor
    dim_LD: int
    findings: list = dc_field(default_factory=list)
    source: Optional[str] = None

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def gamma(self) -> int:
        return self.profile.gamma

    @property
    def conjecture(self) -> dict:
        n, g = self.n, self.gamma
        return {"hypothesis": g <= n - 3, "bound": n + g, "dim_LD": self.dim_LD,
                "holds": self.dim_LD <= n + g}

    def failures(self) -> list[Finding]:
        return [f for f in self.findings if f.status == FAIL]

    def finding(self, lemma: str) -> Finding:
        return next(f for f in self.findings if f.lemma == lemma)


# -- helpers ----------------------------------------------------------------


def _powers_space(y: RatFunc, k: int, field: Field) -> Subspace:
    one = RatFunc.constant(1, field)
    out, p = [one], one
    for _ in range(k):
        p = p * y
        out.append(p)
    return span(out, field)


def _reduce_to_generated_field(B: FilteredBasis):
    """Rewrite the basis over K(y) when K(S) = K(y) is a proper subfield."""
    y = luroth_generator(B.elements)
    rewritten = []
    for e in B.elements:
        R = express_in(e, y)
        if R is None:
            raise InternalInvariantViolation(f"{e} not expressible in the generator {y}")
        rewritten.append(R)
    return y, span(rewritten, B.field)


def _divisor_place_labels(divisors: Sequence[Divisor]) -> list[Place]:
    places = {INF}
    for D in divisors:
        places.update(D.support())
    return sorted(places, key=Place.sort_key)


# -- individual findings ----------------------------------------------------


def _f_genus(prof: GenusProfile) -> Finding:
    if genus_monotone(prof.gamma_seq):
        return Finding("L2.2", PASS)
    return Finding("L2.2", FAIL, {"gamma_seq": prof.gamma_seq})


def _f_index(prof: GenusProfile, chain) -> Finding:
    if prof.n < 2:
        return Finding("L2.4", NA)
    i = prof.delta + 2
    if i > prof.n:
        return Finding("L2.4", FAIL, {"delta": prof.delta, "n": prof.n})
    if chain[i - 1] == 1:
        return Finding("L2.4", PASS)
    return Finding("L2.4", FAIL, {"i": i, "index": chain[i - 1]})


def _f_gap(prof, filtration, chain, trials, seed) -> Finding:
    if prof.n < 2:
        return Finding("L2.5", NA)
    i = prof.delta + 2
    if i > prof.n or chain[i - 1] != 1:
        return Finding("L2.5", NA)
    Si = filtration[i - 1]
    try:
        probes = valuation_gap_probe(Si, trials, seed)
    except FieldTooSmall:
        return Finding("L2.5", NA)
    F = Si.field
    for w in probes:
        vals = valuation_set(Si, Place(w.alpha))
        g = 0
        for v in vals:
            g = math.gcd(g, v - vals[0])
        if w.gap != 1 or g != 1:
            return Finding("L2.5", FAIL, {"alpha": F.to_str(w.alpha), "gap": w.gap, "valuations": vals})
    if not probes:
        return Finding("L2.5", FAIL, {"reason": "no pair of elements with separable quotient"})
    return Finding("L2.5", PASS)


def _check_gamma0_block(B: FilteredBasis, filtration, sq, m: int):
    """S_i = p_{i-1} and S_i^2 = p_{2i-2} in the coordinate e_2, for i <= m."""
    F = B.field
    y = B.elements[1]
    for i in range(1, m + 1):
        if filtration[i - 1] != _powers_space(y, i - 1, F):
            return {"case": "gamma=0", "i": i, "claim": "S_i = p_{i-1}"}
        if sq[i - 1] != _powers_space(y, 2 * i - 2, F):
            return {"case": "gamma=0", "i": i, "claim": "S_i^2 = p_{2i-2}"}
    return None


def _shifted_second_element(filtration, B: FilteredBasis):
    """c with (e_2 - c) x in S_3, found from a linear relation."""
    F = B.field
    x = RatFunc.x(F)
    e2 = B.elements[1]
    S3 = filtration[2]
    if contains(S3, x):
        return F.zero
    vecs = [*reversed(S3.basis()), x, e2 * x]
    den = Poly.constant(1, F)
    for v in vecs:
        den = poly_lcm(den, v.den)
    cols = [v.num * den.exact_div(v.den) for v in vecs]
    rows = max(len(c.coeffs) for c in cols)
    matrix = [[c[r] for c in cols] for r in range(rows)]
    for sol in nullspace(matrix, len(cols), F):
        d = sol[-1]
        if d != 0:
            return F.norm(-F.div(sol[-2], d))
    return None


def _f_structure(B: FilteredBasis, prof: GenusProfile, filtration) -> Finding:
    F = B.field
    gam = prof.gamma_seq
    sq = None
    applied = []

    def squares():
        nonlocal sq
        if sq is None:
            sq = [product(S, S) for S in filtration]
        return sq

    m0 = max((i + 1 for i, g in enumerate(gam) if g == 0), default=0)
    if m0 >= 3:
        bad = _check_gamma0_block(B, filtration, squares(), m0)
        applied.append("i")
        if bad:
            return Finding("L2.8", FAIL, bad)
    m1 = max((i + 1 for i, g in enumerate(gam) if g == 1), default=0)
    if m1 >= 4:
        t1 = prof.t1
        if t1 == m1:
            applied.append("ii")
            y = B.elements[1]
            base = _powers_space(y, m1 - 2, F)
            if filtration[m1 - 2] != base:
                return Finding("L2.8", FAIL, {"case": "t1 = last", "claim": "S_{n-1} = p_{n-2}"})
            em = B.elements[m1 - 1]
            want = space_sum(_powers_space(y, 2 * m1 - 2, F), span([em * em], F))
            if squares()[m1 - 1] != want:
                return Finding("L2.8", FAIL, {"case": "t1 = last", "claim": "S^2 = p_{2n-2} + K e_n^2"})
        elif t1 == 3:
            applied.append("iii")
            c = _shifted_second_element(filtration, B)
            if c is None:
                return Finding("L2.8", FAIL, {"case": "t1 = 3", "claim": "(e_2 - c) x in S_3"})
            e = B.elements[1] - RatFunc.constant(c, F)
            one = span([RatFunc.constant(1, F)], F)
            x = RatFunc.x(F)
            for i in range(3, m1 + 1):
                Si = space_sum(one, span([e * x ** k for k in range(i - 1)], F))
                if filtration[i - 1] != Si:
                    return Finding("L2.8", FAIL, {"case": "t1 = 3", "i": i, "claim": "S_i = K + e_2 p_{i-2}"})
                sqi = space_sum(one, span([e * x ** k for k in range(2 * i - 1)], F))
                if squares()[i - 1] != sqi:
                    return Finding("L2.8", FAIL, {"case": "t1 = 3", "i": i, "claim": "S_i^2 = K + e_2 p_{2i-2}"})
        else:
            return Finding("L2.8", FAIL, {"case": "gamma=1", "t1": t1, "claim": "t1 is 3 or the last index"})
    if not applied:
        return Finding("L2.8", NA)
    return Finding("L2.8", PASS, None)


def _f_poles(B: FilteredBasis) -> Finding:
    F = B.field
    one = RatFunc.constant(1, F)
    checked = 0
    for k, e in enumerate(B.elements, start=1):
        if e.is_constant():
            continue
        d = minimal_divisor(span([one, e], F)).degree
        checked += 1
        if d != pole_count(e):
            return Finding("L2.9", FAIL, {"i": k, "pole_count": pole_count(e), "divisor_degree": d})
    return Finding("L2.9", PASS if checked else NA)


def _f_divisor_growth(prof: GenusProfile, divisors) -> tuple[Finding, Finding]:
    gam = prof.gamma_seq
    n = prof.n
    first, second = [], []
    for i in range(2, n):  # 1-based i with i + 1 <= n
        if gam[i] != gam[i - 1]:
            continue
        Dm, D0, Dp = divisors[i - 2], divisors[i - 1], divisors[i]
        first.append((i, Dp - D0 == D0 - Dm))
        if i >= 3:
            places = set(D0.support())
            ok = all(Dm[P] != 0 or D0[P] == 0 for P in places)
            second.append((i, ok))
    out = []
    for lemma, res in (("L2.10i", first), ("L2.10ii", second)):
        bad = [i for i, ok in res if not ok]
        if not res:
            out.append(Finding(lemma, NA))
        elif bad:
            out.append(Finding(lemma, FAIL, {"i": bad[0], "divisors": [D.to_str() for D in divisors]}))
        else:
            out.append(Finding(lemma, PASS))
    return out[0], out[1]


def _f_superfilter(sf, ok: bool) -> Finding:
    if not sf.pole_floor:
        return Finding("L5.1", NA)
    if ok:
        return Finding("L5.1", PASS)
    F = sf.field
    return Finding("L5.1", FAIL, {"poles": [F.to_str(a) for a in sf.pole_floor]})


def _f_T(gp: GrowthProfile) -> Finding:
    t = gp.profile.first_jump
    if t is None or t < 2:
        return Finding("L5.3", NA)
    reasons = T_gate(gp, t)
    if reasons:
        return Finding("L5.3", NA, {"gate": reasons})
    res = check_T_inclusions(gp, t)
    if all(res):
        return Finding("L5.3", PASS)
    i = t - 1 + res.index(False)
    return Finding("L5.3", FAIL, {"t": t, "i": i, "T_i": repr(gp.T_spaces[i - t + 1])})


def max_divisor_gate(prof: GenusProfile, gp: GrowthProfile) -> bool:
    """Hypotheses of the maximal-divisor-growth theorem."""
    n, g = prof.n, prof.gamma
    dm = gp.delta_max
    return (n >= 3 and g <= n - 3 and prof.gamma_at(3) == 0
            and 1 <= dm <= n and prof.gamma_at(dm) == 0)


def _f_maxdiv(prof, gp, dim_LD) -> Finding:
    if not max_divisor_gate(prof, gp):
        return Finding("T1.7", NA)
    if dim_LD <= prof.n + prof.gamma:
        return Finding("T1.7", PASS)
    return Finding("T1.7", FAIL, {"dim_LD": dim_LD, "bound": prof.n + prof.gamma})


def _f_gamma2(prof, D: Divisor) -> Finding:
    if prof.n < 5 or prof.gamma != 2:
        return Finding("C1.6", NA)
    if D.degree <= prof.n + 1:
        return Finding("C1.6", PASS)
    return Finding("C1.6", FAIL, {"deg_D": D.degree, "bound": prof.n + 1})


def _f_conjecture(prof, dim_LD) -> Finding:
    if prof.gamma > prof.n - 3:
        return Finding("Conj1", NA)
    if dim_LD <= prof.n + prof.gamma:
        return Finding("Conj1", PASS)
    return Finding("Conj1", FAIL, {"dim_LD": dim_LD, "bound": prof.n + prof.gamma})


# -- the pipeline -------------------------------------------------------------


def _needed_entries(B: FilteredBasis, c: int) -> list[NeededEntry]:
    forced = set(needed_degree_screen(B, c))
    out = []
    degs = B.degrees
    for i, count in enumerate(column_needed_counts(B, c), start=1):
        nd = count == (1, 1)
        if i in forced and not nd:
            raise InternalInvariantViolation(f"e_{i} e_{c} exceeds every degree of S_{c - 1}^2 but is not needed")
        out.append(NeededEntry(i, c, degs[i - 1] + degs[c - 1], nd, i in forced, count))
    return out


def analyze(S: Subspace | Sequence[RatFunc], field: Field | None = None, *,
            needed_col: Optional[int] = None, seed: int = 0, max_dim: int = 24,
            gap_trials: int = 4, source: Optional[str] = None) -> AnalysisReport:
    if not isinstance(S, Subspace):
        S = span(list(S), field)
    F = S.field
    if not S.dim:
        raise ValueError("the generators span the zero space")
    if S.dim > max_dim:
        raise DimensionTooLarge(f"dimension {S.dim} exceeds the limit {max_dim}")

    minimal_divisor(S)  # every pole of the input must sit at a rational place
    B0 = filtered_basis(S)
    chain0 = subfield_index_chain(natural_filtration(B0))
    generator, reduced = None, False
    B = B0
    if chain0[-1] is not None:
        if chain0[-1] > 1:
            generator, W = _reduce_to_generated_field(B0)
            B = filtered_basis(W)
            reduced = True
        else:
            generator = RatFunc.x(F)
    filtration = natural_filtration(B)
    chain = subfield_index_chain(filtration) if reduced else chain0

    prof = genus_profile(B, check=False)
    table = degree_table(B)
    col = prof.t if needed_col is None else needed_col
    needed = []
    if col is not None:
        if not 2 <= col <= prof.n:
            raise ValueError(f"needed column {col} outside 2..{prof.n}")
        needed = _needed_entries(B, col)

    sf = super_filter(B.elements, B.normalizer, check=False)
    sf_ok = check_super_filtered(sf.elements, sf.pole_floor)
    gp = growth_profile(sf, prof, check=sf_ok)
    D = gp.divisors[-1]
    if not contained_in_L(filtration[-1], D):
        raise InternalInvariantViolation(f"S is not contained in L({D.to_str()})")
    dim_LD = max(D.degree + 1, 0)

    findings = [
        _f_genus(prof),
        _f_index(prof, chain),
        _f_gap(prof, filtration, chain, gap_trials, seed),
        _f_structure(B, prof, filtration),
        _f_poles(B),
        *_f_divisor_growth(prof, gp.divisors),
        _f_superfilter(sf, sf_ok),
        _f_T(gp) if sf_ok else Finding("L5.3", NA),
        _f_maxdiv(prof, gp, dim_LD),
        _f_gamma2(prof, D),
        _f_conjecture(prof, dim_LD),
    ]
    assert tuple(f.lemma for f in findings) == CHECKLIST
    return AnalysisReport(F, S, B, prof, table, col, needed, gp, chain0, chain,
                          generator, reduced, D, dim_LD, findings, source)


def good_reduction(r: AnalysisReport, p: int) -> bool:
    """True when the filtered basis over QQ reduces cleanly modulo p.

    Every coefficient must be p-integral, and each element must keep the
    degrees of its numerator and denominator and stay in lowest terms, so
    that no pole cancels.  Only then is the GF(p) analysis the reduction of
    the QQ one and a comparison of the two is meaningful.
    """
    F = GF(p)
    for e in [*r.basis.elements, r.basis.normalizer]:
        reduced = []
        for poly in (e.num, e.den):
            if any(int(c.denominator) % p == 0 for c in poly.coeffs):
                return False
            q = Poly([F(c) for c in poly.coeffs], F)
            if q.degree != poly.degree:
                return False
            reduced.append(q)
        if poly_gcd(*reduced).degree > 0:
            return False
    return True
