"""Subfields of K(x): pole counts, Lüroth generators and index chains.

A subfield K(f_1, ..., f_k) is handled through the minimal polynomial of x
over it.  For f = a/b that polynomial divides b(x) a(T) - a(x) b(T), and the
minimal polynomial over K(f_1, ..., f_k) is the gcd of these over K(x)[T].
Its T-degree is the index and each nonconstant coefficient (after making
it monic in T) generates the subfield.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import AllConstant, ConstantElement, FieldTooSmall
from .fields import Field
from .linalg import nullspace
from .places import Place, valuation
from .poly import Poly, linear_root_factorization, poly_gcd
from .ratfunc import RatFunc
from .subspace import Subspace, contains


def pole_count(f: RatFunc) -> int:
    """Number of poles of f with multiplicity, ∞ included; equals [K(x):K(f)]."""
    if f.is_constant():
        raise ConstantElement(f"{f.to_str()} is constant")
    return max(f.num.degree, f.den.degree)


# -- bivariate polynomials in K[x][T] ------------------------------------
# represented as lists of Poly in x, index = power of T, trimmed at the top


def _btrim(A):
    while A and not A[-1]:
        A.pop()
    return A


def _minpoly_of_x(f: RatFunc):
    a, b = f.num, f.den
    n = max(len(a.coeffs), len(b.coeffs))
    out = []
    for k in range(n):
        out.append(b.scale(a[k]) - a.scale(b[k]))
    return _btrim(out)


def _content(A) -> Poly:
    g = Poly._make(A[0].field, [])
    for c in A:
        g = poly_gcd(g, c)
        if g.degree == 0:
            break
    return g


def _primitive(A):
    g = _content(A)
    if g.degree > 0:
        A = [c.exact_div(g) for c in A]
    lc = A[-1].lc
    if lc != 1:
        inv = A[-1].field.inv(lc)
        A = [c.scale(inv) for c in A]
    return A


def _prem(A, B):
    """Pseudo-remainder of A by B in K[x][T]."""
    R = list(A)
    db = len(B) - 1
    lb = B[-1]
    while len(R) - 1 >= db and R:
        k = len(R) - 1 - db
        lr = R[-1]
        R = [c * lb for c in R]
        for j in range(db + 1):
            R[k + j] = R[k + j] - lr * B[j]
        _btrim(R)
    return R


def _bgcd(A, B):
    """gcd over K(x)[T] via the primitive remainder sequence (primitive result)."""
    if not A:
        return _primitive(B)
    if not B:
        return _primitive(A)
    A, B = _primitive(A), _primitive(B)
    if len(A) < len(B):
        A, B = B, A
    while B:
        if len(B) == 1:
            return [Poly.constant(1, B[0].field)]
        R = _prem(A, B)
        A, B = B, (_primitive(R) if R else R)
    return A


# -- generators ----------------------------------------------------------


def _nonconstant(gens) -> list[RatFunc]:
    return [g for g in gens if not g.is_constant()]


def _generator_from_minpoly(G, field: Field) -> RatFunc:
    lc = G[-1]
    best = None
    for c in G[:-1]:
        y = RatFunc(c, lc)
        if y.is_constant():
            continue
        if best is None or pole_count(y) < pole_count(best):
            best = y
    return best


def _normalize(y: RatFunc) -> RatFunc:
    """Canonical representative of the generators (a y + b)/(c y + d) of K(y)."""
    F = y.field
    if y.num.degree <= y.den.degree:
        c = F.div(y.num.lc, y.den.lc) if y.num.degree == y.den.degree else F.zero
        y = (y - RatFunc.constant(c, F)).inverse()
    y = y * RatFunc.constant(F.inv(y.num.lc), F)
    if y.den.degree == 0:
        y = y - RatFunc.constant(y.num[0], F)
    return y


def luroth_generator(gens: Sequence[RatFunc]) -> RatFunc:
    """A single y with K(gens) = K(y).

    When the pole counts of the generators are coprime the subfield is K(x)
    itself and x is returned.  Otherwise the minimal polynomial of x is
    computed as a gcd in K(x)[T].
    """
    gens = _nonconstant(gens)
    if not gens:
        raise AllConstant("every generator is constant")
    F = gens[0].field
    x = RatFunc.x(F)
    g = 0
    for f in gens:
        g = math.gcd(g, pole_count(f))
    if g == 1:
        return x
    if len(gens) == 1:
        return _normalize(gens[0])
    G = []
    for f in sorted(gens, key=pole_count):
        G = _bgcd(G, _minpoly_of_x(f))
        if len(G) == 2:
            return x
    return _normalize(_generator_from_minpoly(G, F))


def subfield_index(gens: Sequence[RatFunc]) -> int:
    """[K(x) : K(gens)]."""
    return pole_count(luroth_generator(gens))


def express_in(e: RatFunc, y: RatFunc) -> Optional[RatFunc]:
    """R with e = R(y), or None if e is not in K(y).

    Solves the linear system N_e * sum B_k a^k b^(d-k) = D_e * sum A_k a^k b^(d-k)
    where y = a/b and d = pole_count(e) / pole_count(y).
    """
    F = e.field
    if e.is_constant():
        return e
    m, pe = pole_count(y), pole_count(e)
    if pe % m:
        return None
    d = pe // m
    a, b = y.num, y.den
    pa, pb = [Poly.constant(1, F)], [Poly.constant(1, F)]
    for _ in range(d):
        pa.append(pa[-1] * a)
        pb.append(pb[-1] * b)
    hom = [pa[k] * pb[d - k] for k in range(d + 1)]
    cols = [-(e.den * h) for h in hom] + [e.num * h for h in hom]
    nrows = max(len(c.coeffs) for c in cols)
    matrix = [[c[r] for c in cols] for r in range(nrows)]
    for v in nullspace(matrix, 2 * (d + 1), F):
        A = Poly._make(F, v[:d + 1])
        B = Poly._make(F, v[d + 1:])
        if not B:
            continue
        R = RatFunc(A, B)
        if R.compose(y) == e:
            return R
    return None


@dataclass
class TowerReport:
    luroth_gen: RatFunc
    index: int
    per_prefix_index: list  # None for a prefix of constants


def subfield_index_chain(filtration: Sequence[Subspace]) -> list[Optional[int]]:
    """[K(x) : K(S_i)] along an increasing chain; None while S_i is constant."""
    out = []
    G = []
    seen = []
    prev = None
    fast = 0
    for S in filtration:
        new = [f for f in S.basis() if prev is None or not contains(prev, f)]
        prev = S
        for f in _nonconstant(new):
            seen.append(f)
            fast = math.gcd(fast, pole_count(f))
            if fast != 1 and len(G) != 2:
                G = _bgcd(G, _minpoly_of_x(f))
        if not seen:
            out.append(None)
        elif fast == 1:
            out.append(1)
        else:
            out.append(len(G) - 1)
    return out


def tower_report(filtration: Sequence[Subspace]) -> TowerReport:
    chain = subfield_index_chain(filtration)
    gens = _nonconstant(filtration[-1].basis())
    y = luroth_generator(gens) if gens else None
    return TowerReport(y, chain[-1], chain)


# -- valuation gaps ------------------------------------------------------


@dataclass
class GapWitness:
    alpha: object
    s1: RatFunc
    s2: RatFunc
    gap: int  # v_alpha(s2) - v_alpha(s1); 1 when the lemma's claim holds at alpha


def _gap_pair(S: Subspace):
    basis = sorted(S.basis(), key=lambda f: f.degree)
    for i, s1 in enumerate(basis):
        for s2 in basis[i + 1:]:
            r = s1 / s2
            f, g = r.num, r.den
            w = f * g.derivative() - f.derivative() * g
            if w:
                return s1, s2, f, g, w
    return None


def _roots(p: Poly) -> set:
    if p.degree <= 0:
        return set()
    return set(linear_root_factorization(p)[0])


def valuation_gap_probe(S: Subspace, trials: int, seed: int = 0) -> list[GapWitness]:
    """Sample alpha outside the finite exceptional set and exhibit a gap of one.

    The exceptional set consists of the zeros of f, g and fg' - f'g where
    f/g = s1/s2 in lowest terms, plus the poles of S.
    """
    F = S.field
    pair = _gap_pair(S)
    if pair is None:
        return []
    s1, s2, f, g, w = pair
    bad = _roots(f) | _roots(g) | _roots(w) | _roots(S.den)
    rng = random.Random(seed)
    if F.characteristic:
        good = F.characteristic - len(bad)
        if good <= 0:
            raise FieldTooSmall(f"no admissible alpha in {F.name}")
        trials = min(trials, good)
    chosen = []
    while len(chosen) < trials:
        if F.characteristic:
            a = F(rng.randrange(F.characteristic))
        else:
            a = F(rng.randint(-10 ** 4, 10 ** 4))
        if a in bad or a in chosen:
            continue
        chosen.append(a)
    out = []
    for a in chosen:
        c = F.norm(-F.div(f(a), g(a)))
        t = s1 + s2 * RatFunc.constant(c, F)
        P = Place(a)
        out.append(GapWitness(a, s1, t, valuation(t, P) - valuation(s1, P)))
    return out
