"""Places of the projective line, valuations, divisors and genus-0 L(D)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .errors import InternalInvariantViolation, NonSplitPlace, ZeroElement
from .fields import Field
from .linalg import Echelon
from .poly import Poly, linear_root_factorization, poly_gcd
from .ratfunc import RatFunc
from .subspace import Subspace, poly_space, scale


@dataclass(frozen=True)
class Place:
    """P_alpha for a finite alpha in K, or P_inf when ``alpha is None``."""

    alpha: object = None

    @property
    def is_infinite(self) -> bool:
        return self.alpha is None

    def sort_key(self):
        return (0, 0) if self.alpha is None else (1, self.alpha)

    def label(self, field: Field) -> str:
        return "inf" if self.alpha is None else field.to_str(self.alpha)

    def __repr__(self):
        return "P_inf" if self.alpha is None else f"P_{self.alpha}"


INF = Place(None)


def finite(alpha) -> Place:
    return Place(alpha)


def poly_multiplicity(p: Poly, alpha) -> int:
    """Order of vanishing of p at alpha (p nonzero)."""
    F = p.field
    lin = Poly._make(F, [F.norm(-alpha), F.one])
    m = 0
    while p.degree >= 1 and p(alpha) == 0:
        p = p.exact_div(lin)
        m += 1
    return m


def valuation(f: RatFunc, P: Place) -> int:
    if f.is_zero():
        raise ZeroElement("valuation of the zero function is undefined")
    if P.is_infinite:
        return f.den.degree - f.num.degree
    a = f.field(P.alpha)
    return poly_multiplicity(f.num, a) - poly_multiplicity(f.den, a)


class Divisor:
    """Finite formal sum of places with integer coefficients (zeros dropped)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Mapping[Place, int] | None = None):
        self.field = field
        items = {}
        for P, c in (coeffs or {}).items():
            if not P.is_infinite:
                P = Place(field(P.alpha))
            c = int(c)
            if c:
                items[P] = items.get(P, 0) + c
        self.coeffs = {P: items[P] for P in sorted(items, key=Place.sort_key) if items[P]}

    @classmethod
    def at_infinity(cls, field: Field, n: int) -> "Divisor":
        return cls(field, {INF: n})

    @property
    def degree(self) -> int:
        return sum(self.coeffs.values())

    def __getitem__(self, P: Place) -> int:
        return self.coeffs.get(P, 0)

    def support(self) -> list[Place]:
        return list(self.coeffs)

    def finite_part(self) -> dict:
        return {P.alpha: c for P, c in self.coeffs.items() if not P.is_infinite}

    def __add__(self, other: "Divisor") -> "Divisor":
        d = dict(self.coeffs)
        for P, c in other.coeffs.items():
            d[P] = d.get(P, 0) + c
        return Divisor(self.field, d)

    def __neg__(self):
        return Divisor(self.field, {P: -c for P, c in self.coeffs.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, k: int) -> "Divisor":
        return Divisor(self.field, {P: k * c for P, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __le__(self, other: "Divisor") -> bool:
        places = set(self.coeffs) | set(other.coeffs)
        return all(self[P] <= other[P] for P in places)

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def to_dict(self) -> dict[str, int]:
        return {P.label(self.field): c for P, c in self.coeffs.items()}

    def to_str(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for P, c in self.coeffs.items():
            parts.append(f"{c}*{P.label(self.field)}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Divisor({self.to_str()})"


def parse_divisor(text: str, field: Field) -> Divisor:
    """Parse ``5*inf+1*0``, ``3*inf - 2*1/2`` or ``inf + 2*-1``.

    Each term is ``[coefficient*]label`` with label ``inf`` or a field literal.
    """
    s = text.replace(" ", "")
    if not s:
        return Divisor(field)
    coeffs: dict = {}
    for tok in re.split(r"(?<=[^*+\-])(?=[+-])", s):
        m = re.fullmatch(r"([+-]?)(?:(\d+)\*)?(inf|[+-]?\d+(?:/\d+)?)", tok)
        if m is None:
            raise ValueError(f"bad divisor term: {tok!r}")
        sign, c, lab = m.groups()
        c = int(c) if c else 1
        if sign == "-":
            c = -c
        P = INF if lab == "inf" else Place(field(lab))
        coeffs[P] = coeffs.get(P, 0) + c
    return Divisor(field, coeffs)


# -- subspace valuations ------------------------------------------------


def _split_roots(p: Poly, what: str) -> dict:
    roots, rest = linear_root_factorization(p)
    if rest.degree > 0:
        raise NonSplitPlace(rest, f"{what} has a factor without roots in {p.field.name}: {rest}")
    return roots


def numerator_gcd(S: Subspace) -> Poly:
    g = Poly._make(S.field, [])
    for n in S.numerators():
        g = poly_gcd(g, n)
        if g.degree == 0:
            break
    return g


def min_valuation(S: Subspace, P: Place) -> int:
    """min v_P over S (equal to the minimum over any basis)."""
    if not S.dim:
        raise ZeroElement("valuation of the zero space")
    if P.is_infinite:
        return S.den.degree - max(len(r) - 1 for r in S.rows)
    a = S.field(P.alpha)
    return min(poly_multiplicity(n, a) for n in S.numerators()) - poly_multiplicity(S.den, a)


def minimal_divisor_degree(S: Subspace) -> int:
    """deg of the least divisor D with S in L(D); needs no factorization."""
    return max(len(r) - 1 for r in S.rows) - numerator_gcd(S).degree


def minimal_divisor(S: Subspace) -> Divisor:
    """Least-degree divisor D with S contained in L(D): v_P(D) = -min v_P(S)."""
    if not S.dim:
        raise ValueError("minimal divisor of the zero space")
    F = S.field
    coeffs = {}
    for a, m in _split_roots(S.den, "denominator").items():
        coeffs[Place(a)] = m
    g = numerator_gcd(S)
    if g.degree > 0:
        for a, m in _split_roots(g, "common numerator factor").items():
            coeffs[Place(a)] = coeffs.get(Place(a), 0) - m
    coeffs[INF] = max(len(r) - 1 for r in S.rows) - S.den.degree
    return Divisor(F, coeffs)


def contained_in_L(S: Subspace, D: Divisor) -> bool:
    """True iff every element of S satisfies v_P >= -v_P(D) at every place."""
    if not S.dim:
        return True
    places = {INF} | set(D.support())
    for a in _split_roots(S.den, "denominator"):
        places.add(Place(a))
    return all(min_valuation(S, P) >= -D[P] for P in places)


def principal_part_poly(D: Divisor) -> RatFunc:
    """c = prod over finite places of (x - alpha)^{v_alpha(D)}."""
    F = D.field
    num = Poly.constant(1, F)
    den = Poly.constant(1, F)
    for a, m in D.finite_part().items():
        lin = Poly._make(F, [F.norm(-a), F.one])
        if m > 0:
            num = num * lin ** m
        else:
            den = den * lin ** (-m)
    return RatFunc(num, den)


def riemann_roch_space(D: Divisor) -> Subspace:
    """L(D) on the projective line: (1/c) * p_{deg D} with c as above."""
    F = D.field
    d = D.degree
    if d < 0:
        return Subspace.zero(F)
    c = principal_part_poly(D)
    L = scale(poly_space(d, F), c.inverse())
    if L.dim != d + 1:
        raise InternalInvariantViolation(f"dim L(D) = {L.dim} != deg D + 1 = {d + 1}")
    for f in L.basis():
        for P in set(D.support()) | {INF}:
            if valuation(f, P) < -D[P]:
                raise InternalInvariantViolation(f"{f} violates the bound of {D} at {P}")
    return L


def valuation_set(S: Subspace, P: Place) -> list[int]:
    """The set v_P(S \\ {0}) in ascending order; it has exactly dim S elements."""
    if not S.dim:
        return []
    if P.is_infinite:
        return sorted(S.den.degree - (len(r) - 1) for r in S.rows)
    F = S.field
    a = F(P.alpha)
    shifted = [n.taylor_shift(a).coeffs for n in S.numerators()]
    L = max(len(v) for v in shifted)
    ech = Echelon(F)
    for v in shifted:
        ech.insert(list(reversed(list(v) + [F.zero] * (L - len(v)))))
    off = poly_multiplicity(S.den, a)
    return sorted((L - 1 - p) - off for p in ech.pivots())
