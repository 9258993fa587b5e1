"""Finite-dimensional K-subspaces of K(x) in canonical form.

Every subspace is stored as (common denominator, numerator rows) where the
denominator is the monic lcm of the denominators of all elements and the
rows form the reduced row-echelon basis of the numerators, pivoting on the
highest-degree coefficient.  Two equal subspaces therefore have identical
fields, and the basis is automatically filtered with respect to v_inf.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import MixedFields
from .fields import Field
from .linalg import Echelon
from .poly import Poly, poly_gcd, poly_lcm
from .ratfunc import RatFunc


class Subspace:
    __slots__ = ("field", "den", "rows", "_basis")

    def __init__(self, field: Field, den: Poly, rows: Sequence[Sequence]):
        # trusted constructor: callers pass canonical data
        self.field = field
        self.den = den
        self.rows = tuple(tuple(r) for r in rows)
        self._basis = None

    @classmethod
    def zero(cls, field: Field) -> "Subspace":
        return cls(field, Poly.constant(1, field), ())

    @classmethod
    def from_numerators(cls, field: Field, den: Poly, vectors: Iterable) -> "Subspace":
        """Canonical subspace spanned by {v/den : v in vectors}."""
        ech = Echelon(field)
        for v in vectors:
            ech.insert(v.coeffs if isinstance(v, Poly) else v)
        if not len(ech):
            return cls.zero(field)
        rows = ech.reduced_rows()
        g = den
        for r in rows:
            if g.degree <= 0:
                break
            g = poly_gcd(g, Poly._make(field, r))
        if g.degree > 0:
            den = den.exact_div(g)
            ech = Echelon(field)
            for r in rows:
                ech.insert(Poly._make(field, r).exact_div(g).coeffs)
            rows = ech.reduced_rows()
        if den.lc != 1:
            # rows are only defined up to the common scalar; rescale to keep monic rows
            den = den.monic()
        return cls(field, den, rows)

    # -- basic accessors -------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def numerators(self) -> list[Poly]:
        return [Poly._make(self.field, r) for r in self.rows]

    def basis(self) -> list[RatFunc]:
        """Echelon basis, ordered by descending degree."""
        if self._basis is None:
            self._basis = [RatFunc(n, self.den) for n in self.numerators()]
        return list(self._basis)

    def degrees(self) -> list[int]:
        """Degrees (-v_inf) of the echelon basis in ascending order."""
        dd = self.den.degree
        return sorted(len(r) - 1 - dd for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field is other.field and self.den == other.den and self.rows == other.rows

    def __hash__(self):
        return hash((self.den, self.rows))

    def __repr__(self):
        return "span{" + ", ".join(f.to_str() for f in reversed(self.basis())) + "}"

    def __contains__(self, f) -> bool:
        return contains(self, f)

    def __add__(self, other):
        return space_sum(self, other)

    def __mul__(self, other):
        if isinstance(other, Subspace):
            return product(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __le__(self, other):
        return all(contains(other, f) for f in self.basis())

    def is_subspace_of(self, other: "Subspace") -> bool:
        return self <= other


def _check_fields(field, items):
    for it in items:
        if it.field is not field:
            raise MixedFields(f"elements over {it.field.name} and {field.name}")


def _as_ratfunc(g, field: Field) -> RatFunc:
    if isinstance(g, RatFunc):
        return g
    if isinstance(g, Poly):
        return RatFunc.from_poly(g)
    return RatFunc.constant(g, field)


def span(gens: Iterable[RatFunc], field: Field | None = None) -> Subspace:
    """Canonical K-linear span of the given rational functions (zeros discarded)."""
    gens = list(gens)
    if field is None:
        field = next((g.field for g in gens if isinstance(g, (RatFunc, Poly))), None)
        if field is None:
            raise ValueError("span of constants needs an explicit field")
    gens = [_as_ratfunc(g, field) for g in gens]
    _check_fields(field, gens)
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return Subspace.zero(field)
    den = Poly.constant(1, field)
    for g in gens:
        if g.den != den:
            den = poly_lcm(den, g.den)
    vecs = [g.num * den.exact_div(g.den) if g.den.degree > 0 else g.num * den for g in gens]
    return Subspace.from_numerators(field, den, vecs)


def contains(S: Subspace, f: RatFunc) -> bool:
    """True iff f is a K-linear combination of the basis of S."""
    if f.field is not S.field:
        raise MixedFields("membership test across fields")
    if f.is_zero():
        return True
    q, r = divmod(S.den, f.den)
    if r:
        return False
    vec = (f.num * q).coeffs
    ech = Echelon(S.field)
    ech.rows = {len(row) - 1: list(row) for row in S.rows}
    return ech.contains(vec)


def _rebase(S: Subspace, den: Poly) -> list[Poly]:
    q = den.exact_div(S.den)
    return [n * q for n in S.numerators()]


def space_sum(S: Subspace, T: Subspace) -> Subspace:
    if S.field is not T.field:
        raise MixedFields("sum of subspaces over different fields")
    if not S.dim:
        return T
    if not T.dim:
        return S
    den = poly_lcm(S.den, T.den)
    return Subspace.from_numerators(S.field, den, _rebase(S, den) + _rebase(T, den))


def product(S: Subspace, T: Subspace) -> Subspace:
    """Span of all products s*t; ``product(S, S)`` is S^2."""
    if S.field is not T.field:
        raise MixedFields("product of subspaces over different fields")
    if not S.dim or not T.dim:
        return Subspace.zero(S.field)
    a, b = S.numerators(), T.numerators()
    if S == T:
        vecs = [a[i] * a[j] for i in range(len(a)) for j in range(i, len(a))]
    else:
        vecs = [p * q for p in a for q in b]
    return Subspace.from_numerators(S.field, S.den * T.den, vecs)


def square(S: Subspace) -> Subspace:
    return product(S, S)


def scale(S: Subspace, f: RatFunc) -> Subspace:
    """The subspace f*S."""
    if isinstance(f, Poly):
        f = RatFunc.from_poly(f)
    if f.field is not S.field:
        raise MixedFields("scaling across fields")
    if f.is_zero() or not S.dim:
        return Subspace.zero(S.field)
    return Subspace.from_numerators(S.field, S.den * f.den, [n * f.num for n in S.numerators()])


def poly_space(i: int, field: Field) -> Subspace:
    """Polynomials of degree at most i."""
    if i < 0:
        return Subspace.zero(field)
    rows = [[field.zero] * k + [field.one] for k in range(i, -1, -1)]
    return Subspace(field, Poly.constant(1, field), rows)
