"""Elements of K(x) in canonical lowest-terms form."""

from __future__ import annotations

from .errors import ZeroDenominator, ZeroElement
from .fields import Field, QQ
from .poly import Poly, poly_gcd


class RatFunc:
    """num/den with gcd(num, den) = 1 and den monic.

    Because the form is canonical, equality is field-for-field identity.
    The zero function is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.constant(1, num.field)
        num.field.check_same(den.field)
        if not den:
            raise ZeroDenominator("rational function with zero denominator")
        if not num:
            self.num, self.den = num, Poly.constant(1, num.field)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc
        if lc != 1:
            inv = num.field.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def _canonical(cls, num: Poly, den: Poly) -> "RatFunc":
        f = object.__new__(cls)
        f.num, f.den = num, den
        return f

    @classmethod
    def constant(cls, c, field: Field = QQ) -> "RatFunc":
        return cls._canonical(Poly.constant(c, field), Poly.constant(1, field))

    @classmethod
    def x(cls, field: Field = QQ) -> "RatFunc":
        return cls._canonical(Poly.x(field), Poly.constant(1, field))

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls._canonical(p, Poly.constant(1, p.field))

    @property
    def field(self) -> Field:
        return self.num.field

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def is_poly(self) -> bool:
        return self.den.degree == 0

    @property
    def degree(self):
        """-v_inf: deg num - deg den (the degree of the filtered-basis convention)."""
        if not self.num:
            raise ZeroElement("degree of the zero function")
        return self.num.degree - self.den.degree

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Poly)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.to_str()})"

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            self.field.check_same(other.field)
            return other
        if isinstance(other, Poly):
            self.field.check_same(other.field)
            return RatFunc.from_poly(other)
        return RatFunc.constant(other, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._canonical(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        # cross-cancel to keep the gcd small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = (self.num, other.den) if g1.degree <= 0 else (self.num.exact_div(g1), other.den.exact_div(g1))
        n2, d1 = (other.num, self.den) if g2.degree <= 0 else (other.num.exact_div(g2), self.den.exact_div(g2))
        num, den = n1 * n2, d1 * d2
        if not num:
            return RatFunc._canonical(num, Poly.constant(1, self.field))
        lc = den.lc
        if lc != 1:
            inv = self.field.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc._canonical(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDenominator("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._canonical(self.num ** k, self.den ** k)

    def __call__(self, value):
        F = self.field
        d = self.den(value)
        if d == 0:
            raise ZeroDenominator("evaluation at a pole")
        return F.div(self.num(value), d)

    def compose(self, other: "RatFunc") -> "RatFunc":
        """self(other(x))."""
        n, d = self.num.coeffs, self.den.coeffs
        k = max(len(n), len(d)) - 1
        # homogenize: sum c_i a^i b^(k-i)
        a, b = other.num, other.den
        pa = [Poly.constant(1, self.field)]
        pb = [Poly.constant(1, self.field)]
        for _ in range(k):
            pa.append(pa[-1] * a)
            pb.append(pb[-1] * b)
        top = Poly.constant(0, self.field)
        bot = Poly.constant(0, self.field)
        for i, c in enumerate(n):
            top = top + (pa[i] * pb[k - i]).scale(c)
        for i, c in enumerate(d):
            bot = bot + (pa[i] * pb[k - i]).scale(c)
        return RatFunc(top, bot)

    def to_str(self, var: str = "x") -> str:
        if self.den.degree == 0:
            return self.num.to_str(var)
        n = self.num.to_str(var)
        if len(self.num.coeffs) > 1 and sum(1 for c in self.num.coeffs if c != 0) > 1:
            n = f"({n})"
        d = self.den.to_str(var)
        if sum(1 for c in self.den.coeffs if c != 0) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    __str__ = to_str


def ratfunc_make(num: Poly, den: Poly) -> RatFunc:
    return RatFunc(num, den)
