"""Dense univariate polynomials over an exact field.

A polynomial a_0 + a_1 x + ... + a_n x^n is stored as the tuple
(a_0, ..., a_n) with a_n != 0; the zero polynomial is the empty tuple and
has degree ``NEG_INF``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from sympy import divisors

from .fields import Field, QQ

NEG_INF = -math.inf


def _trim(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs=(), field: Field = QQ, *, _raw=False):
        self.field = field
        if _raw:
            self.coeffs = coeffs
        else:
            self.coeffs = _trim([field(c) for c in coeffs])

    @classmethod
    def _make(cls, field, coeffs):
        p = object.__new__(cls)
        p.field = field
        p.coeffs = _trim(coeffs)
        return p

    @classmethod
    def constant(cls, c, field: Field = QQ) -> "Poly":
        return cls._make(field, [field(c)])

    @classmethod
    def x(cls, field: Field = QQ) -> "Poly":
        return cls._make(field, [field.zero, field.one])

    @classmethod
    def monomial(cls, k: int, field: Field = QQ, c=1) -> "Poly":
        return cls._make(field, [field.zero] * k + [field(c)])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == Poly.constant(other, self.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec(), self.coeffs))

    def __repr__(self):
        return f"Poly({self.to_str()})"

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self.field.check_same(other.field)
            return other
        return Poly.constant(other, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        norm = self.field.norm
        out = list(a)
        for i, c in enumerate(b):
            out[i] = norm(out[i] + c)
        return Poly._make(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.field.norm
        return Poly._make(self.field, [norm(-c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._make(self.field, [])
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        norm = self.field.norm
        return Poly._make(self.field, [norm(c) for c in out])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.constant(1, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        norm = self.field.norm
        return Poly._make(self.field, [norm(c * a) for a in self.coeffs])

    def shift_degree(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return Poly._make(self.field, [self.field.zero] * k + list(self.coeffs))

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        norm = F.norm
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lc = F.inv(other.coeffs[-1])
        if len(rem) - 1 < db:
            return Poly._make(F, []), self
        quot = [F.zero] * (len(rem) - db)
        b = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = norm(rem[k + db] * inv_lc)
            quot[k] = c
            if c != 0:
                for j in range(db + 1):
                    rem[k + j] = norm(rem[k + j] - c * b[j])
        return Poly._make(F, quot), Poly._make(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def __call__(self, value):
        norm = self.field.norm
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = norm(acc * value + c)
        return acc

    def derivative(self) -> "Poly":
        norm = self.field.norm
        return Poly._make(self.field, [norm(k * c) for k, c in enumerate(self.coeffs) if k])

    def taylor_shift(self, alpha) -> "Poly":
        """Return p(x + alpha)."""
        F = self.field
        norm = F.norm
        out = list(self.coeffs)
        n = len(out)
        # repeated synthetic division
        for i in range(n - 1):
            for k in range(n - 2, i - 1, -1):
                out[k] = norm(out[k] + alpha * out[k + 1])
        return Poly._make(F, out)

    def compose(self, other: "Poly") -> "Poly":
        result = Poly._make(self.field, [])
        for c in reversed(self.coeffs):
            result = result * other + c
        return result

    def low_order(self) -> int:
        """Multiplicity of x as a factor (the valuation at 0); zero gives 0."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return 0

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            s = F.to_str(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and s == "1":
                body = mono
            elif mono:
                body = f"{s}*{mono}"
            else:
                body = s
            terms.append(("-" if neg else "+", body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_str


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``poly_gcd(0, 0)`` is the zero polynomial."""
    a.field.check_same(b.field)
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return Poly._make(a.field, [])
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.constant(1, F), Poly._make(F, [])
    t0, t1 = Poly._make(F, []), Poly.constant(1, F)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def _integer_form(p: Poly):
    """Primitive integer coefficient list of a polynomial over Q."""
    den = 1
    for c in p.coeffs:
        den = math.lcm(den, int(c.denominator))
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints]


def _rational_root_candidates(p: Poly):
    ints = _integer_form(p)
    a0, an = abs(ints[0]), abs(ints[-1])
    # Cauchy bound on the absolute value of any root
    bound = 1 + Fraction(max(abs(c) for c in ints[:-1]), an)
    F = p.field
    seen = set()
    for q in divisors(an):
        for num in divisors(a0):
            if num > bound * q:
                continue
            for sgn in (1, -1):
                r = F(sgn * num) / q
                if r not in seen:
                    seen.add(r)
                    yield r


def _prime_field_roots(p: Poly):
    F = p.field
    # roots of p are exactly the roots of gcd(p, x^q - x)
    xq = _powmod(Poly.x(F), F.p, p)
    g = poly_gcd(p, xq - Poly.x(F))
    want = 0 if not g else g.degree
    found = []
    if want <= 0:
        return found
    for a in range(F.p):
        if g(a) == 0:
            found.append(a)
            if len(found) == want:
                break
    return found


def _powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.constant(1, base.field) % mod
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def linear_root_factorization(p: Poly):
    """Split off all linear factors over the base field.

    Returns ``(roots, nonsplit)`` where ``roots`` maps each root alpha to its
    multiplicity and ``p = lc * prod (x - alpha)^m * nonsplit`` with
    ``nonsplit`` monic and free of roots in K.
    """
    if not p:
        raise ValueError("linear_root_factorization of the zero polynomial")
    F = p.field
    rest = p.monic()
    roots: dict = {}
    k = rest.low_order()
    if k:
        roots[F.zero] = k
        rest = Poly._make(F, rest.coeffs[k:])
    if rest.degree <= 0:
        return roots, rest
    if F.characteristic == 0:
        candidates = _rational_root_candidates(rest)
    else:
        candidates = _prime_field_roots(rest)
    for r in candidates:
        if rest.degree <= 0:
            break
        m = 0
        while rest.degree >= 1 and rest(r) == 0:
            rest = rest.exact_div(Poly._make(F, [F.norm(-r), F.one]))
            m += 1
        if m:
            roots[r] = roots.get(r, 0) + m
    return roots, rest.monic()


def product_of_linear(roots: dict, field: Field) -> Poly:
    out = Poly.constant(1, field)
    for a, m in roots.items():
        out = out * Poly._make(field, [field.norm(-a), field.one]) ** m
    return out
