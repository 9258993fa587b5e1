"""Exact base fields: the rationals and prime fields.

Scalars are plain Python values so that arithmetic stays cheap:
``gmpy2.mpq`` over the rationals and ``int`` residues in ``[0, p)`` over
GF(p).  Polynomial and linear-algebra code combines scalars with the usual
operators and then calls :meth:`Field.norm` to bring the result back into
canonical form (a no-op over Q, reduction mod p over GF(p)).
"""

from __future__ import annotations

import functools
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

from .errors import MixedFields, NotPrime, ZeroDenominator


class Field:
    """Common interface of the two supported base fields."""

    characteristic: int = 0
    name: str = ""

    zero = 0
    one = 1

    def __call__(self, value):
        raise NotImplementedError

    def norm(self, a):
        return a

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    def to_str(self, a) -> str:
        raise NotImplementedError

    def spec(self) -> str:
        """Textual marker used in instance files (``q`` or ``fp <p>``)."""
        raise NotImplementedError

    def check_same(self, other: "Field") -> None:
        if self is not other:
            raise MixedFields(f"cannot combine elements over {self.name} and {other.name}")

    def __repr__(self):
        return self.name


class RationalField(Field):
    characteristic = 0
    name = "QQ"

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, value):
        if isinstance(value, str):
            try:
                return mpq(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"not a rational literal: {value!r}") from exc
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        if isinstance(value, float):
            raise TypeError("floats are not exact; pass a Fraction or a string")
        return mpq(value)

    def inv(self, a):
        if a == 0:
            raise ZeroDenominator("inverse of zero")
        return 1 / a

    def to_str(self, a) -> str:
        a = mpq(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def to_fraction(self, a) -> Fraction:
        a = mpq(a)
        return Fraction(int(a.numerator), int(a.denominator))

    def spec(self) -> str:
        return "q"

    def __reduce__(self):
        return (_rationals, ())


class PrimeField(Field):
    def __init__(self, p: int):
        self.characteristic = p
        self.p = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __call__(self, value):
        p = self.p
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, (Fraction, type(mpq(0)))):
            den = int(value.denominator) % p
            if den == 0:
                raise ZeroDenominator(f"denominator divisible by {p}")
            return int(value.numerator) * pow(den, -1, p) % p
        if isinstance(value, float):
            raise TypeError("floats are not exact")
        return int(value) % p

    def norm(self, a):
        return a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDenominator("inverse of zero")
        return pow(a, -1, self.p)

    def to_str(self, a) -> str:
        return str(a % self.p)

    def to_fraction(self, a) -> Fraction:
        return Fraction(a % self.p)

    def spec(self) -> str:
        return f"fp {self.p}"

    def __reduce__(self):
        return (GF, (self.p,))


def _rationals():
    return QQ


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """The prime field with ``p`` elements (instances are cached, so ``is`` works)."""
    p = int(p)
    if p < 2 or not gmpy2.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """Parse ``q``, ``fp 101``, ``fp:101`` or ``gf(101)`` into a field."""
    t = text.strip().lower().replace(":", " ")
    if t in ("q", "qq", "rationals"):
        return QQ
    for prefix in ("fp", "gf"):
        if t.startswith(prefix):
            rest = t[len(prefix):].strip(" ()")
            try:
                p = int(rest)
            except ValueError:
                raise ValueError(f"bad prime field marker: {text!r}") from None
            return GF(p)
    raise ValueError(f"unknown field marker: {text!r}")
