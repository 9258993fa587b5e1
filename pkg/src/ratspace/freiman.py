"""Integer sets, sumsets and the 3k - 4 theorem, plus the monomial embedding."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .fields import Field, QQ
from .poly import Poly
from .ratfunc import RatFunc
from .subspace import Subspace, span


@dataclass(frozen=True)
class IntSet:
    elems: tuple

    def __init__(self, elems: Iterable[int]):
        vals = tuple(sorted({int(a) for a in elems}))
        if not vals:
            raise ValueError("IntSet must be nonempty")
        object.__setattr__(self, "elems", vals)

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, a):
        return a in self.elems

    @property
    def min(self) -> int:
        return self.elems[0]

    @property
    def max(self) -> int:
        return self.elems[-1]

    def translate(self, c: int) -> "IntSet":
        return IntSet(a + c for a in self.elems)

    @classmethod
    def parse(cls, text: str) -> "IntSet":
        parts = [p for p in text.replace(" ", "").strip("{}").split(",") if p]
        return cls(int(p) for p in parts)

    def __str__(self):
        return "{" + ",".join(map(str, self.elems)) + "}"


def sumset(A: IntSet) -> IntSet:
    e = A.elems
    return IntSet(e[i] + e[j] for i in range(len(e)) for j in range(i, len(e)))


@dataclass
class APHull:
    start: int
    step: int
    length: int


def ap_hull(A: IntSet) -> APHull:
    """The shortest arithmetic progression containing A."""
    d = 0
    for a in A.elems[1:]:
        d = math.gcd(d, a - A.min)
    if d == 0:
        return APHull(A.min, 1, 1)
    return APHull(A.min, d, (A.max - A.min) // d + 1)


@dataclass
class FreimanReport:
    A: IntSet
    sumset: IntSet
    hypothesis_holds: bool
    hull: APHull
    bound: int
    conclusion_holds: bool
    gamma: int  # |A+A| - 2|A| + 1, the genus of the monomial embedding


def freiman_3k4(A: IntSet) -> FreimanReport:
    if len(A) < 2:
        raise ValueError("need at least two integers")
    AA = sumset(A)
    k = len(A)
    hyp = len(AA) <= 3 * k - 4
    hull = ap_hull(A)
    bound = len(AA) - k + 1
    concl = hull.length <= bound
    if hyp and not concl:
        raise AssertionError(f"3k-4 conclusion fails on {A}")
    return FreimanReport(A, AA, hyp, hull, bound, concl, len(AA) - 2 * k + 1)


def monomial_space(A: IntSet, field: Field = QQ) -> Subspace:
    """span{x^a : a in A}; A must be nonnegative."""
    if A.min < 0:
        raise ValueError("translate A to nonnegative exponents first")
    return span([RatFunc.from_poly(Poly.monomial(a, field)) for a in A], field)
