"""Instance factories: canonical bases, degree families, samples inside L(D).

Every generator takes the dimension n of the space it builds.  An
:class:`InstanceSpec` records a family together with its parameters and
serializes to a single line, so any generated instance can be rebuilt.
"""

from __future__ import annotations

import random
import shlex
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import DegreeRealizationFailed, DimensionTooLarge
from .fields import Field, QQ, parse_field
from .filtration import filtered_basis
from .freiman import IntSet, monomial_space
from .places import Divisor, parse_divisor, riemann_roch_space
from .ratfunc import RatFunc
from .subspace import Subspace, contains, span


def _x(field: Field) -> RatFunc:
    return RatFunc.x(field)


def canonical_gamma0(n: int, field: Field = QQ) -> Subspace:
    """span{1, x, ..., x^(n-1)}."""
    if n < 1:
        raise ValueError("n must be positive")
    x = _x(field)
    return span([x ** k for k in range(n)], field)


def canonical_gamma1(n: int, shape: int, alpha, field: Field = QQ) -> Subspace:
    """The two genus-one shapes with a parameter alpha:

    shape 1: 1, x, ..., x^(n-2), (x + alpha) x^(n-1)
    shape 2: 1, (x + alpha) x, ..., (x + alpha) x^(n-1)
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    x = _x(field)
    xa = x + RatFunc.constant(alpha, field)
    if shape == 1:
        gens = [x ** k for k in range(n - 1)] + [xa * x ** (n - 1)]
    elif shape == 2:
        gens = [RatFunc.constant(1, field)] + [xa * x ** k for k in range(1, n)]
    else:
        raise ValueError("shape must be 1 or 2")
    return span(gens, field)


def extend_degset(degset: Sequence[int], n: int) -> list[int]:
    """Pad a degree set with consecutive degrees until it has n entries."""
    out = list(degset)
    while len(out) < n:
        out.append(out[-1] + 1)
    return out[:n] if len(out) > n else out


def degree_family(degset: Sequence[int], pole_plan: Sequence[tuple] = (), field: Field = QQ) -> Subspace:
    """A space whose filtered degrees are ``degset``.

    The i-th basis element (1-based) is x^(d_i); every entry (i, alpha, k) of
    ``pole_plan`` adds 1/(x - alpha)^k to it, which leaves all degrees alone.
    """
    degs = list(degset)
    if not degs or degs[0] != 0 or any(b <= a for a, b in zip(degs, degs[1:])):
        raise DegreeRealizationFailed(f"degree set must start at 0 and increase strictly: {degs}")
    x = _x(field)
    elems = [x ** d for d in degs]
    for i, alpha, k in pole_plan:
        if not 1 <= i <= len(degs) or k < 1:
            raise DegreeRealizationFailed(f"bad pole plan entry {(i, alpha, k)}")
        lin = x - RatFunc.constant(alpha, field)
        elems[i - 1] = elems[i - 1] + lin ** (-k)
    S = span(elems, field)
    if S.dim != len(degs) or filtered_basis(S).degrees != degs:
        raise DegreeRealizationFailed(f"pole plan {list(pole_plan)} changes the degrees {degs}")
    return S


def random_in_RR(D: Divisor, n: int, seed: int, height: int = 3,
                 base: Subspace | None = None) -> Subspace:
    """A seeded n-dimensional subspace of L(D), containing 1 whenever 1 lies in L(D).

    With ``base`` (which must lie in L(D)) the sample contains that subspace.
    """
    F = D.field
    L = riemann_roch_space(D)
    if n > L.dim:
        raise DimensionTooLarge(f"n = {n} exceeds dim L(D) = {L.dim}")
    if n <= 0:
        return Subspace.zero(F)
    rng = random.Random(seed)
    basis = list(reversed(L.basis()))
    one = RatFunc.constant(1, F)
    gens = [one] if contains(L, one) else []
    if base is not None:
        if any(not contains(L, b) for b in base.basis()):
            raise ValueError("base is not contained in L(D)")
        gens += base.basis()
    S = span(gens, F)
    if S.dim > n:
        raise DimensionTooLarge(f"base already has dimension {S.dim} > {n}")
    while S.dim < n:
        f = RatFunc.constant(0, F)
        for b in basis:
            f = f + b * RatFunc.constant(rng.randint(-height, height), F)
        T = span(gens + [f], F)
        if T.dim > S.dim:
            gens.append(f)
            S = T
    return S


# -- textual instance specs ------------------------------------------------

FAMILIES = ("gamma0", "gamma1a", "gamma1b", "degset", "monomial", "random-rr")


def _format_plan(plan) -> str:
    return ";".join(f"{i}:{a}:{k}" for i, a, k in plan)


def _parse_plan(text: str, field: Field):
    plan = []
    for part in filter(None, text.split(";")):
        i, a, k = part.split(":")
        plan.append((int(i), field(a), int(k)))
    return plan


@dataclass
class InstanceSpec:
    family: str
    params: dict = dc_field(default_factory=dict)
    field: Field = QQ

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")

    def to_line(self) -> str:
        parts = [self.family]
        for k in sorted(self.params):
            parts.append(f"{k}={shlex.quote(str(self.params[k]))}")
        parts.append(f"field={self.field.spec().replace(' ', ':')}")
        return " ".join(parts)

    @classmethod
    def from_line(cls, line: str) -> "InstanceSpec":
        toks = shlex.split(line)
        if not toks:
            raise ValueError("empty instance spec")
        params = {}
        field = QQ
        for tok in toks[1:]:
            k, _, v = tok.partition("=")
            if k == "field":
                field = parse_field(v)
            else:
                params[k] = v
        return cls(toks[0], params, field)

    def _int(self, key, default=None) -> int:
        v = self.params.get(key, default)
        if v is None:
            raise ValueError(f"{self.family} needs parameter {key}")
        return int(v)

    def build(self) -> Subspace:
        F, p = self.field, self.params
        fam = self.family
        if fam == "gamma0":
            return canonical_gamma0(self._int("n"), F)
        if fam in ("gamma1a", "gamma1b"):
            return canonical_gamma1(self._int("n"), 1 if fam == "gamma1a" else 2, F(str(p.get("alpha", 0))), F)
        if fam == "monomial":
            return monomial_space(IntSet.parse(str(p["set"])), F)
        if fam == "degset":
            degs = [int(d) for d in str(p["set"]).split(",") if d]
            return degree_family(degs, _parse_plan(str(p.get("poles", "")), F), F)
        if fam == "random-rr":
            D = parse_divisor(str(p["D"]), F)
            return random_in_RR(D, self._int("n"), self._int("seed", 0))
        raise AssertionError(fam)


def instance_text(spec: InstanceSpec, S: Subspace | None = None) -> str:
    """Instance file for spec: header comment, field line, one generator per line."""
    S = spec.build() if S is None else S
    lines = [f"# spec: {spec.to_line()}", f"field: {spec.field.spec()}"]
    lines += [f.to_str() for f in reversed(S.basis())]
    return "\n".join(lines) + "\n"
