"""Exact row reduction on coefficient vectors.

Vectors are lists indexed by position; for polynomial numerators the
position is the degree, and pivots sit on the highest nonzero position so
the echelon form doubles as a v_inf-filtered basis.
"""

from __future__ import annotations

from .fields import Field


def _trim(v):
    n = len(v)
    while n and v[n - 1] == 0:
        n -= 1
    del v[n:]
    return v


class Echelon:
    """Incremental row-echelon basis keyed by pivot (top nonzero position).

    Rows are stored with pivot coefficient 1.  Only head reduction is done on
    insert; :meth:`reduced_rows` performs the back-substitution that makes the
    basis canonical.
    """

    __slots__ = ("field", "rows")

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, list] = {}

    def __len__(self):
        return len(self.rows)

    def copy(self) -> "Echelon":
        e = Echelon(self.field)
        e.rows = dict(self.rows)
        return e

    def reduce(self, vec) -> list:
        """Head-reduce ``vec`` against the basis; returns a trimmed new list."""
        v = _trim(list(vec))
        rows = self.rows
        norm = self.field.norm
        while v:
            top = len(v) - 1
            row = rows.get(top)
            if row is None:
                return v
            c = v[top]
            for k in range(top):
                r = row[k]
                if r != 0:
                    v[k] = norm(v[k] - c * r)
            v.pop()
            _trim(v)
        return v

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def insert(self, vec) -> bool:
        """Add ``vec``; return True iff it was independent of the basis."""
        v = self.reduce(vec)
        if not v:
            return False
        F = self.field
        lead = v[-1]
        if lead != 1:
            inv = F.inv(lead)
            v = [F.norm(c * inv) for c in v]
        self.rows[len(v) - 1] = v
        return True

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduced_rows(self) -> list[list]:
        """Reduced echelon rows, ordered by descending pivot."""
        norm = self.field.norm
        piv = sorted(self.rows)
        rows = {p: list(self.rows[p]) for p in piv}
        for i, p in enumerate(piv):
            rp = rows[p]
            for q in piv[i + 1:]:
                rq = rows[q]
                c = rq[p] if p < len(rq) else 0
                if c != 0:
                    for k in range(p + 1):
                        if rp[k] != 0:
                            rq[k] = norm(rq[k] - c * rp[k])
        self.rows = rows
        return [rows[p] for p in reversed(piv)]


def rank(vectors, field: Field) -> int:
    e = Echelon(field)
    for v in vectors:
        e.insert(v)
    return len(e)


def nullspace(matrix, ncols: int, field: Field) -> list[list]:
    """Basis of {y : matrix @ y = 0}; ``matrix`` is a list of rows of length ncols."""
    F = field
    norm = F.norm
    m = [list(r) + [F.zero] * (ncols - len(r)) for r in matrix]
    pivcols = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = F.inv(m[r][c])
        m[r] = [norm(a * inv) for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivcols.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in set(pivcols)]
    basis = []
    for fc in free:
        y = [F.zero] * ncols
        y[fc] = F.one
        for i, pc in enumerate(pivcols):
            y[pc] = norm(-m[i][fc])
        basis.append(y)
    return basis
