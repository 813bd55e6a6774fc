"""Sparse incremental row echelon form over the rationals, with lazy certificates.

Rows are ``{column: coefficient}`` dicts.  The pivot of a row is its
smallest column; pivot rows are normalised to pivot coefficient 1.  Every
inserted row remembers which earlier pivot rows were subtracted from it, so
the expression of a row-space vector in terms of the original rows can be
rebuilt on demand without carrying dense transforms through the
elimination.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Hashable, Iterable

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

__all__ = ["Q", "Echelon", "to_q", "to_fraction"]


def to_q(c: object) -> Q:
    c = Fraction(c)
    return Q(c.numerator, c.denominator)


def to_fraction(c: object) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


Trail = list[tuple[int, object]]


class Echelon:
    def __init__(self) -> None:
        self.pivots: dict[int, dict[int, object]] = {}
        # pivot column -> (source, pivot scale, trail)
        self._history: dict[int, tuple[Hashable, object, Trail]] = {}
        self._creation: dict[int, int] = {}
        self._transforms: dict[int, dict[Hashable, object]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict[int, object]) -> tuple[dict[int, object], Trail]:
        """Return ``(remainder, trail)`` with ``vec = remainder + sum(a * pivot_row[c])``."""
        v = dict(vec)
        pivots = self.pivots
        trail: Trail = []
        heap = [c for c in v if c in pivots]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = v.get(c)
            if not a:
                continue
            trail.append((c, a))
            for cc, x in pivots[c].items():
                y = v.get(cc, 0) - a * x
                if y:
                    if cc not in v and cc in pivots:
                        heapq.heappush(heap, cc)
                    v[cc] = y
                else:
                    v.pop(cc, None)
        return v, trail

    def insert(self, vec: dict[int, object], source: Hashable) -> Trail | None:
        """Add a row.  Returns ``None`` if it raised the rank, else the trail
        showing it was dependent (``vec = sum(a * pivot_row[c])``)."""
        rem, trail = self.reduce(vec)
        if not rem:
            return trail
        p = min(rem)
        a = rem[p]
        self.pivots[p] = {c: x / a for c, x in rem.items()}
        self._history[p] = (source, a, trail)
        self._creation[p] = len(self._creation)
        return None

    def insert_all(self, rows: Iterable[tuple[dict[int, object], Hashable]]) -> None:
        for vec, source in rows:
            self.insert(vec, source)

    def transform(self, pivot: int) -> dict[Hashable, object]:
        """Pivot row ``pivot`` as a combination ``{source: coefficient}`` of inserted rows."""
        if pivot in self._transforms:
            return self._transforms[pivot]
        need: set[int] = set()
        stack = [pivot]
        while stack:
            p = stack.pop()
            if p in need or p in self._transforms:
                continue
            need.add(p)
            stack.extend(c for c, _ in self._history[p][2])
        for p in sorted(need, key=self._creation.__getitem__):
            source, scale, trail = self._history[p]
            t: dict[Hashable, object] = {source: Q(1)}
            for c, a in trail:
                for s, x in self._transforms[c].items():
                    y = t.get(s, 0) - a * x
                    if y:
                        t[s] = y
                    else:
                        t.pop(s, None)
            self._transforms[p] = {s: x / scale for s, x in t.items()}
        return self._transforms[pivot]

    def combine(self, trail: Trail) -> dict[Hashable, object]:
        """``sum(a * transform(c))`` over a trail: the certificate of a member vector."""
        out: dict[Hashable, object] = {}
        for c, a in trail:
            for s, x in self.transform(c).items():
                y = out.get(s, 0) + a * x
                if y:
                    out[s] = y
                else:
                    out.pop(s, None)
        return out

    def rref_rows(self) -> dict[int, dict[int, object]]:
        """Fully reduced rows keyed by pivot column (each pivot column is zero elsewhere)."""
        rows = {p: dict(r) for p, r in self.pivots.items()}
        for p in sorted(rows, reverse=True):
            row = rows[p]
            for q in sorted(c for c in row if c != p and c in rows):
                a = row.get(q)
                if not a:
                    continue
                for c, x in rows[q].items():
                    y = row.get(c, 0) - a * x
                    if y:
                        row[c] = y
                    else:
                        row.pop(c, None)
        return rows
