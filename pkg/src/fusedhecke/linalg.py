"""Exact sparse row reduction over any field of scalars.

Vectors are dicts ``column -> scalar`` with no zero entries. A
:class:`Subspace` keeps its rows fully reduced: every row has a unit entry in
its pivot column and zeros in all other pivot columns. Pivots are chosen by a
priority order on columns, so callers decide which coordinates should be
eliminated first.
"""

from __future__ import annotations

from typing import Iterable, Mapping

__all__ = ["Subspace", "rank_of"]


def _axpy(target: dict, a, row: Mapping) -> None:
    """``target -= a * row`` in place."""
    for c, v in row.items():
        x = target.get(c)
        x = -(a * v) if x is None else x - a * v
        if x:
            target[c] = x
        else:
            target.pop(c, None)


class Subspace:
    """Row space in reduced echelon form.

    ``priority`` maps a column to a sort key; among the nonzero entries of a
    new vector the column with the smallest key becomes its pivot.
    """

    def __init__(self, priority: Mapping | None = None):
        self.priority = priority
        self.rows: dict = {}

    def _key(self, c):
        return self.priority[c] if self.priority is not None else c

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list:
        return sorted(self.rows, key=self._key)

    def reduce(self, vec: Mapping) -> dict:
        """Remainder of ``vec`` modulo the row space."""
        out = dict(vec)
        for c in [c for c in vec if c in self.rows]:
            a = out.get(c)
            if a:
                _axpy(out, a, self.rows[c])
        return out

    def insert(self, vec: Mapping) -> dict | None:
        """Add ``vec`` to the span; return the new normalized row, or ``None``
        if ``vec`` was already in the span."""
        r = self.reduce(vec)
        if not r:
            return None
        p = min(r, key=self._key)
        inv = 1 / r[p]
        if inv != 1:
            r = {c: v * inv for c, v in r.items()}
        for row in self.rows.values():
            a = row.get(p)
            if a:
                _axpy(row, a, r)
        self.rows[p] = r
        return r

    def insert_all(self, vecs: Iterable[Mapping]) -> int:
        return sum(1 for v in vecs if self.insert(v) is not None)

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)


def rank_of(vectors: Iterable[Mapping], priority: Mapping | None = None) -> int:
    s = Subspace(priority)
    s.insert_all(vectors)
    return s.rank
