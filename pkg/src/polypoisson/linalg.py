"""Exact sparse rational linear algebra: rank, kernels, span membership.

Matrices are lists of sparse rows (dict column -> value).  Rank runs a
fraction-free elimination: rows are scaled to integers once, updates are
cross-multiplications followed by a gcd reduction, and pivoting is
deterministic (columns in ascending order, first available row).  Kernels
are extracted from the integer echelon form by back-substitution over
Fractions.  Everything is exact and reproducible across runs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Optional, Sequence

SparseRow = dict[int, Fraction]
IntRow = dict[int, int]


def _integerize(row: Mapping[int, Fraction]) -> IntRow:
    """Scale a rational row to coprime integers."""
    if not row:
        return {}
    denom = lcm(*(v.denominator for v in row.values()))
    ints = {c: int(v * denom) for c, v in row.items() if v}
    if not ints:
        return {}
    g = gcd(*ints.values())
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


def _eliminate(rows: Iterable[Mapping[int, Fraction]]) -> tuple[list[IntRow], list[int]]:
    """Forward elimination; returns echelon rows and their pivot columns."""
    work = [r for r in (_integerize(row) for row in rows) if r]
    echelon: list[IntRow] = []
    pivots: list[int] = []
    while work:
        col = min(min(r) for r in work)
        # first row (in current order) carrying the pivot column
        pick = next(i for i, r in enumerate(work) if col in r)
        pivot = work.pop(pick)
        pv = pivot[col]
        reduced: list[IntRow] = []
        for r in work:
            rv = r.get(col)
            if rv is None:
                reduced.append(r)
                continue
            new: IntRow = {}
            for c in r.keys() | pivot.keys():
                if c == col:
                    continue
                val = pv * r.get(c, 0) - rv * pivot.get(c, 0)
                if val:
                    new[c] = val
            if new:
                g = gcd(*new.values())
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
                reduced.append(new)
        echelon.append(pivot)
        pivots.append(col)
        work = reduced
    return echelon, pivots


def rank(rows: Iterable[Mapping[int, Fraction]]) -> int:
    """Exact rank over the rationals."""
    return len(_eliminate(rows)[0])


def kernel_basis(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> list[SparseRow]:
    """A basis of the right kernel, one vector per free column, ascending."""
    echelon, pivots = _eliminate(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    # back-substitution order: pivots descending
    order = sorted(range(len(pivots)), key=lambda i: pivots[i], reverse=True)
    basis = []
    for f in free_cols:
        vec: SparseRow = {f: Fraction(1)}
        for i in order:
            row, p = echelon[i], pivots[i]
            if p > f:
                continue
            s = sum((Fraction(v) * vec[c] for c, v in row.items() if c != p and c in vec),
                    Fraction(0))
            if s:
                vec[p] = -s / row[p]
        basis.append(vec)
    return basis


class SpanTracker:
    """Incremental row space with exact reduction, for complement picking."""

    def __init__(self) -> None:
        self._rows: list[tuple[int, IntRow]] = []  # (pivot column, reduced row)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def residual(self, vector: Mapping[int, Fraction]) -> IntRow:
        """Reduce a vector against the tracked span; {} means dependent."""
        cur = _integerize(vector)
        for pivot_col, row in self._rows:
            cv = cur.get(pivot_col)
            if not cv:
                continue
            pv = row[pivot_col]
            new: IntRow = {}
            for c in cur.keys() | row.keys():
                val = pv * cur.get(c, 0) - cv * row.get(c, 0)
                if val:
                    new[c] = val
            cur = new
            if not cur:
                return {}
        if cur:
            g = gcd(*cur.values())
            if g > 1:
                cur = {c: v // g for c, v in cur.items()}
        return cur

    def add(self, vector: Mapping[int, Fraction]) -> bool:
        """Add a vector; True if it enlarged the span."""
        res = self.residual(vector)
        if not res:
            return False
        self._rows.append((min(res), res))
        self._rows.sort(key=lambda item: item[0])
        return True


def in_span(vectors: Sequence[Mapping[int, Fraction]], candidate: Mapping[int, Fraction]) -> bool:
    """Whether candidate lies in the span of the given vectors."""
    tracker = SpanTracker()
    for v in vectors:
        tracker.add(v)
    return not tracker.residual(candidate)
