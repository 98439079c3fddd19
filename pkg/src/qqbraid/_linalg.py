"""Sparse exact linear algebra over Q(q) shared by rule derivation and rank checks."""

from __future__ import annotations

from .qscalar import ZERO


def _reduce_row(row, pivots, order):
    """Eliminate all pivot columns from row (in place on a copy)."""
    row = dict(row)
    changed = True
    while changed:
        changed = False
        for col in sorted(row, key=order):
            piv = pivots.get(col)
            if piv is None:
                continue
            factor = row[col]
            for c2, v2 in piv.items():
                cur = row.get(c2, ZERO) - factor * v2
                if cur:
                    row[c2] = cur
                elif c2 in row:
                    del row[c2]
            changed = True
            break
    return row


def rref(rows, order=None):
    """Reduced row echelon form of sparse rows (dicts col -> Scalar).

    Returns a dict pivot-column -> row, with each row normalized so the
    pivot coefficient is one and no row contains another pivot column.
    `order` ranks columns; the smallest column in a row becomes its pivot.
    """
    if order is None:
        order = lambda c: c
    pivots = {}
    for row in rows:
        row = _reduce_row(row, pivots, order)
        if not row:
            continue
        col = min(row, key=order)
        inv = row[col]
        row = {c: v / inv for c, v in row.items()}
        # eliminate the new pivot from existing rows
        for pcol, prow in list(pivots.items()):
            if col in prow:
                f = prow[col]
                for c2, v2 in row.items():
                    cur = prow.get(c2, ZERO) - f * v2
                    if cur:
                        prow[c2] = cur
                    elif c2 in prow:
                        del prow[c2]
        pivots[col] = row
    return pivots


def rank(rows, order=None):
    """Rank of a list of sparse vectors."""
    return len(rref(rows, order))
