"""Row reduction over an exact field (raw element values)."""

from __future__ import annotations

from .algebra import Field


def rref(rows: list[list], field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    sub, mul, inv = field.sub, field.mul, field.inv
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        iv = inv(pr[c])
        if pr[c] != field.one:
            rows[r] = pr = [mul(v, iv) for v in pr]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                row = rows[i]
                rows[i] = [sub(a, mul(f, b)) if b != 0 else a for a, b in zip(row, pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(rows: list[list], ncols: int, field: Field) -> list[list]:
    """Basis of {v : M v = 0}, one vector per free column, in RREF shape
    (each vector has a 1 in its free column and 0 in the other free ones)."""
    red, pivots = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(red, pivots):
            if row[fc] != 0:
                v[pc] = field.neg(row[fc])
        basis.append(v)
    return basis


def row_space(rows: list[list], field: Field) -> list[list]:
    return rref(rows, field)[0]
