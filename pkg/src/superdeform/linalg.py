"""Exact Gaussian elimination over Q(i)."""

from __future__ import annotations

from .scalar import GaussianRational


def rank(rows) -> int:
    m = [[GaussianRational.coerce(c) for c in row] for row in rows if row]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if not m[i][col].is_zero()), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col].inverse()
        for i in range(len(m)):
            if i != r and not m[i][col].is_zero():
                factor = m[i][col] * inv
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r
