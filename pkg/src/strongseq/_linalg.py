"""Exact linear algebra over the rationals.

Small dense helpers used by the cone kernel and the LP solver. Rows are
sequences of ints or Fractions; nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple[int, ...]


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Sequence) -> Vector:
    """Scale a rational vector to the unique primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    n = len(rows[0]) if ncols is None else ncols
    return len(rref(rows, n)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Integer basis of {x : r.x = 0 for every row r}, in canonical (rref-derived) form."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(primitive(v))
    return basis


def canonical_basis(vectors: Sequence[Sequence], ncols: int) -> tuple[Vector, ...]:
    """Canonical integer basis of span(vectors): primitive rows of the reduced echelon form."""
    if not vectors:
        return ()
    red, _ = rref(vectors, ncols)
    return tuple(sorted(primitive(r) for r in red))


def solve_unique(columns: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Coefficients c with sum c_i * columns[i] == target, assuming independent columns.

    Returns None when target is not in the span.
    """
    k = len(columns)
    n = len(target)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    if len(pivots) < k:
        raise ValueError("columns are linearly dependent")
    sol = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        sol[pc] = row[k]
    return sol


def project_out(v: Sequence, basis: Sequence[Sequence]) -> list[Fraction]:
    """Orthogonal projection of v onto the complement of span(basis)."""
    if not basis:
        return [Fraction(x) for x in v]
    k = len(basis)
    gram = [[Fraction(dot(basis[i], basis[j])) for j in range(k)] for i in range(k)]
    rhs = [Fraction(dot(basis[i], v)) for i in range(k)]
    aug = [gram[i] + [rhs[i]] for i in range(k)]
    red, pivots = rref(aug, k + 1)
    coef = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        coef[pc] = row[k]
    out = [Fraction(x) for x in v]
    for c, b in zip(coef, basis):
        if c:
            out = [o - c * bi for o, bi in zip(out, b)]
    return out
