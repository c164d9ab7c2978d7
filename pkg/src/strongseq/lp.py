"""Exact rational linear programming.

A dense two-phase simplex in `fractions.Fraction` with Bland's rule, sized
for the desk-scale systems that show up here (tens of variables).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(tab, basis, row, col):
    p = tab[row][col]
    tab[row] = [v / p for v in tab[row]]
    for i, r in enumerate(tab):
        if i != row and r[col] != 0:
            f = r[col]
            tab[i] = [a - f * b for a, b in zip(r, tab[row])]
    basis[row] = col


def _run(tab, basis, ncols, allowed):
    # Last row is the reduced-cost row (minimization, obj = -tab[-1][-1]).
    while True:
        obj = tab[-1]
        col = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if col is None:
            return "optimal"
        best = None
        for i in range(len(tab) - 1):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(tab, basis, best[1], col)


def solve_standard(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimize c.x subject to A x = b, x >= 0."""
    m = len(A)
    n = len(c)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # Phase one: artificial variables n..n+m-1.
    tab = [A[i] + [Fraction(int(j == i)) for j in range(m)] + [b[i]] for i in range(m)]
    cost = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    for i in range(m):
        cost = [cv - tv for cv, tv in zip(cost, tab[i])]
    tab.append(cost)
    basis = list(range(n, n + m))
    _run(tab, basis, n + m, [True] * (n + m))
    if tab[-1][-1] != 0:
        return LPResult("infeasible")
    # Drive artificials out of the basis where possible; drop redundant rows.
    i = 0
    while i < len(basis):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), None)
            if col is None:
                del tab[i]
                del basis[i]
                continue
            _pivot(tab, basis, i, col)
        i += 1
    rows = [r[:n] + [r[-1]] for r in tab[:-1]]
    obj = [Fraction(v) for v in c] + [Fraction(0)]
    for i, bi in enumerate(basis):
        f = obj[bi]
        if f:
            obj = [o - f * r for o, r in zip(obj, rows[i])]
    rows.append(obj)
    status = _run(rows, basis, n, [True] * n)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        x[bi] = rows[i][-1]
    value = sum((Fraction(cv) * xv for cv, xv in zip(c, x)), Fraction(0))
    return LPResult("optimal", tuple(x), value)


def solve(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
          A_eq: Sequence[Sequence] = (), b_eq: Sequence = (), free: bool = False) -> LPResult:
    """Minimize c.x subject to A_ub x <= b_ub and A_eq x = b_eq.

    Variables are nonnegative unless `free` is set, in which case each is split
    into a difference of two nonnegative parts.
    """
    n = len(c)
    if free:
        split = lambda row: list(row) + [-v for v in row]
        cc = split(c)
        ub = [split(r) for r in A_ub]
        eq = [split(r) for r in A_eq]
        nv = 2 * n
    else:
        cc, ub, eq, nv = list(c), [list(r) for r in A_ub], [list(r) for r in A_eq], n
    k = len(ub)
    A = [r + [int(j == i) for j in range(k)] for i, r in enumerate(ub)]
    A += [r + [0] * k for r in eq]
    res = solve_standard(cc + [0] * k, A, list(b_ub) + list(b_eq))
    if res.status != "optimal":
        return res
    x = res.x[:nv]
    if free:
        x = tuple(x[i] - x[n + i] for i in range(n))
    return LPResult("optimal", tuple(x), res.value)
