from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

from strongseq.quiver import Quiver
from strongseq.specfile import load_spec

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "strongseq" / "fixtures"


def grassmannian(m: int, d: int) -> Quiver:
    return Quiver.build([("f", m, True), ("v", d)], [("f", "v")])


def a3(m: int, n: int, d2: int, d1: int) -> Quiver:
    """Frozen m -> v2 (d2) -> v1 (d1), the second arrow with multiplicity n."""
    return Quiver.build([("f", m, True), ("v1", d1), ("v2", d2)], [("f", "v2"), ("v2", "v1", n)])


def flag(m: int, *dims: int) -> Quiver:
    """Quotient flag K^m -> Q_k -> ... -> Q_1; dims listed from d_k down to d_1."""
    k = len(dims)
    verts = [("f", m, True)] + [(f"v{k - i}", d) for i, d in enumerate(dims)][::-1]
    names = ["f"] + [f"v{k - i}" for i in range(k)]
    return Quiver.build(verts, list(zip(names, names[1:])))


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / f"{name}.json"


@pytest.fixture
def spec_of():
    return lambda name: load_spec(FIXTURES / f"{name}.json")


def solve_exact(cols, x):
    """Exact solve of sum c_i cols_i = x for independent columns; None if not in span."""
    n, k = len(x), len(cols)
    M = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(x[i])] for i in range(n)]
    r, piv = 0, []
    for c in range(k):
        p = next((i for i in range(r, n) if M[i][c] != 0), None)
        if p is None:
            return None
        M[r], M[p] = M[p], M[r]
        M[r] = [v / M[r][c] for v in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                M[i] = [a - M[i][c] * b for a, b in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    if any(M[i][k] != 0 for i in range(r, n)):
        return None
    return [M[i][k] for i in range(k)]


def brute_member(gens, x):
    """Caratheodory: x is in cone(gens) iff it is a nonnegative combination of an independent subset."""
    if all(v == 0 for v in x):
        return True
    for k in range(1, len(x) + 1):
        for S in combinations(gens, k):
            c = solve_exact(S, x)
            if c is not None and all(v >= 0 for v in c):
                return True
    return False
