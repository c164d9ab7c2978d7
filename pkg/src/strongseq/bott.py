"""Borel-Weil-Bott oracle for Grassmannians and partial flag varieties of quotients.

Conventions: on the variety of rank-d quotients of an n-dimensional space,
S^alpha Q corresponds to the GL(n) weight (alpha, 0, ..., 0). Flag bundles
are handled by pushing forward one level at a time, which is exact because
every irreducible homogeneous bundle has cohomology in a single degree.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .quiver import Quiver
from .schur import IrredModule, YoungDiagram, lr_decompose, tensor_irreducibles, weyl_dimension


@dataclass(frozen=True)
class BottWeight:
    m: int
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if len(self.entries) != self.m:
            raise ValueError(f"BottWeight needs {self.m} entries, got {len(self.entries)}")


@dataclass(frozen=True)
class BottResult:
    degree: int | None            # None: acyclic (zero in every degree)
    weight: tuple[int, ...] | None
    dimension: int

    @property
    def vanishes(self) -> bool:
        return self.degree is None


def _inversions(xs: Sequence[int]) -> int:
    return sum(1 for i in range(len(xs)) for j in range(i + 1, len(xs)) if xs[i] < xs[j])


def bott_cohomology(w: BottWeight) -> BottResult:
    m = w.m
    shifted = [x + (m - 1 - i) for i, x in enumerate(w.entries)]
    if len(set(shifted)) < m:
        return BottResult(None, None, 0)
    q = _inversions(shifted)
    srt = sorted(shifted, reverse=True)
    dom = tuple(x - (m - 1 - i) for i, x in enumerate(srt))
    return BottResult(q, dom, weyl_dimension(dom))


def serre_dual(w: BottWeight) -> BottWeight:
    """Weight of L^* (x) K on the full flag variety: -w - 2rho."""
    m = w.m
    return BottWeight(m, tuple(-x - (m - 1 - 2 * i) for i, x in enumerate(w.entries)))


# -- fixtures ---------------------------------------------------------------

@dataclass(frozen=True)
class HomogeneousFixture:
    """Flag variety of successive quotients K^m -> Q_k -> ... -> Q_1."""

    m: int
    chain: tuple[tuple[str, int], ...]  # (vertex id, d_j), from d_1 (smallest) up to d_k

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.chain)

    @property
    def dimension(self) -> int:
        ds = (0,) + self.dims + (self.m,)
        # dim = sum over levels of d_j * (d_{j+1} - d_j)
        return sum(ds[j] * (ds[j + 1] - ds[j]) for j in range(1, len(ds) - 1))

    @property
    def kind(self) -> str:
        return "grassmannian" if len(self.chain) == 1 else "flag"


def recognize(Q: Quiver) -> HomogeneousFixture | None:
    """Detect frozen(m) -> v_k -> ... -> v_1 with unit multiplicities and m > d_k > ... > d_1."""
    froz = [v for v in Q.vertices if v.frozen]
    if len(froz) != 1 or any(a.multiplicity != 1 for a in Q.arrows):
        return None
    if len(Q.arrows) != len(Q.active):
        return None
    out_of = {}
    for a in Q.arrows:
        if a.tail in out_of:
            return None
        out_of[a.tail] = a.head
    chain = []
    cur = froz[0].id
    while cur in out_of:
        cur = out_of[cur]
        v = Q.vertex(cur)
        if v.frozen:
            return None
        chain.append((v.id, v.dim))
    if len(chain) != len(Q.active):
        return None
    dims = [froz[0].dim] + [d for _, d in chain]
    if any(dims[i] <= dims[i + 1] for i in range(len(dims) - 1)):
        return None
    return HomogeneousFixture(froz[0].dim, tuple(reversed(chain)))


def euler_characteristic(fx: HomogeneousFixture) -> int:
    ds = (0,) + fx.dims + (fx.m,)
    out = factorial(fx.m)
    for j in range(len(ds) - 1):
        out //= factorial(ds[j + 1] - ds[j])
    return out


def module_cohomology(fx: HomogeneousFixture, M: IrredModule) -> dict[int, int]:
    """dim H^q(Y, bundle of M) for all q, by iterated relative Bott."""
    blocks = {vid: tuple(b) for (vid, _), b in zip(M.shape.blocks, M.blocks())}
    # current: Counter of (degree, diagram on the current level's GL(d_j))
    ids = [vid for vid, _ in fx.chain]
    cur = Counter({(0, blocks[ids[0]]): 1})
    targets = [d for _, d in fx.chain[1:]] + [fx.m]
    for j, n in enumerate(targets):
        pushed: Counter = Counter()
        for (deg, lam), mult in cur.items():
            res = bott_cohomology(BottWeight(n, lam + (0,) * (n - len(lam))))
            if not res.vanishes:
                pushed[(deg + res.degree, res.weight)] += mult
        if j + 1 < len(ids):
            nxt: Counter = Counter()
            alpha = YoungDiagram(blocks[ids[j + 1]])
            for (deg, beta), mult in pushed.items():
                for nu, c in lr_decompose(YoungDiagram(beta), alpha):
                    nxt[(deg, nu.entries)] += mult * c
            cur = nxt
        else:
            cur = pushed
    out: Counter = Counter()
    for (deg, lam), mult in cur.items():
        out[deg] += mult * weyl_dimension(lam)
    return dict(sorted((q, d) for q, d in out.items() if d))


def ext_groups(fx: HomogeneousFixture, A: IrredModule, B: IrredModule) -> dict[int, int]:
    """dim Ext^q(A, B) = dim H^q(A^* (x) B)."""
    out: Counter = Counter()
    for P, c in tensor_irreducibles(A.dual(), B):
        for q, d in module_cohomology(fx, P).items():
            out[q] += c * d
    return dict(sorted((q, d) for q, d in out.items() if d))


@dataclass(frozen=True)
class ExtTable:
    fixture: HomogeneousFixture
    table: tuple[tuple[int, int, tuple[tuple[int, int], ...]], ...]  # (a, b, ((q, dim), ...))
    higher_vanish: bool
    backward_hom_vanish: bool
    endomorphisms_scalar: bool

    @property
    def passed(self) -> bool:
        return self.higher_vanish and self.backward_hom_vanish and self.endomorphisms_scalar

    def get(self, a: int, b: int) -> dict[int, int]:
        for i, j, row in self.table:
            if i == a and j == b:
                return dict(row)
        raise KeyError((a, b))


def homogeneous_ext_table(fx: HomogeneousFixture, modules: Sequence[IrredModule]) -> ExtTable:
    rows = []
    higher = backward = endo = True
    for a, A in enumerate(modules):
        for b, B in enumerate(modules):
            ext = ext_groups(fx, A, B)
            rows.append((a, b, tuple(sorted(ext.items()))))
            if any(q > 0 and d for q, d in ext.items()):
                higher = False
            if a > b and ext.get(0, 0):
                backward = False
            if a == b and ext.get(0, 0) != 1:
                endo = False
    return ExtTable(fx, tuple(rows), higher, backward, endo)


def fixed_point_count(fx: HomogeneousFixture) -> int:
    """Count torus-fixed points: chains of coordinate subsets S_1 < ... < S_k of [m]."""
    from itertools import combinations
    dims = fx.dims

    def rec(level, superset):
        if level < 0:
            return 1
        return sum(rec(level - 1, sub) for sub in combinations(superset, dims[level]))

    return rec(len(dims) - 1, tuple(range(fx.m)))
