"""Minimal sets, the nef cone, extremal nef modules and the H^0 order criterion."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import cones
from ._linalg import primitive, rank, solve_unique
from .lattice import BlockShape, OrderVector, Weight, pair, weyl_orbit
from .quiver import Quiver, WeightTable, anticanonical, rep_weights
from .schur import IrredModule, module_character, tensor_irreducibles

__all__ = [
    "IrredModule", "NefData", "minimal_sets", "nef_cone", "nef_data", "extremal_nef",
    "decompose_anticanonical", "is_nef_module", "auto_order_vector", "order_key",
    "H0Verdict", "h0_vanishes", "EffectivityOracle",
]


def _distinct(weights) -> list[Weight]:
    if isinstance(weights, WeightTable):
        weights = weights.weights()
    return sorted(set(weights))


def _minimal_in_batch(theta: Weight, ws: list[Weight], subsets: list[tuple[int, ...]]):
    out = []
    for idx in subsets:
        cols = [ws[i].coords for i in idx]
        if rank(cols, theta.shape.rank) < len(idx):
            continue
        coef = solve_unique(cols, theta.coords)
        if coef is not None and all(c > 0 for c in coef):
            out.append(idx)
    return out


def minimal_sets(theta: Weight, table, threads: int = 1) -> list[tuple[Weight, ...]]:
    """All inclusion-minimal weight subsets whose cone contains theta.

    Only linearly independent subsets are searched; a set is minimal exactly
    when theta has strictly positive coordinates in it.
    """
    if theta.is_zero():
        raise ValueError("theta must be nonzero")
    ws = _distinct(table)
    if not ws:
        raise ValueError("empty weight table")
    r = min(theta.shape.rank, len(ws))
    subsets = [c for k in range(1, r + 1) for c in combinations(range(len(ws)), k)]
    if threads > 1 and len(subsets) > 64:
        size = (len(subsets) + threads - 1) // threads
        chunks = [subsets[i:i + size] for i in range(0, len(subsets), size)]
        with ThreadPoolExecutor(max_workers=threads) as ex:
            found = [i for part in ex.map(lambda ch: _minimal_in_batch(theta, ws, ch), chunks) for i in part]
    else:
        found = _minimal_in_batch(theta, ws, subsets)
    return sorted(tuple(ws[i] for i in idx) for idx in found)


def nef_cone_of(theta: Weight, table, threads: int = 1, sets=None) -> cones.Cone:
    sets = minimal_sets(theta, table, threads) if sets is None else sets
    if not sets:
        raise ValueError(f"character {theta!r} is not effective")
    shape = theta.shape
    parts = [cones.from_generators(S, ambient=shape.rank, shape=shape) for S in sets]
    return cones.intersect_all(parts)


def nef_cone(Q: Quiver, threads: int = 1) -> cones.Cone:
    return nef_cone_of(anticanonical(Q), rep_weights(Q), threads)


def extremal_nef(C: cones.Cone) -> tuple[list[Weight], list[IrredModule]]:
    if not cones.is_pointed(C):
        raise ValueError("nef cone is not pointed")
    rays = [Weight(C.shape, r) for r in C.rays]
    ray_set = set(rays)
    for w in rays:
        if not weyl_orbit(w) <= ray_set:
            raise RuntimeError(f"extremal weights are not Weyl-stable at {w!r}")
    vb = sorted(IrredModule(w) for w in rays if w == max(weyl_orbit(w)))
    return sorted(rays), vb


@dataclass(frozen=True)
class Decomposition:
    coefficients: tuple[tuple[IrredModule, Fraction], ...]
    vertices: tuple[tuple[Fraction, ...], ...]

    @property
    def integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.coefficients)

    def as_dict(self) -> dict[IrredModule, Fraction]:
        return dict(self.coefficients)


def decompose_anticanonical(theta: Weight, vb_plus: Sequence[IrredModule]) -> Decomposition:
    """Nonnegative solutions of theta = sum m_E det(E); the lex-largest vertex is chosen."""
    if not vb_plus:
        raise ValueError("VB+ is empty")
    dets = [M.det_character().coords for M in vb_plus]
    n = len(dets)
    verts = set()
    for k in range(0, n + 1):
        for idx in combinations(range(n), k):
            cols = [dets[i] for i in idx]
            if k and rank(cols, theta.shape.rank) < k:
                continue
            if k == 0:
                if theta.is_zero():
                    verts.add((Fraction(0),) * n)
                continue
            sol = solve_unique(cols, theta.coords)
            if sol is None or any(c < 0 for c in sol):
                continue
            full = [Fraction(0)] * n
            for i, c in zip(idx, sol):
                full[i] = c
            verts.add(tuple(full))
    if not verts:
        raise RuntimeError(f"{theta!r} is not a nonnegative combination of det(E), E in VB+")
    ordered = sorted(verts, reverse=True)
    chosen = ordered[0]
    return Decomposition(tuple(zip(vb_plus, chosen)), tuple(ordered))


def is_nef_module(C: cones.Cone, M: IrredModule) -> bool:
    return all(cones.contains(C, w) for w in module_character(M).weights())


@dataclass(frozen=True)
class NefData:
    shape: BlockShape
    theta: Weight
    minimal_sets: tuple[tuple[Weight, ...], ...]
    nef_cone: cones.Cone
    extremal_weights: tuple[Weight, ...]
    vb_plus: tuple[IrredModule, ...]
    decomposition: Decomposition

    @property
    def coefficients(self) -> dict[IrredModule, Fraction]:
        return self.decomposition.as_dict()

    @property
    def integral(self) -> bool:
        return self.decomposition.integral


def nef_data_of(theta: Weight, table, threads: int = 1) -> NefData:
    sets = minimal_sets(theta, table, threads)
    C = nef_cone_of(theta, table, sets=sets)
    rays, vb = extremal_nef(C)
    dec = decompose_anticanonical(theta, vb)
    return NefData(theta.shape, theta, tuple(sets), C, tuple(rays), tuple(vb), dec)


def nef_data(Q: Quiver, threads: int = 1) -> NefData:
    return nef_data_of(anticanonical(Q), rep_weights(Q), threads)


# -- order and H^0 -----------------------------------------------------------

def auto_order_vector(shape: BlockShape, weights: Sequence[Weight]) -> OrderVector:
    """A dominance-aligned functional, strictly positive on `weights`.

    Start from an LP solution, average it over the Weyl group (the weight set
    is Weyl-stable, so positivity survives) and add K times that to the block
    staircase (d-1, ..., 0) with the least K that keeps everything positive.
    """
    weights = sorted(set(weights))
    lam = cones.find_strictly_positive_functional(weights, shape)
    if lam is None:
        raise ValueError("no strictly positive functional: weights span a non-pointed cone")
    avg = []
    for sl, (_, d) in zip(shape.slices(), shape.blocks):
        mean = Fraction(sum(lam.coords[sl]), d)
        avg += [mean] * d
    base = primitive(avg) if any(avg) else tuple(avg)
    rho = [d - 1 - i for _, d in shape.blocks for i in range(d)]
    K = 1
    while True:
        coords = [K * b + r for b, r in zip(base, rho)]
        if all(sum(Fraction(c) * x for c, x in zip(w.coords, coords)) > 0 for w in weights):
            return OrderVector.certified(shape, coords, weights)
        K += 1


def order_key(M: IrredModule, ell: OrderVector) -> tuple[Fraction, tuple[int, ...]]:
    """(max of ell over the weights of M, lex-largest weight attaining it)."""
    if ell.is_dominance_aligned():
        return pair(M.highest_weight, ell), M.highest_weight.coords
    orbit = weyl_orbit(M.highest_weight)
    top = max(pair(w, ell) for w in orbit)
    arg = max(w.coords for w in orbit if pair(w, ell) == top)
    return top, arg


class EffectivityOracle:
    """Cached T-effectivity test against the cone of rep weights."""

    def __init__(self, shape: BlockShape, weights: Sequence[Weight]):
        self.shape = shape
        self.cone = cones.from_generators(sorted(set(weights)), ambient=shape.rank, shape=shape)

    @classmethod
    def for_quiver(cls, Q: Quiver) -> "EffectivityOracle":
        return cls(Q.shape, rep_weights(Q).weights())

    def __call__(self, eps: Weight) -> bool:
        return cones.contains(self.cone, eps)


@dataclass(frozen=True)
class H0Verdict:
    status: str  # "vanishes" | "inconclusive" | "scalar"
    probe: str = ""
    witness: tuple[tuple[IrredModule, Weight], ...] = ()


def _lowest_weight(M: IrredModule, ell: OrderVector | None) -> Weight:
    """The weight of M minimizing ell (w0 of the highest weight when ell is aligned)."""
    if ell is None or ell.is_dominance_aligned():
        return Weight.from_blocks(M.shape, [tuple(reversed(b)) for b in M.blocks()])
    orbit = weyl_orbit(M.highest_weight)
    low = min(pair(w, ell) for w in orbit)
    return min(w for w in orbit if pair(w, ell) == low)


def h0_vanishes(F: IrredModule, E: IrredModule, effective: EffectivityOracle,
                ell: OrderVector | None = None, full_scan: bool = True) -> H0Verdict:
    """Does H^0(Hom(F, E)) vanish by the effectivity criterion?

    An equivariant map from V into a module W lands in a submodule all of
    whose weights are effective, so H^0 vanishes once every irreducible
    constituent of F^* (x) E has a non-effective weight. Weights of an
    irreducible lie in the hull of its Weyl orbit, so only extremal weights
    need probing. The lowest weight is tried first; when E < F for ell it
    always pairs negatively with ell and the probe succeeds.
    """
    if E == F:
        return H0Verdict("scalar", "endomorphisms")
    witness = []
    probe = "lowest-weight"
    for U, _ in tensor_irreducibles(F.dual(), E):
        w = _lowest_weight(U, ell)
        if effective(w):
            if not full_scan:
                return H0Verdict("inconclusive", "lowest-weight")
            w = next((u for u in sorted(weyl_orbit(U.highest_weight)) if not effective(u)), None)
            if w is None:
                return H0Verdict("inconclusive", "orbit-scan")
            probe = "orbit-scan"
        witness.append((U, w))
    return H0Verdict("vanishes", probe, tuple(witness))


def default_threads() -> int:
    return max(1, min(8, os.cpu_count() or 1))
