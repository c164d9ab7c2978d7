"""Exact rational polyhedral cones.

A `Cone` keeps both descriptions at once: extremal rays plus a lineality
basis, and facet normals plus an equation basis. Everything is stored in a
canonical form (primitive integer vectors, sorted), so two cones are equal
exactly when their dataclass fields are.
"""
from __future__ import annotations

import builtins
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import lp
from ._linalg import Vector, canonical_basis, dot, nullspace, primitive, project_out, rank
from .lattice import BlockShape, OnePS, Weight

_sum = builtins.sum

VectorLike = Union[Weight, Sequence]


def _vec(x: VectorLike) -> tuple:
    return x.coords if isinstance(x, Weight) else tuple(x)


def _shape_of(items) -> BlockShape | None:
    for x in items:
        if isinstance(x, Weight):
            return x.shape
    return None


def _h_to_v(n: int, ineqs: Sequence[Vector], eqs: Sequence[Vector]):
    """Rays and lineality basis of {x : A x >= 0, E x = 0} by incremental double description."""
    lin = [list(v) for v in nullspace(list(eqs), n)] if eqs else [
        [int(i == j) for j in range(n)] for i in range(n)]
    rays: list[list] = []
    done: list[Vector] = []  # processed inequalities
    for a in ineqs:
        if not any(a):
            continue
        vals = [dot(a, l) for l in lin]
        k = next((i for i, v in enumerate(vals) if v != 0), None)
        if k is not None:
            l0 = lin.pop(k)
            v0 = vals.pop(k)
            if v0 < 0:
                l0, v0 = [-x for x in l0], -v0
            lin = [primitive([x - Fraction(v, v0) * y for x, y in zip(l, l0)]) for l, v in zip(lin, vals)]
            lin = [list(l) for l in lin]
            rays = [list(primitive([x - Fraction(dot(a, r), v0) * y for x, y in zip(r, l0)])) for r in rays]
            rays.append(list(primitive(l0)))
            done.append(tuple(a))
            continue
        vals = [dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        zero = [r for r, v in zip(rays, vals) if v == 0]
        neg = [(r, v) for r, v in zip(rays, vals) if v < 0]
        new = pos + zero
        if pos and neg:
            target = n - len(lin) - 2
            tight = {}
            for r in rays:
                tight[tuple(r)] = frozenset(i for i, b in enumerate(done) if dot(b, r) == 0)
            base_rows = list(eqs)
            for p in pos:
                vp = dot(a, p)
                tp = tight[tuple(p)]
                for q, vq in neg:
                    common = tp & tight[tuple(q)]
                    rows = base_rows + [done[i] for i in common]
                    if (rank(rows, n) if rows else 0) != target:
                        continue
                    new.append(list(primitive([vp * y - vq * x for x, y in zip(p, q)])))
        rays = [r for r in new if any(r)]
        done.append(tuple(a))
    return rays, lin


def _canon_pair(n: int, rays, lin):
    lin_b = canonical_basis(lin, n)
    out = set()
    for r in rays:
        p = primitive(project_out(r, lin_b)) if lin_b else primitive(r)
        if any(p):
            out.add(p)
    return tuple(sorted(out)), lin_b


@dataclass(frozen=True)
class Cone:
    """A closed rational polyhedral cone in Q^ambient.

    `rays` are extremal rays of the pointed part (orthogonal to the lineality
    space), `facets` are irredundant facet normals (orthogonal to the span of
    `equations`). Points x satisfy <a,x> >= 0 for facets and <e,x> = 0 for
    equations.
    """

    ambient: int
    rays: tuple[Vector, ...]
    lineality: tuple[Vector, ...]
    facets: tuple[Vector, ...]
    equations: tuple[Vector, ...]
    shape: BlockShape | None = field(default=None, compare=False, repr=False)

    # Views matching the two-list description: subspaces appear as +/- pairs.
    @property
    def generators(self) -> tuple[Vector, ...]:
        return self.rays + self.lineality + tuple(tuple(-x for x in v) for v in self.lineality)

    @property
    def inequalities(self) -> tuple[Vector, ...]:
        return self.facets + self.equations + tuple(tuple(-x for x in v) for v in self.equations)

    @property
    def dim(self) -> int:
        return self.ambient - len(self.equations)

    def is_zero(self) -> bool:
        return not self.rays and not self.lineality

    def is_full_space(self) -> bool:
        return len(self.lineality) == self.ambient

    def contains(self, x: VectorLike, mode: str = "boundary") -> bool:
        return contains(self, x, mode)

    def __and__(self, other: "Cone") -> "Cone":
        return intersect(self, other)

    def __add__(self, other: "Cone") -> "Cone":
        return minkowski_sum(self, other)

    def as_weight(self, v: Vector) -> Weight | Vector:
        return Weight(self.shape, v) if self.shape is not None else v

    def describe(self) -> dict:
        return {
            "ambient": self.ambient,
            "rays": [list(r) for r in self.rays],
            "lineality": [list(r) for r in self.lineality],
            "facets": [list(r) for r in self.facets],
            "equations": [list(r) for r in self.equations],
        }


def _check_rank(n: int, vecs):
    for v in vecs:
        if len(v) != n:
            raise ValueError(f"rank mismatch: expected {n}, got {len(v)}")


def from_inequalities(ineqs: Iterable[VectorLike], equations: Iterable[VectorLike] = (),
                      ambient: int | None = None, shape: BlockShape | None = None) -> Cone:
    ineqs, equations = list(ineqs), list(equations)
    shape = shape or _shape_of(ineqs + equations)
    A = [primitive(_vec(a)) for a in ineqs]
    E = [primitive(_vec(e)) for e in equations]
    n = ambient if ambient is not None else (shape.rank if shape else (len(A[0]) if A else len(E[0]) if E else None))
    if n is None:
        raise ValueError("cannot infer ambient rank from empty input")
    _check_rank(n, A + E)
    rays, lin = _h_to_v(n, A, E)
    rays, lin = _canon_pair(n, rays, lin)
    # Facets come from the dual cone's extremal data.
    drays, dlin = _h_to_v(n, list(rays), list(lin))
    facets, eqs = _canon_pair(n, drays, dlin)
    return Cone(n, rays, lin, facets, eqs, shape)


def from_generators(rays: Iterable[VectorLike], lineality: Iterable[VectorLike] = (),
                    ambient: int | None = None, shape: BlockShape | None = None) -> Cone:
    rays, lineality = list(rays), list(lineality)
    shape = shape or _shape_of(rays + lineality)
    R = [primitive(_vec(r)) for r in rays]
    L = [primitive(_vec(r)) for r in lineality]
    n = ambient if ambient is not None else (shape.rank if shape else (len(R[0]) if R else len(L[0]) if L else None))
    if n is None:
        raise ValueError("cannot infer ambient rank from empty input")
    _check_rank(n, R + L)
    # Dual cone = {y : <r,y> >= 0, <l,y> = 0}; its V-description is our H-description.
    frays, flin = _h_to_v(n, R, L)
    facets, eqs = _canon_pair(n, frays, flin)
    prays, plin = _h_to_v(n, list(facets), list(eqs))
    rays_c, lin_c = _canon_pair(n, prays, plin)
    return Cone(n, rays_c, lin_c, facets, eqs, shape)


def zero_cone(n: int, shape: BlockShape | None = None) -> Cone:
    return from_generators([], ambient=n, shape=shape)


def full_space(n: int, shape: BlockShape | None = None) -> Cone:
    return from_inequalities([], ambient=n, shape=shape)


def dual(C: Cone) -> Cone:
    return Cone(C.ambient, C.facets, C.equations, C.rays, C.lineality, C.shape)


def _same_rank(a: Cone, b: Cone):
    if a.ambient != b.ambient:
        raise ValueError(f"rank mismatch: {a.ambient} vs {b.ambient}")


def intersect(a: Cone, b: Cone) -> Cone:
    _same_rank(a, b)
    return from_inequalities(a.facets + b.facets, a.equations + b.equations,
                             ambient=a.ambient, shape=a.shape or b.shape)


def minkowski_sum(a: Cone, b: Cone) -> Cone:
    _same_rank(a, b)
    return from_generators(a.rays + b.rays, a.lineality + b.lineality,
                           ambient=a.ambient, shape=a.shape or b.shape)


def intersect_all(cones: Sequence[Cone]) -> Cone:
    if not cones:
        raise ValueError("empty intersection")
    A, E = [], []
    for c in cones:
        _same_rank(cones[0], c)
        A += c.facets
        E += c.equations
    return from_inequalities(A, E, ambient=cones[0].ambient, shape=cones[0].shape)


def contains(C: Cone, x: VectorLike, mode: str = "boundary") -> bool:
    v = _vec(x)
    if len(v) != C.ambient:
        raise ValueError(f"rank mismatch: {len(v)} vs {C.ambient}")
    if any(dot(e, v) != 0 for e in C.equations):
        return False
    if mode == "boundary":
        return all(dot(a, v) >= 0 for a in C.facets)
    if mode == "interior":
        return all(dot(a, v) > 0 for a in C.facets)
    raise ValueError(f"unknown mode {mode!r}")


def is_pointed(C: Cone) -> bool:
    return not C.lineality


def extremal_rays(C: Cone) -> list:
    if not is_pointed(C):
        raise ValueError("cone is not pointed; extremal rays are not defined")
    return [C.as_weight(r) for r in C.rays]


def find_strictly_positive_functional(weights: Sequence[Weight], shape: BlockShape | None = None) -> OnePS | None:
    """An integral lambda with <eta, lambda> >= 1 for every eta, or None.

    Solves the exact LP  min |lambda|_1  s.t.  <eta, lambda> >= 1.
    """
    weights = list(weights)
    shape = shape or _shape_of(weights)
    if shape is None:
        raise ValueError("shape required for an empty weight list")
    n = shape.rank
    if not weights:
        return OnePS(shape, (0,) * n)
    # Variables u, v >= 0 with lambda = u - v.
    A_ub = [[-c for c in w.coords] + list(w.coords) for w in weights]
    b_ub = [-1] * len(weights)
    res = lp.solve([1] * (2 * n), A_ub, b_ub)
    if res.status != "optimal":
        return None
    lam = [res.x[i] - res.x[n + i] for i in range(n)]
    lam = primitive(lam)
    assert all(dot(w.coords, lam) > 0 for w in weights)
    return OnePS(shape, lam)
