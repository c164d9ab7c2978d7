"""Quivers with frozen (framing) vertices and their torus weights."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Iterable

from . import cones, lp
from ._linalg import primitive
from .lattice import BlockShape, OnePS, Weight, det_character, pair


class MalformedQuiver(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: str
    dim: int
    frozen: bool = False


@dataclass(frozen=True)
class Arrow:
    tail: str
    head: str
    multiplicity: int = 1
    id: str = ""

    def __post_init__(self):
        if not self.id:
            object.__setattr__(self, "id", f"{self.tail}->{self.head}")


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        verts = tuple(self.vertices)
        ids = [v.id for v in verts]
        if len(set(ids)) != len(ids):
            raise MalformedQuiver(f"duplicate vertex ids: {ids}")
        if not any(not v.frozen for v in verts):
            raise MalformedQuiver("quiver needs at least one non-frozen vertex")
        for v in verts:
            if v.dim < 1:
                raise MalformedQuiver(f"vertex {v.id!r} has dimension {v.dim}")
        byid = {v.id: v for v in verts}
        merged: dict[tuple[str, str], int] = {}
        names: dict[tuple[str, str], str] = {}
        for a in self.arrows:
            if a.tail not in byid or a.head not in byid:
                raise MalformedQuiver(f"arrow {a.id!r} has an unknown endpoint")
            if a.tail == a.head:
                raise MalformedQuiver(f"loop at {a.tail!r} is not allowed")
            if byid[a.tail].frozen and byid[a.head].frozen:
                raise MalformedQuiver(f"arrow {a.id!r} joins two frozen vertices")
            if a.multiplicity < 1:
                raise MalformedQuiver(f"arrow {a.id!r} has multiplicity {a.multiplicity}")
            key = (a.tail, a.head)
            merged[key] = merged.get(key, 0) + a.multiplicity
            names.setdefault(key, a.id)
        arrows = tuple(Arrow(t, h, m, names[(t, h)]) for (t, h), m in merged.items())
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", arrows)

    @classmethod
    def build(cls, vertices: Iterable[tuple], arrows: Iterable[tuple]) -> "Quiver":
        """Shorthand: vertices as (id, dim[, frozen]), arrows as (tail, head[, mult])."""
        return cls(tuple(Vertex(*v) for v in vertices), tuple(Arrow(*a) for a in arrows))

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    @property
    def active(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if not v.frozen)

    @property
    def shape(self) -> BlockShape:
        return BlockShape(tuple((v.id, v.dim) for v in self.active))

    def subquiver(self, vertex_ids: Iterable[str]) -> "Quiver":
        """Full subquiver on the given vertices (frozen ones allowed)."""
        keep = set(vertex_ids)
        verts = tuple(v for v in self.vertices if v.id in keep)
        arrs = tuple(a for a in self.arrows if a.tail in keep and a.head in keep)
        return Quiver(verts, arrs)

    def dims(self) -> dict[str, int]:
        return {v.id: v.dim for v in self.vertices}


@dataclass(frozen=True)
class WeightTable:
    shape: BlockShape
    entries: tuple[tuple[Weight, int], ...]

    def weights(self) -> list[Weight]:
        return [w for w, _ in self.entries]

    def multiplicity(self, w: Weight) -> int:
        return dict(self.entries).get(w, 0)

    def total(self) -> Weight:
        out = Weight.zero(self.shape)
        for w, m in self.entries:
            out = out + w * m
        return out

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class IsotypicalComponent:
    arrow_id: str
    d_omega: int
    m_omega: int

    @property
    def weak(self) -> bool:
        return self.m_omega >= self.d_omega

    @property
    def strict(self) -> bool:
        return self.m_omega > self.d_omega


def _unit(shape: BlockShape, vid: str, i: int) -> list[int]:
    v = [0] * shape.rank
    v[shape.block_slice(vid).start + i] = 1
    return v


def arrow_weights(Q: Quiver, a: Arrow, shape: BlockShape | None = None) -> Counter:
    """Torus weights of one arrow summand, with multiplicity, on `shape`."""
    shape = shape or Q.shape
    t, h = Q.vertex(a.tail), Q.vertex(a.head)
    out: Counter = Counter()
    t_in = not t.frozen and t.id in shape.vertex_ids
    h_in = not h.frozen and h.id in shape.vertex_ids
    for i, j in product(range(h.dim), range(t.dim)):
        v = [0] * shape.rank
        if h_in:
            v[shape.block_slice(h.id).start + i] = 1
        if t_in:
            v[shape.block_slice(t.id).start + j] -= 1
        out[Weight(shape, v)] += a.multiplicity
    return out


def rep_weights(Q: Quiver) -> WeightTable:
    total: Counter = Counter()
    for a in Q.arrows:
        total.update(arrow_weights(Q, a))
    return WeightTable(Q.shape, tuple(sorted(total.items())))


def anticanonical(Q: Quiver) -> Weight:
    """Sum of the rep weights, cross-checked against the closed formula."""
    shape = Q.shape
    formula = Weight.zero(shape)
    for a in Q.arrows:
        t, h = Q.vertex(a.tail), Q.vertex(a.head)
        if not h.frozen:
            formula = formula + det_character(shape, h.id) * (a.multiplicity * t.dim)
        if not t.frozen:
            formula = formula - det_character(shape, t.id) * (a.multiplicity * h.dim)
    summed = rep_weights(Q).total()
    if summed != formula:
        raise RuntimeError(f"anticanonical mismatch: {summed!r} vs {formula!r}")
    return formula


def multiply_arrows(Q: Quiver, m: int) -> Quiver:
    if m < 1:
        raise ValueError("arrow multiplier must be >= 1")
    return Quiver(Q.vertices, tuple(Arrow(a.tail, a.head, a.multiplicity * m, a.id) for a in Q.arrows))


def hm_value(support: Iterable[Weight], lam: OnePS) -> int:
    support = list(support)
    if not support:
        raise ValueError("empty support")
    return min(pair(eta, lam) for eta in support)


def torus_sst(support: Iterable[Weight], theta: Weight) -> bool:
    support = list(support)
    C = cones.from_generators(support, ambient=theta.shape.rank, shape=theta.shape)
    return cones.contains(C, theta)


def effective_cone(Q: Quiver) -> cones.Cone:
    shape = Q.shape
    return cones.from_generators(rep_weights(Q).weights(), ambient=shape.rank, shape=shape)


def is_T_effective(Q: Quiver, eps: Weight, cone: cones.Cone | None = None) -> bool:
    return cones.contains(cone or effective_cone(Q), eps)


@dataclass(frozen=True)
class InvariantsVerdict:
    trivial: bool
    functional: OnePS | None = None
    relation: tuple[tuple[Weight, int], ...] = ()


def invariants_trivial(Q: Quiver) -> InvariantsVerdict:
    """Decide K[V]^T = K, with a positive 1-PS or an invariant monomial as evidence."""
    table = rep_weights(Q)
    ws = table.weights()
    lam = cones.find_strictly_positive_functional(ws, Q.shape)
    if lam is not None:
        return InvariantsVerdict(True, lam)
    # a >= 0, sum a_i eta_i = 0, sum a_i = 1
    n = Q.shape.rank
    A_eq = [[w.coords[k] for w in ws] for k in range(n)] + [[1] * len(ws)]
    b_eq = [0] * n + [1]
    res = lp.solve([0] * len(ws), A_eq=A_eq, b_eq=b_eq)
    if res.status != "optimal":
        raise RuntimeError("no positive functional and no invariant relation")
    coeffs = primitive(res.x)
    rel = tuple((w, c) for w, c in zip(ws, coeffs) if c)
    return InvariantsVerdict(False, None, rel)


@dataclass(frozen=True)
class MultiplicityReport:
    components: tuple[IsotypicalComponent, ...]

    @property
    def effective_codim2(self) -> bool:
        return all(c.weak for c in self.components)

    @property
    def semistable_bundles(self) -> bool:
        return all(c.strict for c in self.components)


def isotypical_components(Q: Quiver) -> tuple[IsotypicalComponent, ...]:
    comps = []
    for a in Q.arrows:
        t, h = Q.vertex(a.tail), Q.vertex(a.head)
        if t.frozen:
            comps.append(IsotypicalComponent(a.id, h.dim, t.dim * a.multiplicity))
        elif h.frozen:
            comps.append(IsotypicalComponent(a.id, t.dim, h.dim * a.multiplicity))
        else:
            comps.append(IsotypicalComponent(a.id, t.dim * h.dim, a.multiplicity))
    return tuple(comps)


def multiplicity_hypothesis(Q: Quiver) -> MultiplicityReport:
    return MultiplicityReport(isotypical_components(Q))


@dataclass(frozen=True)
class GenericityVerdict:
    verdict: str  # "generic" | "non-generic-witness" | "unknown"
    test: str
    detail: dict = field(default_factory=dict)


def a3_parameters(Q: Quiver) -> tuple[int, int, int, int] | None:
    """(m, n, d2, d1) if Q is frozen(m) -> v2(d2) -> v1(d1) with multiplicities 1 and n."""
    froz = [v for v in Q.vertices if v.frozen]
    act = Q.active
    if len(froz) != 1 or len(act) != 2 or len(Q.arrows) != 2:
        return None
    f = froz[0]
    into = [a for a in Q.arrows if a.tail == f.id]
    if len(into) != 1:
        return None
    v2 = Q.vertex(into[0].head)
    rest = [a for a in Q.arrows if a is not into[0]]
    if rest[0].tail != v2.id or Q.vertex(rest[0].head).frozen:
        return None
    v1 = Q.vertex(rest[0].head)
    m = f.dim * into[0].multiplicity
    return m, rest[0].multiplicity, v2.dim, v1.dim


def _theta_coeffs(Q: Quiver, theta: Weight) -> dict[str, int] | None:
    out = {}
    for v in Q.active:
        blk = theta.block(v.id)
        if len(set(blk)) != 1:
            return None
        out[v.id] = blk[0]
    return out


def genericity_check(Q: Quiver, theta: Weight | None = None) -> GenericityVerdict:
    """Sufficient tests for semistable = stable; never guesses a negative answer."""
    params = a3_parameters(Q)
    if params is not None and theta is None:
        m, n, d2, d1 = params
        g1 = gcd(n * d2, m - n * d1)
        g2 = gcd(g1, m * d2)
        if g1 == 1 and g2 == 1:
            return GenericityVerdict("generic", "a3-gcd", {"gcd": [g1, g2]})
    theta = theta if theta is not None else anticanonical(Q)
    c = _theta_coeffs(Q, theta)
    if c is None:
        return GenericityVerdict("unknown", "none", {"reason": "character is not block-constant"})
    act = Q.active
    framed = any(v.frozen for v in Q.vertices)
    total = sum(c[v.id] * v.dim for v in act)
    for dp in product(*(range(v.dim + 1) for v in act)):
        val = sum(c[v.id] * k for v, k in zip(act, dp))
        is_zero = not any(dp)
        is_full = all(k == v.dim for v, k in zip(act, dp))
        if not is_zero and not (is_full and not framed) and val == 0:
            return GenericityVerdict("unknown", "subdimension", {"subdimension": list(dp)})
        if framed and not is_full and val == total:
            return GenericityVerdict("unknown", "subdimension", {"subdimension": list(dp), "framed": True})
    return GenericityVerdict("generic", "subdimension", {})
