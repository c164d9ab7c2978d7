"""Character and cocharacter lattices of products of general linear groups.

A `BlockShape` lists the active vertices of a quiver together with the rank
of the GL factor sitting there; weights and one-parameter subgroups are
integer tuples laid out block by block in that order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Sequence, Union


class ShapeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class BlockShape:
    blocks: tuple[tuple[str, int], ...]

    def __post_init__(self):
        ids = [b[0] for b in self.blocks]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate vertex ids in {ids}")
        for vid, size in self.blocks:
            if size < 1:
                raise ValueError(f"block {vid!r} has size {size}")
        object.__setattr__(self, "blocks", tuple((str(v), int(s)) for v, s in self.blocks))

    @classmethod
    def of(cls, *blocks: tuple[str, int]) -> "BlockShape":
        return cls(tuple(blocks))

    @property
    def rank(self) -> int:
        return sum(s for _, s in self.blocks)

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.blocks)

    def size(self, vid: str) -> int:
        return self.blocks[self.index(vid)][1]

    def index(self, vid: str) -> int:
        for i, (v, _) in enumerate(self.blocks):
            if v == vid:
                return i
        raise KeyError(f"unknown vertex {vid!r}")

    def slices(self) -> list[slice]:
        out, start = [], 0
        for _, s in self.blocks:
            out.append(slice(start, start + s))
            start += s
        return out

    def block_slice(self, vid: str) -> slice:
        return self.slices()[self.index(vid)]

    def split(self, coords: Sequence) -> list[tuple]:
        return [tuple(coords[sl]) for sl in self.slices()]

    def weyl_order(self) -> int:
        from math import factorial
        out = 1
        for _, s in self.blocks:
            out *= factorial(s)
        return out

    def __str__(self):
        return "(" + " | ".join(f"{v}:{s}" for v, s in self.blocks) + ")"


@dataclass(frozen=True, order=True)
class Weight:
    """A character of the maximal torus, grouped by blocks of `shape`."""

    coords: tuple[int, ...]
    shape: BlockShape = field(compare=False)

    def __init__(self, shape: BlockShape, coords: Iterable[int]):
        coords = tuple(int(c) for c in coords)
        if len(coords) != shape.rank:
            raise ShapeMismatch(f"{len(coords)} coordinates for shape of rank {shape.rank}")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "coords", coords)

    def __eq__(self, other):
        return isinstance(other, Weight) and self.shape == other.shape and self.coords == other.coords

    def __hash__(self):
        return hash((self.shape, self.coords))

    def _check(self, other: "Weight"):
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.shape, (a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.shape, (a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(self.shape, (-a for a in self.coords))

    def __mul__(self, k: int) -> "Weight":
        return Weight(self.shape, (k * a for a in self.coords))

    __rmul__ = __mul__

    def blocks(self) -> list[tuple[int, ...]]:
        return self.shape.split(self.coords)

    def block(self, vid: str) -> tuple[int, ...]:
        return self.coords[self.shape.block_slice(vid)]

    def is_zero(self) -> bool:
        return not any(self.coords)

    @classmethod
    def zero(cls, shape: BlockShape) -> "Weight":
        return cls(shape, (0,) * shape.rank)

    @classmethod
    def from_blocks(cls, shape: BlockShape, blocks: Sequence[Sequence[int]]) -> "Weight":
        return cls(shape, (c for b in blocks for c in b))

    def __repr__(self):
        return "Weight" + "(" + " | ".join(",".join(map(str, b)) for b in self.blocks()) + ")"


@dataclass(frozen=True)
class OnePS:
    """A cocharacter of the maximal torus (one-parameter subgroup)."""

    shape: BlockShape
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) != self.shape.rank:
            raise ShapeMismatch(f"{len(self.coords)} coordinates for shape of rank {self.shape.rank}")


@dataclass(frozen=True)
class OrderVector:
    """A rational functional, strictly positive on a certified list of weights.

    Stands in for a real functional of irrational slope; ties in its value are
    broken lexicographically on weights (see `nefcone.order_key`).
    """

    shape: BlockShape
    coords: tuple[Fraction, ...]
    certificate: tuple[tuple[Weight, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if len(self.coords) != self.shape.rank:
            raise ShapeMismatch("order vector length does not match shape")
        for w, val in self.certificate:
            if pair(w, self) != val or val <= 0:
                raise ValueError(f"invalid certificate entry {w!r} -> {val}")

    @classmethod
    def certified(cls, shape: BlockShape, coords: Sequence, weights: Iterable[Weight]) -> "OrderVector":
        coords = tuple(Fraction(c) for c in coords)
        cert = []
        for w in sorted(set(weights)):
            val = sum((Fraction(a) * b for a, b in zip(w.coords, coords)), Fraction(0))
            if val <= 0:
                raise ValueError(f"order vector is not positive on {w!r}")
            cert.append((w, val))
        return cls(shape, coords, tuple(cert))

    def is_dominance_aligned(self) -> bool:
        return all(all(b[i] >= b[i + 1] for i in range(len(b) - 1)) for b in self.shape.split(self.coords))


Functional = Union[OnePS, OrderVector]


def pair(chi: Weight, lam: Functional):
    """The natural pairing between a character and a (rational) cocharacter."""
    if chi.shape != lam.shape:
        raise ShapeMismatch(f"{chi.shape} vs {lam.shape}")
    if isinstance(lam, OrderVector):
        return sum((a * b for a, b in zip(chi.coords, lam.coords)), Fraction(0))
    return sum(a * b for a, b in zip(chi.coords, lam.coords))


def dominant_representative(w: Weight) -> tuple[Weight, bool]:
    blocks = [tuple(sorted(b, reverse=True)) for b in w.blocks()]
    dom = Weight.from_blocks(w.shape, blocks)
    return dom, dom == w


def is_dominant(w: Weight) -> bool:
    return dominant_representative(w)[1]


def det_character(shape: BlockShape, vertex_id: str) -> Weight:
    sl = shape.block_slice(vertex_id)
    coords = [0] * shape.rank
    for i in range(sl.start, sl.stop):
        coords[i] = 1
    return Weight(shape, coords)


def weyl_orbit(w: Weight) -> frozenset[Weight]:
    per_block = [set(permutations(b)) for b in w.blocks()]
    return frozenset(Weight.from_blocks(w.shape, combo) for combo in product(*per_block))


def lift(w: Weight, shape: BlockShape) -> Weight:
    """Embed a weight of a sub-shape into `shape`, padding missing blocks with zeros."""
    coords = [0] * shape.rank
    for vid, _ in w.shape.blocks:
        sl = shape.block_slice(vid)
        coords[sl] = w.block(vid)
    return Weight(shape, coords)


def restrict(w: Weight, shape: BlockShape) -> Weight:
    """Project a weight onto the blocks of a sub-shape."""
    return Weight.from_blocks(shape, [w.block(vid) for vid in shape.vertex_ids])
