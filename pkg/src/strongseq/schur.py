"""Young diagrams, Schur characters, Littlewood-Richardson and highest-weight peeling.

Characters are computed from Gelfand-Tsetlin patterns, which handle diagrams
with negative entries directly (no separate det-twist step is needed there).
Littlewood-Richardson coefficients are computed on genuine partitions after
shifting both diagrams to have smallest entry zero.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .lattice import BlockShape, Weight, dominant_representative


@dataclass(frozen=True, order=True)
class YoungDiagram:
    entries: tuple[int, ...]

    def __post_init__(self):
        e = tuple(int(x) for x in self.entries)
        if any(e[i] < e[i + 1] for i in range(len(e) - 1)):
            raise ValueError(f"diagram entries must be weakly decreasing: {e}")
        object.__setattr__(self, "entries", e)

    @property
    def length(self) -> int:
        return len(self.entries)

    @property
    def min(self) -> int:
        return self.entries[-1] if self.entries else 0

    @property
    def max(self) -> int:
        return self.entries[0] if self.entries else 0

    @property
    def size(self) -> int:
        return sum(self.entries)

    def shift(self, c: int) -> "YoungDiagram":
        return shift(self, c)

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"


def enumerate_box(m: int, d: int) -> list[YoungDiagram]:
    """All diagrams with d rows and entries in [0, m], in lexicographic order."""
    if m < 0:
        return []

    def rec(rows, cap):
        if rows == 0:
            yield ()
            return
        for first in range(cap + 1):
            for rest in rec(rows - 1, first):
                yield (first,) + rest

    return sorted(YoungDiagram(t) for t in rec(d, m))


def shift(lam: YoungDiagram, c: int) -> YoungDiagram:
    return YoungDiagram(tuple(x + c for x in lam.entries))


# -- characters -------------------------------------------------------------

def _interlacing(lam: tuple[int, ...]):
    """All mu of length len(lam)-1 with lam[i] >= mu[i] >= lam[i+1]."""
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(len(lam) - 1)]
    return product(*ranges)


@lru_cache(maxsize=None)
def _gt_character(lam: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    if len(lam) == 0:
        return (((), 1),)
    if len(lam) == 1:
        return (((lam[0],), 1),)
    out: Counter = Counter()
    total = sum(lam)
    for mu in _interlacing(lam):
        e = total - sum(mu)
        for w, c in _gt_character(mu):
            out[w + (e,)] += c
    return tuple(sorted(out.items()))


def schur_character_counter(lam: Sequence[int]) -> Counter:
    return Counter(dict(_gt_character(tuple(lam))))


def weyl_dimension(lam: Sequence[int]) -> int:
    num, den = 1, 1
    d = len(lam)
    for i in range(d):
        for j in range(i + 1, d):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


@dataclass(frozen=True)
class CharacterPoly:
    """A finite multiset of weights (the character of a T-module)."""

    shape: BlockShape
    terms: tuple[tuple[Weight, int], ...]

    @classmethod
    def from_counter(cls, shape: BlockShape, c: Mapping) -> "CharacterPoly":
        items = []
        for w, m in c.items():
            if m < 0:
                raise ValueError(f"negative multiplicity {m} for {w!r}")
            if m:
                ww = w if isinstance(w, Weight) else Weight(shape, w)
                items.append((ww, int(m)))
        return cls(shape, tuple(sorted(items)))

    def as_counter(self) -> Counter:
        return Counter(dict(self.terms))

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.terms)

    def weights(self) -> list[Weight]:
        return [w for w, _ in self.terms]

    def total(self) -> Weight:
        out = Weight.zero(self.shape)
        for w, m in self.terms:
            out = out + w * m
        return out

    def __mul__(self, other: "CharacterPoly") -> "CharacterPoly":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out: Counter = Counter()
        for w, a in self.terms:
            for v, b in other.terms:
                out[w + v] += a * b
        return CharacterPoly.from_counter(self.shape, out)

    def __add__(self, other: "CharacterPoly") -> "CharacterPoly":
        out = self.as_counter()
        out.update(other.as_counter())
        return CharacterPoly.from_counter(self.shape, out)

    def dual(self) -> "CharacterPoly":
        return CharacterPoly.from_counter(self.shape, Counter({-w: m for w, m in self.terms}))

    @classmethod
    def one(cls, shape: BlockShape) -> "CharacterPoly":
        return cls(shape, ((Weight.zero(shape), 1),))


def schur_character(lam: YoungDiagram | Sequence[int], d: int | None = None,
                    shape: BlockShape | None = None) -> CharacterPoly:
    """s_lam in d variables, as a character of a single GL(d) block."""
    entries = lam.entries if isinstance(lam, YoungDiagram) else tuple(lam)
    d = len(entries) if d is None else d
    if len(entries) != d:
        raise ValueError(f"diagram of length {len(entries)} for GL({d})")
    shape = shape or BlockShape((("1", d),))
    return CharacterPoly.from_counter(shape, schur_character_counter(entries))


# -- irreducible modules ----------------------------------------------------

@dataclass(frozen=True, order=True)
class IrredModule:
    """Irreducible module of a product of GL blocks, by its dominant highest weight."""

    highest_weight: Weight

    def __post_init__(self):
        if not dominant_representative(self.highest_weight)[1]:
            raise ValueError(f"highest weight {self.highest_weight!r} is not dominant")

    @property
    def shape(self) -> BlockShape:
        return self.highest_weight.shape

    @classmethod
    def of(cls, shape: BlockShape, blocks: Sequence[Sequence[int]]) -> "IrredModule":
        return cls(Weight.from_blocks(shape, blocks))

    @classmethod
    def trivial(cls, shape: BlockShape) -> "IrredModule":
        return cls(Weight.zero(shape))

    @classmethod
    def standard(cls, shape: BlockShape, vid: str) -> "IrredModule":
        coords = [0] * shape.rank
        coords[shape.block_slice(vid).start] = 1
        return cls(Weight(shape, coords))

    def blocks(self) -> list[tuple[int, ...]]:
        return self.highest_weight.blocks()

    @property
    def dimension(self) -> int:
        return dimension(self)

    def dual(self) -> "IrredModule":
        return IrredModule.of(self.shape, [tuple(-x for x in reversed(b)) for b in self.blocks()])

    def det_character(self) -> Weight:
        """Weight of det(M): per block, dim(M)*|lam_q|/d_q in every coordinate."""
        dim = self.dimension
        blocks = []
        for (vid, dq), b in zip(self.shape.blocks, self.blocks()):
            c = Fraction(dim * sum(b), dq)
            assert c.denominator == 1
            blocks.append((int(c),) * dq)
        return Weight.from_blocks(self.shape, blocks)

    def label(self) -> str:
        return "[" + " | ".join(",".join(map(str, b)) for b in self.blocks()) + "]"

    def __repr__(self):
        return f"IrredModule{self.label()}"


def dimension(M: IrredModule) -> int:
    out = 1
    for b in M.blocks():
        out *= weyl_dimension(b)
    return out


@lru_cache(maxsize=None)
def module_character(M: IrredModule) -> CharacterPoly:
    per_block = [_gt_character(b) for b in M.blocks()]
    out: Counter = Counter()
    for combo in product(*per_block):
        coords = tuple(c for w, _ in combo for c in w)
        mult = 1
        for _, m in combo:
            mult *= m
        out[coords] += mult
    return CharacterPoly.from_counter(M.shape, out)


def peel_to_irreducibles(chi: CharacterPoly) -> list[tuple[IrredModule, int]]:
    """Decompose a character by repeatedly removing the lex-largest weight's module."""
    rest = chi.as_counter()
    out = []
    while rest:
        top = max(rest)
        mult = rest[top]
        M = IrredModule(top)
        for w, m in module_character(M).terms:
            rest[w] -= mult * m
            if rest[w] < 0:
                raise ValueError(f"not a character: negative multiplicity at {w!r}")
            if rest[w] == 0:
                del rest[w]
        out.append((M, mult))
    return sorted(out)


# -- Littlewood-Richardson --------------------------------------------------

def _lr_partitions(lam: tuple[int, ...], mu: tuple[int, ...], d: int) -> Counter:
    """c^nu_{lam,mu} for partitions with at most d rows (nu truncated to d rows)."""
    mu = tuple(x for x in mu if x > 0)
    out: Counter = Counter()
    k = len(mu)

    # counts[i][r]: number of (i+1)'s placed in row r.
    def place(i: int, shape: list[int], counts: list[list[int]]):
        if i == k:
            out[tuple(shape)] += 1
            return
        prev = list(shape)

        def fill(r: int, remaining: int, cur: list[int], row_counts: list[int]):
            if r == d:
                if remaining == 0:
                    place(i + 1, cur, counts + [row_counts])
                return
            # horizontal strip: new row r length <= previous row r-1 length
            cap = remaining if r == 0 else min(remaining, prev[r - 1] - prev[r])
            for t in range(cap, -1, -1):
                # lattice condition: #(i+1) in rows <= r  <=  #i in rows < r
                if i > 0:
                    have = sum(row_counts[:r]) + t
                    limit = sum(counts[i - 1][:r])
                    if have > limit:
                        continue
                nxt = list(cur)
                nxt[r] += t
                fill(r + 1, remaining - t, nxt, row_counts + [t])

        fill(0, mu[i], prev, [])

    place(0, list(lam) + [0] * (d - len(lam)), [])
    return out


def lr_decompose(lam: YoungDiagram, mu: YoungDiagram) -> list[tuple[YoungDiagram, int]]:
    """Decompose S^lam (x) S^mu for GL(d), d = common length (zero-padded)."""
    d = max(lam.length, mu.length)
    a = lam.entries + (0,) * (d - lam.length)
    b = mu.entries + (0,) * (d - mu.length)
    sa, sb = (a[-1] if a else 0), (b[-1] if b else 0)
    pa = tuple(x - sa for x in a)
    pb = tuple(x - sb for x in b)
    raw = _lr_partitions(pa, pb, d)
    return sorted((YoungDiagram(tuple(x + sa + sb for x in nu)), c) for nu, c in raw.items())


def tensor_irreducibles(M: IrredModule, N: IrredModule) -> list[tuple[IrredModule, int]]:
    """Blockwise LR decomposition of M (x) N."""
    if M.shape != N.shape:
        raise ValueError("shape mismatch")
    per_block = [
        lr_decompose(YoungDiagram(a), YoungDiagram(b)) for a, b in zip(M.blocks(), N.blocks())
    ]
    out: Counter = Counter()
    for combo in product(*per_block):
        mult = 1
        for _, c in combo:
            mult *= c
        out[IrredModule.of(M.shape, [nu.entries for nu, _ in combo])] += mult
    return sorted(out.items())


def tensor_decompositions(parts: Iterable[Iterable[tuple[IrredModule, int]]],
                          shape: BlockShape) -> list[tuple[IrredModule, int]]:
    """Decompose a tensor product of direct sums of irreducibles."""
    acc: Counter = Counter({IrredModule.trivial(shape): 1})
    for part in parts:
        nxt: Counter = Counter()
        for M, a in acc.items():
            for N, b in part:
                for P, c in tensor_irreducibles(M, N):
                    nxt[P] += a * b * c
        acc = nxt
    return sorted(acc.items())


# -- plethysm by evaluation -------------------------------------------------

def schur_of_character(lam: YoungDiagram | Sequence[int], chi: CharacterPoly) -> CharacterPoly:
    """Character of S^lam applied to a module with character chi."""
    entries = lam.entries if isinstance(lam, YoungDiagram) else tuple(lam)
    ys = [w.coords for w, m in chi.terms for _ in range(m)]
    N = len(ys)
    if len(entries) > N:
        raise ValueError(f"diagram of length {len(entries)} exceeds dimension {N}")
    entries = tuple(entries) + (0,) * (N - len(entries))
    zero = (0,) * chi.shape.rank
    memo: dict = {}

    def s(mu: tuple[int, ...], k: int) -> Counter:
        key = (mu, k)
        if key in memo:
            return memo[key]
        if k == 0:
            res = Counter({zero: 1})
        elif k == 1:
            res = Counter({tuple(mu[0] * c for c in ys[0]): 1})
        else:
            res = Counter()
            total = sum(mu)
            y = ys[k - 1]
            for nu in _interlacing(mu):
                e = total - sum(nu)
                shiftv = tuple(e * c for c in y)
                for w, c in s(tuple(nu), k - 1).items():
                    res[tuple(a + b for a, b in zip(w, shiftv))] += c
        memo[key] = res
        return res

    return CharacterPoly.from_counter(chi.shape, s(entries, N))


def schur_functor_irreducibles(lam: YoungDiagram, M: IrredModule) -> list[tuple[IrredModule, int]]:
    """Irreducible decomposition of S^lam(M)."""
    return _schur_functor_cached(lam, M)


@lru_cache(maxsize=None)
def _schur_functor_cached(lam: YoungDiagram, M: IrredModule):
    nz = [i for i, b in enumerate(M.blocks()) if any(b)]
    # Fast path: M is the standard module of one block.
    if len(nz) == 1:
        b = M.blocks()[nz[0]]
        if b[0] == 1 and all(x == 0 for x in b[1:]) and lam.length == len(b):
            blocks = [tuple(0 for _ in bb) for bb in M.blocks()]
            blocks[nz[0]] = lam.entries
            return ((IrredModule.of(M.shape, blocks), 1),)
    return tuple(peel_to_irreducibles(schur_of_character(lam, module_character(M))))
