"""Schur-power collections: absolute, relative (one projection) and towers."""
from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from . import cones
from .lattice import BlockShape, OrderVector, Weight, lift
from .nefcone import (EffectivityOracle, H0Verdict, NefData, auto_order_vector, h0_vanishes,
                      nef_data_of, order_key)
from .quiver import (Quiver, anticanonical, arrow_weights, genericity_check, invariants_trivial,
                     multiplicity_hypothesis, rep_weights)
from .schur import IrredModule, YoungDiagram, enumerate_box, schur_functor_irreducibles, tensor_decompositions

SUPPORT_CAP = 2 ** 16


class HypothesisError(ValueError):
    """A standing hypothesis of the construction fails (reported with exit code 2)."""

    def __init__(self, hypothesis: str, message: str, witness=None):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis
        self.witness = witness


@dataclass(frozen=True)
class Assumption:
    name: str
    status: str  # checked | failed | asserted | theorem-backed | diagnostic
    detail: str = ""


@dataclass(frozen=True)
class Slot:
    """One extremal module together with its label range."""

    module: IrredModule
    level: int
    m: Fraction
    bound: int  # box width; labels run over Y_{bound, d}
    empty_box: bool = False

    @property
    def d(self) -> int:
        return self.module.dimension

    def labels(self) -> list[YoungDiagram]:
        if self.empty_box:
            return [YoungDiagram((0,) * self.d)]
        return enumerate_box(self.bound, self.d)


SchurLabel = tuple[tuple[IrredModule, YoungDiagram], ...]


@dataclass(frozen=True)
class Entry:
    module: IrredModule
    multiplicity: int
    sources: tuple[SchurLabel, ...]
    key: tuple


@dataclass(frozen=True)
class Collection:
    shape: BlockShape
    theorem: str
    entries: tuple[Entry, ...]
    slots: tuple[Slot, ...]
    order_vector: OrderVector
    assumptions: tuple[Assumption, ...] = ()
    levels: tuple = ()

    def modules(self) -> list[IrredModule]:
        return [e.module for e in self.entries]

    def __len__(self):
        return len(self.entries)


# -- level data -------------------------------------------------------------

@dataclass(frozen=True)
class Level:
    """A group block set with the weights of a module on it (projected)."""

    shape: BlockShape
    weights: tuple[tuple[Weight, int], ...]

    @property
    def theta(self) -> Weight:
        out = Weight.zero(self.shape)
        for w, m in self.weights:
            out = out + w * m
        return out

    def distinct(self) -> list[Weight]:
        return sorted({w for w, _ in self.weights})


def _projected_level(Q: Quiver, vertex_ids: Sequence[str], arrows) -> Level:
    shape = BlockShape(tuple((v.id, v.dim) for v in Q.active if v.id in set(vertex_ids)))
    acc: dict[Weight, int] = defaultdict(int)
    for a in arrows:
        for w, m in arrow_weights(Q, a, shape).items():
            if not w.is_zero():
                acc[w] += m
    return Level(shape, tuple(sorted(acc.items())))


def _level_nef(level: Level, threads: int = 1) -> NefData | None:
    if level.shape.rank == 0:
        return None
    if not level.weights or level.theta.is_zero():
        raise HypothesisError("fibre-nontrivial", f"level {level.shape} has no effective anticanonical character")
    return nef_data_of(level.theta, [w for w, _ in level.weights], threads)


# -- relative conditions ----------------------------------------------------

@dataclass(frozen=True)
class RelativeSplit:
    quiver: Quiver
    sub_arrows: tuple[str, ...]
    base: Quiver                  # the subquiver (H, W)
    fibre: Level                  # (G0, V0 projected to T0)
    nef_full: NefData
    nef_base: NefData | None
    nef_fibre: NefData | None
    condition_i: str              # checked | failed | unverified
    condition_ii: bool
    condition_iii: bool
    vb_partition: bool
    details: dict = field(default_factory=dict)

    @property
    def vb_base(self) -> tuple[IrredModule, ...]:
        return self.nef_base.vb_plus if self.nef_base else ()

    @property
    def vb_fibre(self) -> tuple[IrredModule, ...]:
        return self.nef_fibre.vb_plus if self.nef_fibre else ()


def select_subquiver(Q: Quiver, arrow_ids: Iterable[str]) -> Quiver:
    ids = list(arrow_ids)
    known = {a.id for a in Q.arrows}
    bad = [i for i in ids if i not in known]
    if bad:
        raise ValueError(f"unknown arrow ids in subquiver selection: {bad}")
    arrs = tuple(a for a in Q.arrows if a.id in set(ids))
    verts = {a.tail for a in arrs} | {a.head for a in arrs}
    sub_vertices = tuple(v for v in Q.vertices if v.id in verts)
    return Quiver(sub_vertices, arrs)


def _check_condition_i(Q: Quiver, sub: Quiver, theta: Weight, base_theta: Weight | None,
                       cap: int) -> tuple[str, dict]:
    """Torus-level image condition over all minimal item supports.

    An item is a weight together with the summand (fibre or base) it comes
    from. A failing support contains a failing minimal one, so minimal
    supports suffice; for each minimal weight set the worst case is to take
    every weight from the fibre whenever it occurs there.
    """
    shape = Q.shape
    sub_ids = {a.id for a in sub.arrows}
    origin: dict[Weight, set[str]] = defaultdict(set)
    for a in Q.arrows:
        for w in arrow_weights(Q, a, shape):
            origin[w].add("W" if a.id in sub_ids else "V0")
    ws = sorted(origin)
    r = min(shape.rank, len(ws))
    count = sum(_binom(len(ws), k) for k in range(1, r + 1))
    if count > cap:
        return "unverified", {"candidate_supports": count, "cap": cap}
    if base_theta is None:
        return "checked", {"candidate_supports": count}
    from .nefcone import minimal_sets
    hshape = base_theta.shape
    for S in minimal_sets(theta, ws):
        forced = [w for w in S if origin[w] == {"W"}]
        proj = [Weight.from_blocks(hshape, [w.block(v) for v in hshape.vertex_ids]) for w in forced]
        C = cones.from_generators(proj, ambient=hshape.rank, shape=hshape)
        if not cones.contains(C, base_theta):
            return "failed", {"support": [list(w.coords) for w in S]}
    return "checked", {"candidate_supports": count}


def _binom(n, k):
    from math import comb
    return comb(n, k)


def check_relative_conditions(Q: Quiver, sub_arrows: Sequence[str], threads: int = 1,
                              cap: int = SUPPORT_CAP) -> RelativeSplit:
    sub = select_subquiver(Q, sub_arrows) if sub_arrows else None
    shape = Q.shape
    theta = anticanonical(Q)
    full = nef_data_of(theta, rep_weights(Q).weights(), threads)
    if sub is None or not sub.active:
        raise ValueError("subquiver selection must contain an active vertex")
    h_ids = [v.id for v in sub.active]
    g0_ids = [v.id for v in Q.active if v.id not in set(h_ids)]
    sub_ids = {a.id for a in sub.arrows}
    v0 = [a for a in Q.arrows if a.id not in sub_ids]
    fibre = _projected_level(Q, g0_ids, v0)
    nef_base = nef_data_of(anticanonical(sub), rep_weights(sub).weights(), threads)
    nef_fibre = _level_nef(fibre, threads)
    # (ii): N = lift(N0) + lift(NH)
    gens = [lift(Weight(nef_base.shape, r), shape) for r in nef_base.nef_cone.rays]
    lin = [lift(Weight(nef_base.shape, r), shape) for r in nef_base.nef_cone.lineality]
    if nef_fibre is not None:
        gens += [lift(Weight(fibre.shape, r), shape) for r in nef_fibre.nef_cone.rays]
        lin += [lift(Weight(fibre.shape, r), shape) for r in nef_fibre.nef_cone.lineality]
    summed = cones.from_generators(gens, lin, ambient=shape.rank, shape=shape)
    cond_ii = summed == full.nef_cone
    lifted_vb = sorted([IrredModule(lift(M.highest_weight, shape)) for M in nef_base.vb_plus]
                       + ([IrredModule(lift(M.highest_weight, shape)) for M in nef_fibre.vb_plus]
                          if nef_fibre else []))
    partition = lifted_vb == sorted(full.vb_plus) and len(set(lifted_vb)) == len(lifted_vb)
    # (iii): number of distinct T0 weights equals rank of G0
    cond_iii = len(fibre.distinct()) == fibre.shape.rank
    cond_i, det_i = _check_condition_i(Q, sub, theta, nef_base.theta, cap)
    details = {"condition_i": det_i, "t0_weights": len(fibre.distinct()), "t0_rank": fibre.shape.rank}
    return RelativeSplit(Q, tuple(sorted(sub_ids)), sub, fibre, full, nef_base, nef_fibre,
                         cond_i, cond_ii, cond_iii, partition, details)


# -- building ---------------------------------------------------------------

def _slots_for(nd: NefData, level: int, shape: BlockShape, overrides: dict | None = None) -> list[Slot]:
    if not nd.integral:
        bad = {M.label(): str(c) for M, c in nd.coefficients.items() if c.denominator != 1}
        raise HypothesisError("integral-coefficients", f"non-integral m_E: {bad}")
    out = []
    for M, m in nd.decomposition.coefficients:
        big = IrredModule(lift(M.highest_weight, shape))
        bound = int(m) - M.dimension
        if overrides and big.label() in overrides:
            bound = int(overrides[big.label()])
        out.append(Slot(big, level, m, bound, bound < 0))
    return out


def _label_modules(slots: Sequence[Slot], labels: Sequence[YoungDiagram], shape: BlockShape):
    parts = [schur_functor_irreducibles(lam, s.module) for s, lam in zip(slots, labels)]
    return tensor_decompositions(parts, shape)


def assemble(shape: BlockShape, slots: Sequence[Slot], ell: OrderVector, theorem: str,
             assumptions: Sequence[Assumption] = (), threads: int = 1, levels=()) -> Collection:
    combos = list(product(*[s.labels() for s in slots]))
    if threads > 1 and len(combos) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(lambda c: _label_modules(slots, c, shape), combos))
    else:
        results = [_label_modules(slots, c, shape) for c in combos]
    mult: dict[IrredModule, int] = defaultdict(int)
    prov: dict[IrredModule, list] = defaultdict(list)
    for combo, decomp in zip(combos, results):
        label = tuple((s.module, lam) for s, lam in zip(slots, combo))
        for M, c in decomp:
            mult[M] += c
            prov[M].append(label)
    entries = [Entry(M, mult[M], tuple(prov[M]), order_key(M, ell)) for M in mult]
    entries.sort(key=lambda e: e.key)
    for a, b in zip(entries, entries[1:]):
        if a.key == b.key:
            raise RuntimeError(f"order keys tie for {a.module!r} and {b.module!r}")
    extra = []
    for s in slots:
        if s.empty_box:
            extra.append(Assumption("empty-label-box", "diagnostic",
                                    f"{s.module.label()}: m_E - d_E = {s.bound} < 0; zero diagram only"))
    return Collection(shape, theorem, tuple(entries), tuple(slots), ell,
                      tuple(assumptions) + tuple(extra), tuple(levels))


def resolve_order_vector(Q: Quiver, coords: Sequence | None = None) -> OrderVector:
    ws = rep_weights(Q).weights()
    if coords is None:
        return auto_order_vector(Q.shape, ws)
    try:
        return OrderVector.certified(Q.shape, coords, ws)
    except ValueError as exc:
        raise HypothesisError("order-vector", str(exc)) from exc


def base_assumptions(Q: Quiver) -> list[Assumption]:
    out = []
    inv = invariants_trivial(Q)
    if not inv.trivial:
        rel = " + ".join(f"{c}*{w!r}" for w, c in inv.relation)
        raise HypothesisError("invariants-trivial", f"K[V]^T != K; invariant monomial {rel} = 0",
                              inv.relation)
    out.append(Assumption("invariants-trivial", "checked", f"positive 1-PS {list(inv.functional.coords)}"))
    mh = multiplicity_hypothesis(Q)
    out.append(Assumption("unstable-codim-2", "checked" if mh.effective_codim2 else "asserted",
                          "m_omega >= d_omega for all components" if mh.effective_codim2
                          else "multiplicity test inconclusive"))
    out.append(Assumption("bundle-semistability", "checked" if mh.semistable_bundles else "asserted",
                          "m_omega > d_omega for all components" if mh.semistable_bundles
                          else "strict multiplicity test inconclusive"))
    gv = genericity_check(Q)
    out.append(Assumption("semistable-equals-stable", "checked" if gv.verdict == "generic" else "asserted",
                          f"{gv.verdict} ({gv.test})"))
    out.append(Assumption("free-action", "asserted", "no algorithmic test"))
    out.append(Assumption("higher-cohomology-vanishing", "theorem-backed", "not computed outside homogeneous cases"))
    return out


def build_absolute(Q: Quiver, ell: OrderVector | None = None, threads: int = 1) -> Collection:
    assumptions = base_assumptions(Q)
    ell = ell or resolve_order_vector(Q)
    nd = nef_data_of(anticanonical(Q), rep_weights(Q).weights(), threads)
    slots = _slots_for(nd, 0, Q.shape)
    return assemble(Q.shape, slots, ell, "absolute", assumptions, threads, levels=(nd,))


def _require_split(split: RelativeSplit, assert_condition_i: bool) -> list[Assumption]:
    out = []
    if not split.condition_ii or not split.vb_partition:
        raise HypothesisError("relative-condition-ii", "nef cone is not the sum of fibre and base nef cones")
    if not split.condition_iii:
        raise HypothesisError("relative-condition-iii",
                              f"T0 has {split.details['t0_weights']} weights, rank {split.details['t0_rank']}")
    if split.condition_i == "failed":
        raise HypothesisError("relative-condition-i", f"image not semistable: {split.details['condition_i']}")
    if split.condition_i == "unverified" and not assert_condition_i:
        raise HypothesisError("relative-condition-i", "support count above cap; pass assert_condition_i")
    status = "checked" if split.condition_i == "checked" else "asserted"
    out.append(Assumption("relative-condition-i", status, ",".join(split.sub_arrows)))
    out.append(Assumption("relative-condition-ii", "checked", ",".join(split.sub_arrows)))
    out.append(Assumption("relative-condition-iii", "checked", ",".join(split.sub_arrows)))
    return out


def build_tower(Q: Quiver, chain: Sequence[Sequence[str]], ell: OrderVector | None = None,
                threads: int = 1, assert_condition_i: bool = False,
                base_overrides: dict | None = None, theorem: str = "tower") -> Collection:
    """Collection along nested subquivers Q = S0 > S1 > ... > Sk (given by arrow ids)."""
    assumptions = base_assumptions(Q)
    ell = ell or resolve_order_vector(Q)
    shape = Q.shape
    current = Q
    slots: list[Slot] = []
    levels = []
    for j, sel in enumerate(chain):
        sel = list(sel)
        cur_ids = {a.id for a in current.arrows}
        if not set(sel) < cur_ids:
            raise ValueError(f"tower level {j + 1} is not a proper subquiver of the previous level")
        split = check_relative_conditions(current, sel, threads)
        assumptions += _require_split(split, assert_condition_i)
        if split.nef_fibre is not None:
            slots += _slots_for(split.nef_fibre, j, shape)
            levels.append(split.nef_fibre)
        current = split.base
    nd = nef_data_of(anticanonical(current), rep_weights(current).weights(), threads)
    if base_overrides:
        assumptions.append(Assumption("base-bounds-override", "asserted",
                                      ", ".join(f"{k}={v}" for k, v in sorted(base_overrides.items()))))
    else:
        assumptions.append(Assumption("base-bounds", "theorem-backed", "b_F = m_F - d_F"))
    slots += _slots_for(nd, len(chain), shape, base_overrides)
    levels.append(nd)
    return assemble(shape, slots, ell, theorem, assumptions, threads, levels)


def build_relative(Q: Quiver, sub_arrows: Sequence[str], ell: OrderVector | None = None,
                   threads: int = 1, assert_condition_i: bool = False,
                   b_overrides: dict | None = None) -> Collection:
    if set(sub_arrows) == {a.id for a in Q.arrows}:
        # degenerate split: no fibre, the base is the whole quiver
        col = build_absolute(Q, ell, threads)
        return Collection(col.shape, "relative", col.entries, col.slots, col.order_vector,
                          col.assumptions + (Assumption("degenerate-split", "diagnostic", "V0 = 0"),),
                          col.levels)
    return build_tower(Q, [sub_arrows], ell, threads, assert_condition_i, b_overrides, "relative")


# -- verification -----------------------------------------------------------

@dataclass(frozen=True)
class H0Report:
    passed: bool
    pairs: int
    verdicts: tuple[tuple[int, int, H0Verdict], ...]
    failures: tuple[tuple[int, int], ...]


def verify_h0(Q: Quiver, C: Collection, threads: int = 1, full_scan: bool = True) -> H0Report:
    eff = EffectivityOracle.for_quiver(Q)
    mods = C.modules()
    pairs = [(i, j) for i in range(len(mods)) for j in range(len(mods)) if i < j]

    def run(p):
        i, j = p
        return h0_vanishes(mods[j], mods[i], eff, C.order_vector, full_scan)

    if threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            res = list(ex.map(run, pairs))
    else:
        res = [run(p) for p in pairs]
    verdicts = tuple((i, j, v) for (i, j), v in zip(pairs, res))
    failures = tuple((i, j) for i, j, v in verdicts if v.status != "vanishes")
    return H0Report(not failures, len(pairs), verdicts, failures)


def collection_stats(C: Collection, Q: Quiver | None = None) -> dict:
    dims = [e.module.dimension for e in C.entries]
    out = {
        "entries": len(dims),
        "dimensions": dims,
        "total_dimension": sum(dims),
        "label_count": 1 if not C.slots else _prod(len(s.labels()) for s in C.slots),
    }
    if Q is not None:
        from .bott import euler_characteristic, recognize
        fx = recognize(Q)
        if fx is not None:
            chi = euler_characteristic(fx)
            out["euler_characteristic"] = chi
            out["length_ratio"] = str(Fraction(len(dims), chi))
    return out


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out
