from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from strongseq import cones
from strongseq.collection import build_absolute, build_tower
from strongseq.lattice import BlockShape, OrderVector, Weight, weyl_orbit
from strongseq.nefcone import (EffectivityOracle, auto_order_vector, decompose_anticanonical, extremal_nef,
                               h0_vanishes, is_nef_module, minimal_sets, nef_cone, nef_cone_of, nef_data,
                               order_key)
from strongseq.quiver import anticanonical, rep_weights
from strongseq.schur import IrredModule

from conftest import a3, brute_member, flag, grassmannian

G2 = BlockShape.of(("v", 2))


def W(shape, *c):
    return Weight(shape, c)


def brute_minimal_sets(theta, ws):
    """Inclusion-minimal subsets (of any kind) whose cone contains theta."""
    hits = [set(S) for k in range(1, len(ws) + 1) for S in combinations(ws, k)
            if brute_member([w.coords for w in S], theta.coords)]
    return sorted(tuple(sorted(S)) for S in hits if not any(T < S for T in hits))


def test_minimal_sets_examples():
    ws = [W(G2, 1, 0), W(G2, 0, 1), W(G2, 1, 1)]
    got = minimal_sets(W(G2, 1, 1), ws)
    assert got == sorted([(W(G2, 1, 1),), (W(G2, 0, 1), W(G2, 1, 0))])
    assert minimal_sets(W(G2, 5, 5), [W(G2, 1, 0), W(G2, 0, 1)]) == [(W(G2, 0, 1), W(G2, 1, 0))]
    assert minimal_sets(W(G2, 1, 0), [W(G2, 0, 1)]) == []


def test_nef_cone_examples():
    C = nef_cone(grassmannian(5, 2))
    assert C == cones.from_generators([(1, 0), (0, 1)])
    ws = [W(G2, 1, 0), W(G2, 0, 1), W(G2, 1, 1)]
    assert nef_cone_of(W(G2, 1, 1), ws) == cones.from_generators([(1, 1)])
    Q = flag(4, 2, 1)
    assert nef_cone(Q) == cones.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    with pytest.raises(ValueError):
        nef_cone_of(W(G2, 1, 0), [W(G2, 0, 1)])


def test_extremal_nef_examples():
    rays, vb = extremal_nef(nef_cone(grassmannian(5, 2)))
    assert rays == [W(G2, 0, 1), W(G2, 1, 0)]
    assert vb == [IrredModule.standard(G2, "v")]
    Q = a3(7, 2, 2, 1)
    _, vb = extremal_nef(nef_cone(Q))
    assert vb == sorted([IrredModule.standard(Q.shape, "v1"), IrredModule.standard(Q.shape, "v2")])


def test_a3_small_m_case():
    # (m, n, d2, d1) = (3, 4, 2, 1): the two minimal sets share both Hom weights
    Q = a3(3, 4, 2, 1)
    sh = Q.shape
    sets = minimal_sets(anticanonical(Q), rep_weights(Q))
    assert sets == brute_minimal_sets(anticanonical(Q), rep_weights(Q).weights())
    assert len(sets) == 2
    nd = nef_data(Q)
    E1 = IrredModule.of(sh, [(1,), (0, 0)])
    E2 = IrredModule.of(sh, [(0,), (1, 0)])
    H = IrredModule.of(sh, [(1,), (0, -1)])
    assert list(nd.vb_plus) == sorted([E1, H])
    assert nd.coefficients == {E1: 6, H: 1}
    # the dominant weight of E2 lies outside the cone spanned by the second minimal set
    assert not is_nef_module(nd.nef_cone, E2)


def test_decomposition_examples():
    Q = grassmannian(5, 2)
    nd = nef_data(Q)
    assert nd.coefficients == {IrredModule.standard(G2, "v"): 5} and nd.integral
    m, n, d2, d1 = 7, 2, 2, 1
    Q = a3(m, n, d2, d1)
    nd = nef_data(Q)
    E1, E2 = IrredModule.standard(Q.shape, "v1"), IrredModule.standard(Q.shape, "v2")
    assert nd.coefficients == {E1: n * d2, E2: m - n * d1}
    with pytest.raises(ValueError):
        decompose_anticanonical(W(G2, 1, 1), [])


def test_decomposition_reports_all_vertices():
    # theta = det(A) + det(B) = det(C): two vertices, lex-largest chosen
    s = BlockShape.of(("a", 1), ("b", 1))
    A, B, C = IrredModule.of(s, [(1,), (0,)]), IrredModule.of(s, [(0,), (1,)]), IrredModule.of(s, [(1,), (1,)])
    dec = decompose_anticanonical(W(s, 1, 1), [A, B, C])
    assert set(dec.vertices) == {(1, 1, 0), (0, 0, 1)}
    assert dec.as_dict() == {A: 1, B: 1, C: 0}


def test_is_nef_module_examples():
    C = nef_cone(grassmannian(5, 2))
    assert is_nef_module(C, IrredModule.standard(G2, "v"))
    assert not is_nef_module(C, IrredModule.standard(G2, "v").dual())
    assert is_nef_module(C, IrredModule.trivial(G2))


def test_order_key_examples():
    ell = OrderVector(G2, (2, 1))
    assert order_key(IrredModule.trivial(G2), ell)[0] == 0
    Q = IrredModule.of(G2, [(1, 0)])
    det = IrredModule.of(G2, [(1, 1)])
    assert order_key(Q, ell)[0] == 2 and order_key(det, ell)[0] == 3
    assert order_key(IrredModule.of(G2, [(2, 0)]), ell)[0] == 4
    assert order_key(IrredModule.of(G2, [(1, 1)]), ell)[0] == 3


def test_order_key_unaligned_uses_orbit_max():
    ell = OrderVector(G2, (1, 2))
    assert order_key(IrredModule.of(G2, [(1, 0)]), ell) == (2, (0, 1))


def test_auto_order_vector():
    assert auto_order_vector(G2, rep_weights(grassmannian(5, 2)).weights()).coords == (2, 1)
    Q = a3(7, 2, 2, 1)
    ell = auto_order_vector(Q.shape, rep_weights(Q).weights())
    assert ell.coords == (4, 3, 2) and ell.is_dominance_aligned()


def test_h0_examples():
    Q = grassmannian(5, 2)
    eff = EffectivityOracle.for_quiver(Q)
    v = h0_vanishes(IrredModule.of(G2, [(1, 1)]), IrredModule.of(G2, [(1, 0)]), eff)
    assert v.status == "vanishes" and v.witness == ((IrredModule.of(G2, [(0, -1)]), W(G2, -1, 0)),)
    E = IrredModule.of(G2, [(2, 1)])
    assert h0_vanishes(E, E, eff).status == "scalar"
    A = a3(5, 1, 2, 1)
    eff = EffectivityOracle.for_quiver(A)
    F = IrredModule.standard(A.shape, "v1")
    E = IrredModule.standard(A.shape, "v2")
    v = h0_vanishes(F, E, eff)
    assert v.status == "vanishes" and v.witness == ((IrredModule.of(A.shape, [(-1,), (1, 0)]), W(A.shape, -1, 0, 1)),)


def test_h0_needs_every_constituent():
    # Hom(Q, S^2 Q) = S^(2,-1) + Q has sections: Q has only effective weights
    Q = grassmannian(5, 2)
    eff = EffectivityOracle.for_quiver(Q)
    v = h0_vanishes(IrredModule.of(G2, [(1, 0)]), IrredModule.of(G2, [(2, 0)]), eff)
    assert v.status == "inconclusive"
    # the reverse direction vanishes, with one witness per constituent
    v = h0_vanishes(IrredModule.of(G2, [(2, 0)]), IrredModule.of(G2, [(1, 0)]), eff)
    assert v.status == "vanishes" and len(v.witness) == 2


@pytest.mark.parametrize("Q", [grassmannian(5, 2), flag(4, 2, 1), a3(7, 2, 2, 1), a3(3, 4, 2, 1)],
                         ids=["gr52", "flag421", "a3gt", "a3lt"])
def test_nef_cone_structure(Q):
    nd = nef_data(Q)
    shape = Q.shape
    for S in nd.minimal_sets:
        part = cones.from_generators(S, ambient=shape.rank)
        for r in nd.nef_cone.rays:
            assert cones.contains(part, r)
    # N equals the dual of the sum of the duals
    duals = [cones.dual(cones.from_generators(S, ambient=shape.rank)) for S in nd.minimal_sets]
    total = duals[0]
    for D in duals[1:]:
        total = cones.minkowski_sum(total, D)
    assert cones.dual(total) == nd.nef_cone
    assert set(nd.extremal_weights) == {u for w in nd.extremal_weights for u in weyl_orbit(w)}
    assert cones.contains(nd.nef_cone, nd.theta, "interior")


# -- properties -------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(st.data())
def test_minimal_sets_match_brute_force(data):
    n = data.draw(st.integers(1, 3))
    shape = BlockShape.of(("v", n))
    vec = st.lists(st.integers(-2, 2), min_size=n, max_size=n).map(lambda c: Weight(shape, c))
    ws = sorted(set(data.draw(st.lists(vec, min_size=1, max_size=5))))
    theta = data.draw(vec)
    if theta.is_zero() or all(w.is_zero() for w in ws):
        return
    ws = [w for w in ws if not w.is_zero()]
    assert minimal_sets(theta, ws) == brute_minimal_sets(theta, ws)


@st.composite
def dominant_modules(draw, shape):
    blocks = []
    for _, d in shape.blocks:
        blocks.append(tuple(sorted(draw(st.lists(st.integers(-3, 3), min_size=d, max_size=d)), reverse=True)))
    return IrredModule.of(shape, blocks)


SHAPE = BlockShape.of(("v1", 1), ("v2", 2), ("v3", 2))


@settings(max_examples=200, deadline=None)
@given(dominant_modules(SHAPE), dominant_modules(SHAPE), dominant_modules(SHAPE),
       st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_order_is_total(A, B, C, raw):
    ell = OrderVector(SHAPE, [Fraction(x) + Fraction(1, 7) * i for i, x in enumerate(raw)])
    ka, kb, kc = order_key(A, ell), order_key(B, ell), order_key(C, ell)
    assert (ka == kb) == (A == B)
    if ka < kb and kb < kc:
        assert ka < kc


_COLLECTIONS = {}


def _fixture_collection(name):
    if name not in _COLLECTIONS:
        Q = {"gr52": grassmannian(5, 2), "flag421": flag(4, 2, 1), "a3gt": a3(7, 2, 2, 1)}[name]
        C = build_tower(Q, [["f->v2"]]) if name == "flag421" else build_absolute(Q)
        _COLLECTIONS[name] = (Q, C, EffectivityOracle.for_quiver(Q))
    return _COLLECTIONS[name]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["gr52", "flag421", "a3gt"]), st.data())
def test_order_implies_h0_vanishing(name, data):
    Q, C, eff = _fixture_collection(name)
    mods = C.modules()
    E = data.draw(st.sampled_from(mods))
    F = data.draw(st.sampled_from(mods))
    if order_key(E, C.order_vector) < order_key(F, C.order_vector):
        assert h0_vanishes(F, E, eff, C.order_vector).status == "vanishes"
