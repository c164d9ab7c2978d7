from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from strongseq.lattice import BlockShape, OnePS, Weight, det_character
from strongseq.quiver import (MalformedQuiver, Quiver, a3_parameters, anticanonical, genericity_check,
                              hm_value, invariants_trivial, is_T_effective, multiplicity_hypothesis,
                              multiply_arrows, rep_weights, torus_sst)

from conftest import a3, flag, grassmannian


def table(Q):
    return {w.coords: m for w, m in rep_weights(Q).entries}


def test_grassmannian_weights():
    assert table(grassmannian(5, 2)) == {(1, 0): 5, (0, 1): 5}


def test_a3_weights():
    assert table(a3(5, 1, 2, 1)) == {(0, 1, 0): 5, (0, 0, 1): 5, (1, -1, 0): 1, (1, 0, -1): 1}


def test_no_arrows_empty_table():
    assert len(rep_weights(Quiver.build([("v", 3)], []))) == 0


def test_malformed():
    with pytest.raises(MalformedQuiver):
        Quiver.build([("v", 1), ("v", 2)], [])
    with pytest.raises(MalformedQuiver):
        Quiver.build([("v", 1)], [("v", "w")])
    with pytest.raises(MalformedQuiver):
        Quiver.build([("v", 0)], [])


def test_parallel_arrows_merge():
    Q = Quiver.build([("f", 3, True), ("v", 1)], [("f", "v"), ("f", "v", 2)])
    assert [a.multiplicity for a in Q.arrows] == [3]


def test_anticanonical_examples():
    assert anticanonical(grassmannian(5, 2)).coords == (5, 5)
    for m, n, d2, d1 in [(7, 2, 2, 1), (3, 4, 2, 1), (5, 1, 2, 1), (9, 2, 3, 2)]:
        Q = a3(m, n, d2, d1)
        want = det_character(Q.shape, "v1") * (n * d2) + det_character(Q.shape, "v2") * (m - n * d1)
        assert anticanonical(Q) == want
    # flag exponents d_{j+1} - d_{j-1}
    Q = flag(4, 2, 1)
    assert anticanonical(Q) == det_character(Q.shape, "v1") * 2 + det_character(Q.shape, "v2") * 3


def test_multiply_arrows():
    Q = a3(5, 1, 2, 1)
    assert multiply_arrows(Q, 1) == Q
    assert table(multiply_arrows(Q, 3)) == {k: 3 * v for k, v in table(Q).items()}
    assert anticanonical(multiply_arrows(Q, 3)) == anticanonical(Q) * 3
    with pytest.raises(ValueError):
        multiply_arrows(Q, 0)


def test_hm_value():
    s = BlockShape.of(("v", 2))
    assert hm_value([Weight(s, (1, 0)), Weight(s, (0, 1))], OnePS(s, (2, -1))) == -1
    assert hm_value([Weight(s, (1, 1))], OnePS(s, (1, 1))) == 2
    Q = a3(5, 1, 2, 1)
    assert hm_value(rep_weights(Q).weights(), OnePS(Q.shape, (3, 1, 1))) == 1
    with pytest.raises(ValueError):
        hm_value([], OnePS(s, (1, 1)))


def test_torus_sst():
    s = BlockShape.of(("v", 2))
    assert not torus_sst([Weight(s, (1, 0))], Weight(s, (1, 1)))
    assert torus_sst([Weight(s, (1, 0)), Weight(s, (0, 1))], Weight(s, (1, 1)))
    Q = grassmannian(5, 2)
    assert torus_sst(rep_weights(Q).weights(), anticanonical(Q))


def test_effectivity():
    Q = grassmannian(5, 2)
    assert is_T_effective(Q, Weight(Q.shape, (1, 0)))
    assert is_T_effective(Q, Weight.zero(Q.shape))
    A = a3(5, 1, 2, 1)
    assert not is_T_effective(A, Weight(A.shape, (-1, 1, 0)))


def test_invariants():
    v = invariants_trivial(grassmannian(5, 2))
    assert v.trivial and v.functional.coords == (1, 1)
    v = invariants_trivial(a3(5, 1, 2, 1))
    assert v.trivial and all(pair_ > 0 for pair_ in (
        sum(a * b for a, b in zip(w.coords, v.functional.coords)) for w in rep_weights(a3(5, 1, 2, 1)).weights()))
    cyc = Quiver.build([("v1", 1), ("v2", 1)], [("v1", "v2"), ("v2", "v1")])
    v = invariants_trivial(cyc)
    assert not v.trivial
    assert {w.coords for w, _ in v.relation} == {(1, -1), (-1, 1)}
    total = [0, 0]
    for w, c in v.relation:
        total = [t + c * x for t, x in zip(total, w.coords)]
    assert total == [0, 0]


def test_multiplicity_hypothesis():
    r = multiplicity_hypothesis(grassmannian(5, 2))
    (c,) = r.components
    assert (c.d_omega, c.m_omega, c.weak, c.strict) == (2, 5, True, True)
    r = multiplicity_hypothesis(a3(5, 1, 2, 1))
    hom = [c for c in r.components if c.arrow_id == "v2->v1"][0]
    assert (hom.d_omega, hom.m_omega, hom.strict) == (2, 1, False)
    big = multiply_arrows(a3(5, 1, 2, 1), 5)
    assert multiplicity_hypothesis(big).semistable_bundles


def test_genericity():
    v = genericity_check(a3(7, 2, 2, 1))
    assert (v.verdict, v.test) == ("generic", "a3-gcd")
    v = genericity_check(a3(5, 1, 2, 1))
    assert v.test != "a3-gcd"
    assert a3_parameters(a3(5, 1, 2, 1)) == (5, 1, 2, 1)
    assert genericity_check(grassmannian(3, 1)).verdict == "generic"


# -- properties -------------------------------------------------------------

@st.composite
def quivers(draw):
    n_act = draw(st.integers(1, 3))
    dims = [draw(st.integers(1, 2)) for _ in range(n_act)]
    verts = [(f"v{i}", d) for i, d in enumerate(dims)]
    if draw(st.booleans()):
        verts.append(("f", draw(st.integers(1, 4)), True))
    ids = [v[0] for v in verts]
    arrows = draw(st.lists(st.tuples(st.sampled_from(ids), st.sampled_from(ids), st.integers(1, 3)),
                           min_size=1, max_size=4))
    arrows = [a for a in arrows if a[0] != a[1] and not (a[0] == "f" and a[1] == "f")]
    return Quiver.build(verts, arrows)


@settings(max_examples=200, deadline=None)
@given(quivers())
def test_step_one_formula_matches_weight_sum(Q):
    # anticanonical raises on disagreement; compare again here explicitly
    assert anticanonical(Q) == rep_weights(Q).total()


@settings(max_examples=200, deadline=None)
@given(quivers())
def test_block_sums_balance_without_framing(Q):
    chi = anticanonical(Q)
    if not any(v.frozen for v in Q.vertices):
        assert sum(chi.coords) == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_torus_sst_matches_hm_grid(support, theta):
    s = BlockShape.of(("a", 1), ("b", 1))
    sup = [Weight(s, w) for w in support]
    th = Weight(s, theta)
    # a destabilizing 1-PS exists iff theta is outside the cone; a small grid suffices in rank 2
    bad = any(hm_value(sup, OnePS(s, lam)) >= 0 and sum(a * b for a, b in zip(theta, lam)) < 0
              for lam in product(range(-6, 7), repeat=2))
    assert torus_sst(sup, th) == (not bad)
