from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compact_trace.algebra import LaurentScalar, LeviPoly
from compact_trace.chambers import (
    ChamberKind,
    Composition,
    ExtendedComposition,
    chamber_filter,
    enumerate_compositions,
    enumerate_extended,
    eps_parabolic,
    in_chamber,
)
from compact_trace.hecke import constant_term, kottwitz_function

from .strategies import compositions, levi_polys


def test_compositions_of_three():
    assert [c.parts for c in enumerate_compositions(3)] == [(3,), (1, 2), (2, 1), (1, 1, 1)]


@pytest.mark.parametrize("n", range(1, 9))
def test_composition_count(n):
    comps = enumerate_compositions(n)
    assert len(comps) == 2 ** (n - 1)
    assert len(set(comps)) == len(comps)
    assert all(c.n == n for c in comps)


def test_extended_compositions():
    assert [e.parts for e in enumerate_extended(2, 2)] == [(2, 0), (1, 1), (0, 2)]
    assert [e.parts for e in enumerate_extended(2, 2, caps=(1, 1))] == [(1, 1)]
    assert enumerate_extended(3, 2, caps=(1, 1)) == []


@given(st.integers(0, 6), st.integers(1, 4))
def test_extended_count_is_stars_and_bars(s, k):
    from math import comb

    out = enumerate_extended(s, k)
    assert len(out) == comb(s + k - 1, k - 1)
    assert all(e.total == s for e in out)


def test_composition_validation():
    with pytest.raises(ValueError):
        Composition(())
    with pytest.raises(ValueError):
        Composition((2, 0))
    with pytest.raises(ValueError):
        ExtendedComposition((1, -1))


def test_refinement():
    assert Composition.borel(4).refines(Composition.of(2, 2))
    assert Composition.of(2, 2).refines(Composition.trivial(4))
    assert not Composition.of(1, 3).refines(Composition.of(2, 2))


@pytest.mark.parametrize(
    "parts, sign",
    [((5,), 1), ((2, 3), -1), ((1, 1, 1), 1), ((1,) * 4, -1)],
)
def test_eps_parabolic(parts, sign):
    assert eps_parabolic(Composition(parts)) == sign


def test_obtuse_and_acute_on_rank_two_borel():
    ct = constant_term(kottwitz_function(2, 1), Composition.borel(2))
    half = LaurentScalar.monomial(1)
    keep = LeviPoly(Composition.borel(2), {((1,), (0,)): half})
    assert chamber_filter(ct, "obtuse") == keep
    assert chamber_filter(ct, "acute") == keep


def test_equal_ratio_on_two_two_blocks():
    comp = Composition.of(2, 2)
    assert in_chamber((1, 1), comp, "equal_ratio")
    assert not in_chamber((2, 0), comp, "equal_ratio")
    ct = constant_term(kottwitz_function(4, 2), comp)
    kept = chamber_filter(ct, ChamberKind.EQUAL_RATIO)
    assert [kept.block_degrees(k) for k in kept.terms] == [(1, 1)]


def test_boundaries_are_open():
    comp = Composition.of(1, 2)
    assert not in_chamber((1, 2), comp, "acute")
    assert not in_chamber((1, 2), comp, "obtuse")
    assert in_chamber((1, 2), comp, "equal_ratio")


def test_trivial_composition_is_in_every_chamber():
    for kind in ChamberKind:
        assert in_chamber((7,), Composition.trivial(3), kind)


def test_obtuse_uses_partial_sums_not_ratios():
    comp = Composition.of(1, 1, 1)
    # partial sums of (2, -1, 2) against the average line: 2 > 1 but 1 < 2
    assert not in_chamber((2, -1, 2), comp, "obtuse")
    assert in_chamber((3, 0, 0), comp, "obtuse")
    assert in_chamber((2, 1, 0), comp, "obtuse")
    assert not in_chamber((2, 2, -1), comp, "acute")
    assert in_chamber((2, 2, -1), comp, "obtuse")


def test_in_chamber_length_mismatch():
    with pytest.raises(ValueError):
        in_chamber((1, 2), Composition.trivial(3), "acute")
    with pytest.raises(ValueError):
        in_chamber((1,), Composition.trivial(1), "sideways")


def _ratios(degrees, parts):
    return [Fraction(d, m) for d, m in zip(degrees, parts)]


@given(compositions(max_n=6), st.data())
def test_acute_matches_ratio_definition(comp, data):
    v = data.draw(st.lists(st.integers(-6, 6), min_size=comp.k, max_size=comp.k))
    r = _ratios(v, comp.parts)
    assert in_chamber(v, comp, "acute") == all(a > b for a, b in zip(r, r[1:]))
    assert in_chamber(v, comp, "equal_ratio") == (len(set(r)) == 1)


@settings(max_examples=50)
@given(st.data())
def test_filters_are_linear_and_idempotent(data):
    comp = data.draw(compositions(max_n=4))
    a, b = data.draw(levi_polys(comp)), data.draw(levi_polys(comp))
    for kind in ChamberKind:
        fa = chamber_filter(a, kind)
        assert chamber_filter(fa, kind) == fa
        assert chamber_filter(a + b, kind) == fa + chamber_filter(b, kind)


@settings(max_examples=50)
@given(st.data())
def test_filter_keeps_a_subset_of_terms(data):
    comp = data.draw(compositions(max_n=4))
    a = data.draw(levi_polys(comp))
    for kind in ChamberKind:
        kept = chamber_filter(a, kind).terms
        assert all(a.terms[k] == c for k, c in kept.items())
