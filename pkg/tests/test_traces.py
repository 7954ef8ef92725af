from math import gcd

import pytest

from compact_trace.algebra import LaurentScalar, LeviPoly, QAlphaPoly, eval_point
from compact_trace.composition import Composition, enumerate_compositions, eps_parabolic
from compact_trace.hecke import SphericalFunction, kottwitz_function
from compact_trace.traces import (
    compact_trace_steinberg,
    compact_trace_trivial,
    cttrivial_check,
    intro_monomial_family,
    parabolic_terms,
    steinberg_point,
    trivial_twist_point,
    truncated_borel_term,
)


def geometric(m):
    return QAlphaPoly.from_coefficients([1] * m)


def test_points():
    assert steinberg_point(3).twice == (-2, 0, 2)
    assert trivial_twist_point(Composition.trivial(3)).twice == (2, 0, -2)
    for n in range(1, 7):
        assert -trivial_twist_point(Composition.borel(n)) == steinberg_point(n)


def test_twist_point_for_two_blocks():
    # blocks (1, 2): r = (2, -1)
    assert trivial_twist_point(Composition.of(1, 2)).twice == (2, 0, -2)
    assert trivial_twist_point(Composition.of(2, 1)).twice == (2, 0, -2)


def test_steinberg_examples():
    assert compact_trace_steinberg(kottwitz_function(2, 1)) == -1
    assert compact_trace_steinberg(kottwitz_function(3, 2)) == 1


def test_steinberg_trace_of_unit():
    # the unit is 1_K; St has no K-fixed vector once n >= 2, and the
    # all-zero Borel monomial sits on the boundary of the open obtuse chamber
    assert compact_trace_steinberg(kottwitz_function(1, 0)) == 1
    for n in range(2, 7):
        assert compact_trace_steinberg(kottwitz_function(n, 0)) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_trivial_trace_s_one(n):
    assert compact_trace_trivial(kottwitz_function(n, 1)) == 1


@pytest.mark.parametrize("n", range(2, 9))
def test_trivial_trace_s_two(n):
    assert compact_trace_trivial(kottwitz_function(n, 2)) == geometric(n // 2)


def test_rank_two_parabolic_terms():
    terms = dict(parabolic_terms(kottwitz_function(2, 1)))
    assert terms[Composition.trivial(2)] == QAlphaPoly({0: 1, 2: 1})
    assert terms[Composition.borel(2)] == QAlphaPoly({2: -1})


def test_unit_function_trivial_trace():
    for n in range(1, 6):
        assert compact_trace_trivial(SphericalFunction.unit(n)) == 1


def test_cttrivial_examples():
    lhs, rhs, equal = cttrivial_check(kottwitz_function(3, 2))
    assert lhs == rhs == 1 and equal
    lhs, rhs, equal = cttrivial_check(kottwitz_function(2, 1))
    assert lhs == 1 and equal
    assert cttrivial_check(kottwitz_function(5, 2)).lhs == QAlphaPoly({0: 1, 2: 1})
    with pytest.raises(ValueError):
        cttrivial_check(kottwitz_function(4, 2))


@pytest.mark.parametrize("n", range(1, 9))
def test_cttrivial_holds_when_coprime(n):
    for s in range(1, n + 1):
        if gcd(n, s) == 1:
            assert cttrivial_check(kottwitz_function(n, s)).equal


@pytest.mark.parametrize("n", range(1, 9))
def test_trivial_trace_coefficients_nonnegative_when_coprime(n):
    for s in range(1, n + 1):
        if gcd(n, s) == 1:
            t = compact_trace_trivial(kottwitz_function(n, s))
            assert t.is_polynomial_in_q_alpha()
            assert all(c >= 0 for c in t.coefficients())


def test_top_degree_without_coprimality():
    # f_{n,n}: no obtuse Borel monomial survives, but the whole group term does
    assert compact_trace_steinberg(kottwitz_function(4, 4)) == 0
    assert compact_trace_trivial(kottwitz_function(4, 4)) == 1


def test_intro_family_examples():
    b3 = Composition.borel(3)
    assert intro_monomial_family(3, 2) == LeviPoly(b3, {((1,), (1,), (0,)): LaurentScalar.monomial(2)})
    for n in range(1, 6):
        fam = intro_monomial_family(n, 1)
        key = ((1,),) + ((0,),) * (n - 1)
        assert fam == LeviPoly(Composition.borel(n), {key: LaurentScalar.monomial(n - 1)})
    fam = intro_monomial_family(5, 2)
    q3 = LaurentScalar.monomial(6)
    assert fam == LeviPoly(
        Composition.borel(5),
        {((1,), (1,), (0,), (0,), (0,)): q3, ((1,), (0,), (1,), (0,), (0,)): q3},
    )


@pytest.mark.parametrize("n", range(1, 9))
def test_intro_family_is_obtuse_borel_term(n):
    for s in range(1, n + 1):
        f = kottwitz_function(n, s)
        fam = intro_monomial_family(n, s)
        assert fam == truncated_borel_term(f)
        eps = eps_parabolic(Composition.borel(n))
        assert eval_point(fam, steinberg_point(n)) == compact_trace_steinberg(f) * eps


def test_intro_family_range():
    with pytest.raises(ValueError):
        intro_monomial_family(3, 0)
    with pytest.raises(ValueError):
        intro_monomial_family(3, 4)


def test_numeric_trace_matches_specialized_symbolic():
    for n, s in [(5, 2), (7, 2), (5, 3)]:
        sym = compact_trace_trivial(kottwitz_function(n, s))
        for a in (1, 2, 3):
            assert compact_trace_trivial(kottwitz_function(n, s, a)) == sym.specialize(a)


def test_parabolic_sum_covers_every_composition():
    terms = parabolic_terms(kottwitz_function(4, 1))
    assert [c for c, _ in terms] == enumerate_compositions(4)
