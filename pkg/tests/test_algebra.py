from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compact_trace.algebra import (
    HeckePoint,
    InhomogeneousError,
    LaurentScalar,
    LeviPoly,
    ModeError,
    QAlphaPoly,
    eval_point,
    homogeneous_degree,
    normal_key,
    poly_mul,
    to_json,
)
from compact_trace.composition import Composition
from compact_trace.hecke import kottwitz_function

from .strategies import compositions, levi_polys, scalars

R2 = Composition.trivial(2)


def x(*exps, comp=R2, alpha_scaled=True):
    return LeviPoly.from_expanded(
        comp, {tuple(e): LaurentScalar.constant(1, alpha_scaled) for e in exps}, alpha_scaled
    )


# -- LaurentScalar ----------------------------------------------------------


def test_scalar_drops_zero_coefficients():
    s = LaurentScalar({0: 0, 2: 3, -1: 0})
    assert s.terms == {2: 3}
    assert LaurentScalar({1: 0}).is_zero()


def test_scalar_mode_mixing_is_an_error():
    with pytest.raises(ModeError):
        LaurentScalar.monomial(1) + LaurentScalar.monomial(1, alpha_scaled=False)
    with pytest.raises(ModeError):
        LaurentScalar.monomial(1) * LaurentScalar.monomial(1, alpha_scaled=False)


def test_scalar_int_arithmetic():
    s = LaurentScalar.monomial(2)
    assert (s + 1).terms == {0: 1, 2: 1}
    assert (1 - s).terms == {0: 1, 2: -1}
    assert (3 * s).terms == {2: 3}
    assert s**3 == LaurentScalar.monomial(6)
    assert s.shift(-2) == 1


def test_evaluate_half_integral_needs_square():
    half = LaurentScalar.monomial(1, alpha_scaled=False)
    assert half.evaluate(4) == 2
    with pytest.raises(ValueError):
        half.evaluate(2)
    assert LaurentScalar.monomial(1).evaluate(2, alpha=2) == 2
    with pytest.raises(ModeError):
        LaurentScalar.monomial(1).evaluate(2)


def test_specialize():
    s = LaurentScalar({0: 1, 2: 1})
    assert s.specialize(3) == LaurentScalar({0: 1, 6: 1}, alpha_scaled=False)
    with pytest.raises(ModeError):
        s.specialize(3).specialize(2)


@pytest.mark.parametrize(
    "terms, text",
    [
        ({0: 1, 2: 1}, "1 + q^α"),
        ({4: 1}, "q^(2α)"),
        ({1: 1}, "q^(α/2)"),
        ({-1: 2}, "2q^(-α/2)"),
        ({0: 1, 2: -1}, "1 - q^α"),
        ({}, "0"),
    ],
)
def test_plain_rendering(terms, text):
    assert LaurentScalar(terms).to_plain() == text


def test_latex_rendering():
    assert LaurentScalar({0: 1, 2: 1}).to_latex() == r"1 + q^{\alpha}"
    assert LaurentScalar({-3: 1}).to_latex() == r"q^{-\frac{3\alpha}{2}}"
    assert LaurentScalar({4: 2}, alpha_scaled=False).to_latex() == "2 q^{2}"


def test_scalar_json_roundtrip():
    s = LaurentScalar({-3: 2, 4: -10**30})
    assert LaurentScalar.from_json_obj(s.to_json_obj()) == s


def test_qalpha_coefficients():
    p = QAlphaPoly.from_coefficients([1, 0, 2])
    assert p.coefficients() == [1, 0, 2]
    assert p.degree_in_q_alpha() == 2
    assert not QAlphaPoly({1: 1}).is_polynomial_in_q_alpha()
    with pytest.raises(ValueError):
        QAlphaPoly({-2: 1}).coefficients()


@given(scalars(), scalars(), scalars())
def test_scalar_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a


@given(scalars(), scalars(), st.integers(1, 5))
def test_evaluate_is_a_homomorphism(a, b, alpha):
    q = 4  # perfect square, so odd half-steps evaluate exactly
    assert (a * b).evaluate(q, alpha) == a.evaluate(q, alpha) * b.evaluate(q, alpha)
    assert (a + b).evaluate(q, alpha) == a.evaluate(q, alpha) + b.evaluate(q, alpha)


# -- LeviPoly ---------------------------------------------------------------


def test_binomial_square():
    s = x((1, 0), (0, 1))
    expected = LeviPoly.from_expanded(
        R2,
        {(2, 0): LaurentScalar.constant(1), (1, 1): LaurentScalar.constant(2), (0, 2): LaurentScalar.constant(1)},
    )
    assert poly_mul(s, s) == expected


def test_unit_is_identity():
    f = kottwitz_function(3, 2).satake
    assert poly_mul(f, LeviPoly.unit(f.composition)) == f


def test_kottwitz_square_rank_two():
    f = kottwitz_function(2, 1).satake
    q = LaurentScalar.monomial(2)  # q^alpha
    expected = LeviPoly(
        R2, {((2, 0),): q, ((1, 1),): 2 * q}
    )
    assert f * f == expected


def test_from_expanded_rejects_asymmetric():
    with pytest.raises(ValueError):
        LeviPoly.from_expanded(R2, {(1, 0): LaurentScalar.constant(1)})
    with pytest.raises(ValueError):
        LeviPoly.from_expanded(
            R2, {(1, 0): LaurentScalar.constant(1), (0, 1): LaurentScalar.constant(2)}
        )


def test_key_validation():
    with pytest.raises(ValueError):
        LeviPoly(R2, {((0, 1),): 1})
    with pytest.raises(ValueError):
        LeviPoly(R2, {((1,),): 1})


def test_poly_mul_mismatches():
    a = LeviPoly.unit(R2)
    with pytest.raises(ValueError):
        poly_mul(a, LeviPoly.unit(Composition.borel(2)))
    with pytest.raises(ModeError):
        poly_mul(a, LeviPoly.unit(R2, alpha_scaled=False))


def test_levi_json_roundtrip():
    f = kottwitz_function(4, 2).satake.regroup(Composition.of(2, 2))
    assert LeviPoly.from_json_obj(f.to_json_obj()) == f
    assert to_json(f) == to_json(LeviPoly.from_json_obj(f.to_json_obj()))


@settings(max_examples=60)
@given(st.data())
def test_levi_ring_axioms(data):
    comp = data.draw(compositions(max_n=3))
    a, b, c = (data.draw(levi_polys(comp)) for _ in range(3))
    assert a + b == b + a
    assert poly_mul(a, b) == poly_mul(b, a)
    assert poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c))
    assert poly_mul(a, b + c) == poly_mul(a, b) + poly_mul(a, c)


@settings(max_examples=60)
@given(st.data())
def test_normalization_idempotent(data):
    comp = data.draw(compositions(max_n=4))
    p = data.draw(levi_polys(comp))
    expanded = p.expanded()
    assert LeviPoly.from_expanded(comp, expanded) == p
    assert LeviPoly.from_expanded(comp, p.expanded()).expanded() == expanded
    for exps in expanded:
        key = normal_key(comp, exps)
        assert key in p.terms
        assert normal_key(comp, [e for block in key for e in block]) == key


@settings(max_examples=60)
@given(st.data())
def test_regroup_preserves_expansion(data):
    comp = data.draw(compositions(max_n=4))
    p = data.draw(levi_polys(Composition.trivial(comp.n)))
    assert p.regroup(comp).expanded() == p.expanded()
    assert p.regroup(comp).regroup(Composition.borel(comp.n)) == p.regroup(Composition.borel(comp.n))


@st.composite
def points(draw, comp):
    return HeckePoint(Composition.borel(comp.n), tuple(draw(st.integers(-4, 4)) for _ in range(comp.n)))


@settings(max_examples=60)
@given(st.data())
def test_eval_point_is_a_ring_homomorphism(data):
    comp = data.draw(compositions(max_n=3))
    a, b = data.draw(levi_polys(comp)), data.draw(levi_polys(comp))
    pt = data.draw(points(comp))
    assert eval_point(poly_mul(a, b), pt) == eval_point(a, pt) * eval_point(b, pt)
    assert eval_point(a + b, pt) == eval_point(a, pt) + eval_point(b, pt)


# -- evaluation and degree --------------------------------------------------


def test_eval_single_monomial():
    pt = HeckePoint.from_exponents(Composition.borel(2), [Fraction(-1, 2), Fraction(1, 2)])
    x1 = LeviPoly(Composition.borel(2), {((1,), (0,)): 1})
    assert eval_point(x1, pt) == QAlphaPoly({-1: 1})


def test_eval_kottwitz_rank_two_at_trivial_point():
    pt = HeckePoint.from_exponents(Composition.borel(2), [Fraction(-1, 2), Fraction(1, 2)])
    assert eval_point(kottwitz_function(2, 1).satake, pt) == QAlphaPoly({0: 1, 2: 1})


def test_eval_constant():
    pt = HeckePoint(Composition.borel(3), (3, -1, 5))
    assert eval_point(LeviPoly.unit(Composition.trivial(3)).scale(7), pt) == 7


def test_eval_requires_refinement():
    p = LeviPoly.unit(Composition.borel(2))
    with pytest.raises(ValueError):
        eval_point(p, HeckePoint(R2, (1, -1)))
    with pytest.raises(ValueError):
        HeckePoint.from_exponents(R2, [Fraction(1, 3), 0])


@pytest.mark.parametrize("n", range(1, 9))
def test_homogeneous_degree_of_kottwitz(n):
    for s in range(1, n + 1):
        assert homogeneous_degree(kottwitz_function(n, s).satake) == s
        assert homogeneous_degree(kottwitz_function(n, s, 3).satake) == 3 * s


def test_homogeneous_degree_examples():
    p = x((1, 1)) + x((2, 0), (0, 2))
    assert homogeneous_degree(p) == 2
    with pytest.raises(InhomogeneousError) as info:
        homogeneous_degree(x((1, 0), (0, 1)) + x((1, 1)))
    assert len(info.value.witnesses) == 2
    with pytest.raises(ValueError):
        homogeneous_degree(LeviPoly.zero(R2))


def test_canonical_json_is_compact_and_sorted():
    assert to_json({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
