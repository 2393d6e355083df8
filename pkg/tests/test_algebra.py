import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planejac.algebra import (GF, QQ, Monomial, PolyRing, Scalar, compare_monomials,
                              dehomogenize, grlex, homogenize, lex, normal_form, parse_field,
                              parse_order, poly_arith, weighted)
from planejac.errors import AlgebraError, ParseError
from planejac.groebner import Ideal


def test_prime_field_arithmetic():
    K = GF(17)
    assert K.add(13, 9) == 5
    assert K.div(1, 2) == 9
    assert K.mul(2, 9) == 1
    assert (Scalar.of(K, 13) + Scalar.of(K, 9)) == Scalar.of(K, 5)
    assert K.sqrt(16) in (4, 13)
    assert K.sqrt(3) is None


def test_rational_field_arithmetic():
    assert QQ.add(QQ("1/3"), QQ("1/6")) == QQ("1/2")
    assert QQ.format(QQ("-4/6")) == "-2/3"


def test_field_errors():
    with pytest.raises(AlgebraError):
        GF(15)
    with pytest.raises(ZeroDivisionError):
        GF(7).inv(0)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(QQ(0))


def test_parse_field():
    assert parse_field("Q") == QQ
    assert parse_field("GF(17)") == GF(17)


def test_compare_monomials_weighted():
    hyper = weighted({"x": 7, "y": 2}, "y", "x")
    assert compare_monomials(Monomial(x=1), Monomial(y=3), hyper) == 1
    picard = weighted({"x": 4, "y": 3}, "y", "x")
    assert compare_monomials(Monomial(y=2), Monomial(x=1), picard) == 1
    for order in (lex("x", "y"), grlex("x", "y"), hyper):
        assert compare_monomials(Monomial(), Monomial(x=1), order) == -1


def test_weighted_ties_prefer_y():
    order = weighted({"x": 2, "y": 2}, "y", "x")
    assert compare_monomials(Monomial(y=1), Monomial(x=1), order) == 1


def test_lex_and_grlex_differ():
    a, b = Monomial(x=1), Monomial(y=3)
    assert compare_monomials(a, b, lex("x", "y")) == 1
    assert compare_monomials(a, b, grlex("x", "y")) == -1


def test_parse_order():
    assert str(parse_order("lex")) == "lex"
    assert str(parse_order("weighted:2,7")) == "weighted:2,7"
    with pytest.raises(ParseError):
        parse_order("weighted:a")


exps = st.tuples(st.integers(0, 6), st.integers(0, 6))


@pytest.mark.parametrize("order", [lex("x", "y"), grlex("x", "y"),
                                   weighted({"x": 2, "y": 7}, "y", "x"),
                                   weighted({"x": 3, "y": 4}, "y", "x")])
@settings(max_examples=60, deadline=None)
@given(a=exps, b=exps, c=exps)
def test_orders_are_monomial_orders(order, a, b, c):
    ma, mb, mc = (Monomial(x=e[0], y=e[1]) for e in (a, b, c))
    ab = compare_monomials(ma, mb, order)
    assert ab == -compare_monomials(mb, ma, order)
    assert (ab == 0) == (a == b)
    assert compare_monomials(ma * mc, mb * mc, order) == ab
    assert compare_monomials(Monomial(), ma, order) <= 0


def test_poly_arith():
    R = PolyRing(QQ, "xy")
    f = R.parse("x + y")
    assert poly_arith(f, R.parse("x - y"), "mul") == R.parse("x^2 - y^2")
    assert poly_arith(f, R.zero(), "add") == f
    assert R.parse("y + 1") ** 6 == R.parse("1 + 6*y + 15*y^2 + 20*y^3 + 15*y^4 + 6*y^5 + y^6")


def test_parse_errors():
    R = PolyRing(QQ, "xy")
    for bad in ("x^", "w + 1", "(x + y", "1/0"):
        with pytest.raises(ParseError):
            R.parse(bad)


def test_normal_form_examples():
    R = PolyRing(QQ, "xy")
    L = lex("x", "y")
    F = R.parse("x^4 + y^4 - 2")
    assert normal_form(R.parse("x^2"), [R.parse("x")], L).is_zero()
    assert normal_form(R.parse("y^4"), [F], L) == R.parse("y^4")
    assert normal_form(R.parse("x^4"), [F], L) == R.parse("2 - y^4")


def test_homogenize_round_trip():
    R2 = PolyRing(QQ, "xy")
    R3 = PolyRing(QQ, "xyz")
    assert homogenize(R2.parse("x^2 + y"), "z") == R3.parse("x^2 + y*z")
    assert dehomogenize(R3.parse("x^4 + y^4 - 2*z^4"), "z") == R2.parse("x^4 + y^4 - 2")
    f = R3.parse("y - x")
    assert homogenize(dehomogenize(f, "x"), "x") == f
    assert homogenize(R2.parse("x + 1"), "z", 3) == R3.parse("x*z^2 + z^3")


polys = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(-5, 5)),
                 max_size=6)


def _poly(R, terms):
    return sum((R.monomial((i, j), c) for i, j, c in terms), R.zero())


@settings(max_examples=80, deadline=None)
@given(a=polys, b=polys, c=polys)
def test_ring_axioms_mod_p(a, b, c):
    R = PolyRing(GF(13), "xy")
    f, g, h = (_poly(R, t) for t in (a, b, c))
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == R.zero()


@settings(max_examples=40, deadline=None)
@given(a=polys, b=polys)
def test_normal_form_absorbs_multiples(a, b):
    R = PolyRing(GF(13), "xy")
    basis = [R.parse("x^2 - y"), R.parse("x*y - 1")]
    gb = Ideal(basis, R).groebner_basis(grlex("x", "y"))
    f = _poly(R, a) * basis[0] + _poly(R, b) * basis[1]
    assert normal_form(f, gb, grlex("x", "y")).is_zero()
    assert normal_form(f * _poly(R, b), gb, grlex("x", "y")).is_zero()
