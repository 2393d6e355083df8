import random

import pytest
import sympy

from planejac.algebra import GF, QQ, PolyRing, grlex, homogenize, lex
from planejac.errors import AlgebraError
from planejac.groebner import (Ideal, graded_piece, groebner_basis, homogenize_ideal,
                               ideal_intersection, ideal_product, ideal_quotient, ideal_sum,
                               membership, quotient_dimension)

R = PolyRing(QQ, "xy")
R3 = PolyRing(QQ, "xyz")
L = lex("x", "y")
CURVE = R.parse("x^4 + y^4 - 2")


def P(text, ring=R):
    return ring.parse(text)


def test_trivial_bases():
    assert groebner_basis(Ideal([P("x")], R), L) == [P("x")]
    assert Ideal([P("x"), P("1")], R).is_unit()
    assert Ideal([], R).is_zero()


def test_sixfold_point_on_quartic():
    m = Ideal([P("x - 1"), P("y + 1")], R)
    I = Ideal.unit(R)
    for _ in range(6):
        I = I * m
    I = I.plus(CURVE)
    expected = [P("y^6 + 6*y^5 + 15*y^4 + 20*y^3 + 15*y^2 + 6*y + 1"),
                P("x - 126*y^5 - 598*y^4 - 1141*y^3 - 1092*y^2 - 524*y - 102")]
    assert I.groebner_basis(L) == sorted(expected, key=lambda g: g.leading_exponent(L))
    assert quotient_dimension(I) == 6


def test_threefold_point_on_quartic():
    m = Ideal([P("x - 1"), P("y - 1")], R)
    I3 = (m * m * m).plus(CURVE)
    target = Ideal([P("-1 + 3*y - 3*y^2 + y^3"), P("-1 - x + 5*y - 3*y^2")], R)
    assert I3.groebner_basis(L) == target.groebner_basis(L)


def test_membership_and_sum_product():
    x, y = P("x"), P("y")
    assert membership(x, Ideal([x, y], R))
    assert membership(CURVE, Ideal([CURVE], R))
    assert not membership(P("1"), Ideal([x, y], R))
    assert ideal_product(Ideal([x], R), Ideal([y], R)) == Ideal([x * y], R)
    I = Ideal([x * x, y], R)
    assert ideal_product(I, Ideal.unit(R)) == I
    assert ideal_sum(Ideal([x], R), Ideal([y], R)) == Ideal([x, y], R)


def test_intersection_and_quotient_basics():
    x, y = P("x"), P("y")
    assert ideal_intersection(Ideal([x], R), Ideal([y], R)) == Ideal([x * y], R)
    I = Ideal([x * x, x * y, y ** 3], R)
    assert ideal_intersection(I, I) == I
    assert ideal_quotient(Ideal([x * y], R), Ideal([x], R)) == Ideal([y], R)


def test_intersection_of_points_is_product_on_curve():
    # two distinct points on x^4 + y^4 = 2
    P1 = Ideal([P("x - 1"), P("y - 1")], R).plus(CURVE)
    P2 = Ideal([P("x + 1"), P("y - 1")], R).plus(CURVE)
    assert ideal_intersection(P1, P2) == (P1 * P2).plus(CURVE)


def test_quotient_methods_agree():
    rng = random.Random(4)
    K = GF(101)
    S = PolyRing(K, "xy")
    F = S.parse("x^4 + y^4 - 2")
    pts = [(a, b) for a in range(101) for b in range(101)
           if F.evaluate({"x": a, "y": b}) == 0]
    for _ in range(5):
        sample = rng.sample(pts, 5)
        I = Ideal.unit(S)
        for a, b in sample:
            I = I * Ideal([S.gen("x") - S.const(a), S.gen("y") - S.const(b)], S)
        I = I.plus(F)
        J = Ideal([S.gen("x") - S.const(sample[0][0]), S.gen("y") - S.const(sample[0][1])], S)
        fast = ideal_quotient(I, J, method="linear")
        slow = ideal_quotient(I, J, method="elimination")
        assert fast == slow
        assert fast.quotient_dimension() == 4
    with pytest.raises(AlgebraError):
        ideal_quotient(Ideal([S.gen("x")], S), Ideal([S.gen("y")], S), method="linear")


def test_quotient_dimension_examples():
    m = Ideal([P("x - 2"), P("y - 3")], R)
    assert Ideal([P("x"), P("y")], R).quotient_dimension() == 1
    assert (m * m).quotient_dimension() == 3
    assert Ideal([P("x")], R).quotient_dimension() == float("inf")


def test_graded_piece():
    x, y = R3.gen("x"), R3.gen("y")
    assert graded_piece(Ideal([x, y], R3), 1) == [x, y]
    assert graded_piece(Ideal([x * x], R3), 1) == []
    assert len(graded_piece(Ideal([x], R3), 2)) == 3
    with pytest.raises(AlgebraError):
        graded_piece(Ideal([x + 1], R3), 1)


def test_graded_piece_contains_cubic_through_divisor():
    m6 = Ideal([P("x - 1"), P("y + 1")], R)
    m3 = Ideal([P("x - 1"), P("y - 1")], R)
    A = Ideal.unit(R)
    for _ in range(6):
        A = A * m6
    for _ in range(3):
        A = A * m3
    A = A.plus(CURVE)
    f = P("2612 - 3078*x + 378*x^2 + 281*x^3 + 478*y - 1912*x*y + 1195*x^2*y - 1286*y^2"
          " + 1093*x*y^2 + 239*y^3")
    assert membership(f, A)
    H = homogenize_ideal(A, "z")
    cubics = graded_piece(H, 3)
    assert len(cubics) == 1
    fh = homogenize(f, "z", 3).change_ring(H.ring)
    assert Ideal(cubics, H.ring).contains(fh)


def test_groebner_idempotent():
    I = Ideal([P("x^3 - 2*x*y"), P("x^2*y + x - 2*y^2")], R)
    for order in (L, grlex("x", "y")):
        gb = I.groebner_basis(order)
        assert Ideal(gb, R).groebner_basis(order) == gb


def _to_sympy(f, syms):
    expr = 0
    for e, c in f.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return expr


@pytest.mark.parametrize("seed", range(8))
def test_against_sympy(seed):
    rng = random.Random(seed)
    S = PolyRing(QQ, "xyz")
    sx, sy, sz = sympy.symbols("x y z")
    gens = []
    for _ in range(3):
        terms = [(rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 1), rng.randint(-3, 3))
                 for _ in range(3)]
        gens.append(sum((S.monomial((a, b, c), k) for a, b, c, k in terms), S.zero()))
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    for ours, theirs in ((lex("x", "y", "z"), "lex"), (grlex("x", "y", "z"), "grlex")):
        gb = Ideal(gens, S).groebner_basis(ours)
        ref = sympy.groebner([_to_sympy(g, (sx, sy, sz)) for g in gens], sx, sy, sz,
                             order=theirs)
        def monic(p):
            return sympy.expand(p / sympy.LC(p, sx, sy, sz, order=theirs))
        mine = {monic(_to_sympy(g, (sx, sy, sz))) for g in gb}
        assert mine == {monic(p) for p in ref.exprs}
