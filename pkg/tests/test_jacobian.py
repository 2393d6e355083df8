import random

import pytest

from planejac.curve import validate_curve
from planejac.divisor_ideal import (DivisorSpec, HomogeneousDivisorIdeal, empty_divisor,
                                    ideal_of_divisor, odot, point_divisor)
from planejac.errors import ValidationError
from planejac.groebner import Ideal
from planejac.jacobian import (add, equal, identity, neg, reduce, scalar_mul,
                               verify_reduced)


def multiple(curve, pt, k):
    return ideal_of_divisor(curve, DivisorSpec([(pt, k, None)]))


@pytest.fixture(scope="module")
def fermat_class(fermat):
    """Reduction of 6 P1 - 6 P0 with P1 = (1, -1, 1)."""
    return reduce(fermat, multiple(fermat, (1, -1, 1), 6), multiple(fermat, (1, 1, 1), 6))


def test_zero_divisor_is_identity(fermat, nodal):
    for C in (fermat, nodal):
        E = reduce(C, empty_divisor(C), empty_divisor(C))
        assert E.t == 0 and E.is_identity()
        assert equal(E, identity(C))


def test_multiples_of_base_point_vanish(fermat):
    E = reduce(fermat, multiple(fermat, (1, 1, 1), 4), empty_divisor(fermat))
    assert E.t == 0


def test_fermat_reduction(fermat, fermat_class):
    E = fermat_class
    assert (E.t, E.alpha) == (3, 0)
    Rz = fermat.ring_z
    expected = Ideal([Rz.parse("94544281343 + 377260313207*y + 408415639297*y^2"
                               " + 134215744153*y^3"),
                      Rz.parse("-53515118937 + 13173978910*x - 225487128300*y"
                               " - 134215744153*y^2")], Rz)
    assert E.ideal.Iz == expected
    assert verify_reduced(fermat, E.ideal, 3)


def test_second_interpolation_form(fermat, fermat_class):
    # the reference cubic g with its trailing terms x^2 y, y^2 z, x y^2, y^3 restored
    R = fermat.ring
    g = R.parse("683086*z^3 - 414993*x*z^2 - 636078*x^2*z + 356233*x^3 - 259643*y*z^2"
                " + 677678*x*y*z - 66326*x^2*y - 735502*y^2*z + 70382*x*y^2 + 325163*y^3")
    assert Ideal([fermat_class.trace.G_prime], R) == Ideal([g], R)
    assert fermat_class.trace.B.contains(g)


def test_routes_agree(fermat, fermat_class):
    E1 = reduce(fermat, point_divisor(fermat, (1, -1, 1)), empty_divisor(fermat))
    assert E1.t == 1
    assert equal(scalar_mul(6, E1), fermat_class)
    E3 = reduce(fermat, multiple(fermat, (1, -1, 1), 3), empty_divisor(fermat))
    assert equal(add(E3, E3), fermat_class)


def test_identity_laws(fermat, fermat_class):
    O = identity(fermat)
    assert equal(add(fermat_class, O), fermat_class)
    assert equal(add(O, fermat_class), fermat_class)
    assert neg(O).t == 0
    assert scalar_mul(0, fermat_class).t == 0
    assert add(fermat_class, neg(fermat_class)).t == 0


def test_operators(quartic31):
    C, pts = quartic31
    E = reduce(C, point_divisor(C, pts[1], pts[2]), empty_divisor(C))
    assert E + E == 2 * E
    assert E - E == identity(C)
    assert -(-E) == E
    assert (-1) * E == -E
    assert 3 * E == E + E + E


def test_addition_matches_direct_reduction(quartic31):
    C, pts = quartic31
    rng = random.Random(8)
    for _ in range(5):
        P, Q = rng.sample(pts[1:], 2)
        EP = reduce(C, point_divisor(C, P), empty_divisor(C))
        EQ = reduce(C, point_divisor(C, Q), empty_divisor(C))
        direct = reduce(C, point_divisor(C, P, Q), empty_divisor(C))
        assert equal(add(EP, EQ), direct)


def test_negation_involutive(quartic31):
    C, pts = quartic31
    rng = random.Random(9)
    for _ in range(4):
        E = reduce(C, point_divisor(C, *rng.sample(pts[1:], 3)), empty_divisor(C))
        assert equal(neg(neg(E)), E)


def test_principal_divisors_vanish(quartic31):
    C, pts = quartic31
    R = C.ring
    rng = random.Random(10)
    D = point_divisor(C, *rng.sample(pts[1:], 2))
    E = reduce(C, D, empty_divisor(C))
    for _ in range(3):
        G, H = (sum((R.monomial(e, rng.randrange(31)) for e in R.exponent_tuples(2)), R.zero())
                for _ in range(2))
        IG = HomogeneousDivisorIdeal.from_homogeneous(C, Ideal([G, C.F], R))
        IH = HomogeneousDivisorIdeal.from_homogeneous(C, Ideal([H, C.F], R))
        assert equal(reduce(C, odot(D, IG), IH), E)


def test_single_point_is_not_principal(quartic31):
    C, pts = quartic31
    E = reduce(C, point_divisor(C, pts[3]), empty_divisor(C))
    assert E.t == 1
    assert not equal(E, identity(C))


def test_idempotence(quartic31):
    C, pts = quartic31
    rng = random.Random(11)
    for _ in range(4):
        E = reduce(C, point_divisor(C, *rng.sample(pts[1:], 4)),
                   point_divisor(C, rng.choice(pts[1:])))
        again = reduce(C, E.ideal, empty_divisor(C))
        assert again.t == E.t and again.ideal == E.ideal


def test_points_in_general_position_are_reduced(fermat):
    C = validate_curve(fermat.F, [], (-1, 1, 1))
    three = point_divisor(C, (1, 1, 1), (1, -1, 1), (-1, -1, 1))
    assert verify_reduced(C, three, 3)
    assert reduce(C, three, empty_divisor(C)).t == 3
    assert verify_reduced(C, point_divisor(C, (1, 1, 1), (1, -1, 1)), 2)


def _collinear(a, b, c, p):
    det = (a[0] * (b[1] * c[2] - c[1] * b[2]) - a[1] * (b[0] * c[2] - c[0] * b[2])
           + a[2] * (b[0] * c[1] - c[0] * b[1]))
    return det % p == 0


def test_collinear_triples_are_not_reduced(quartic31):
    C, pts = quartic31
    p = C.field.p
    others = pts[1:]
    triples = [(a, b, c) for i, a in enumerate(others) for j, b in enumerate(others[i + 1:], i + 1)
               for c in others[j + 1:] if _collinear(a, b, c, p)]
    assert triples
    for a, b, c in triples[:6]:
        D = point_divisor(C, a, b, c)
        assert not verify_reduced(C, D, 3)
        assert reduce(C, D, empty_divisor(C)).t < 3


def test_verify_reduced_contract(fermat, fermat_class):
    assert verify_reduced(fermat, empty_divisor(fermat), 0)
    with pytest.raises(ValidationError):
        verify_reduced(fermat, fermat_class.ideal, 2)
    with pytest.raises(ValidationError):
        verify_reduced(fermat, multiple(fermat, (1, -1, 1), 4), 4)


def test_offset_must_balance(fermat):
    with pytest.raises(ValidationError, match="degree"):
        reduce(fermat, point_divisor(fermat, (1, -1, 1)), empty_divisor(fermat), 0)


def test_elements_on_different_curves(fermat, quartic31):
    C, pts = quartic31
    a = reduce(C, point_divisor(C, pts[1]), empty_divisor(C))
    b = reduce(fermat, point_divisor(fermat, (1, -1, 1)), empty_divisor(fermat))
    with pytest.raises(ValidationError):
        add(a, b)


def test_nodal_group_law(nodal31):
    C, pts = nodal31
    rng = random.Random(12)

    def element():
        spec = DivisorSpec([(p, 1, None) for p in rng.sample(pts[1:], 2)]
                           + [((0, 0, 1), 1, rng.choice("+-"))])
        return reduce(C, ideal_of_divisor(C, spec), empty_divisor(C))

    for _ in range(3):
        a, b, c = element(), element(), element()
        assert equal(add(add(a, b), c), add(a, add(b, c)))
        assert equal(add(a, b), add(b, a))
        assert add(a, neg(a)).t == 0
        for E in (a, b, c):
            assert E.t <= C.genus
            assert verify_reduced(C, E.ideal, E.t)


def test_nodal_reduction(nodal):
    Ip = ideal_of_divisor(nodal, DivisorSpec([((0, 0, 1), 2, "+")]))
    Im = ideal_of_divisor(nodal, DivisorSpec([((4, 2, 1), 1, None), ((1, -1, 0), 1, None)]))
    E = reduce(nodal, Ip, Im)
    R = nodal.ring
    assert E.t == 2
    assert E.ideal.ideal == Ideal([R.parse(g) for g in (
        "x*z - 2*y*z", "-x*y - y^2 - 6*y*z", "x^2 - y^2 + 6*y*z", "y^2*z + 2*y*z^2")], R)
    assert E.trace.G == R.parse("x*y - y^2")
    assert E.trace.G_prime == R.parse("x^2 - x*y - 2*y^2")
    assert add(E, neg(E)).t == 0


def test_nodal_principal_divisor(nodal):
    # (y) = 3 R+ + R- and (x - y) = R+ + R- + 2 P0, so 2 R+ - 2 P0 is principal
    twice = ideal_of_divisor(nodal, DivisorSpec([((0, 0, 1), 2, "+")]))
    assert reduce(nodal, twice, empty_divisor(nodal)).t == 0
    once = ideal_of_divisor(nodal, DivisorSpec([((0, 0, 1), 1, "+")]))
    assert reduce(nodal, once, empty_divisor(nodal)).t == 1
