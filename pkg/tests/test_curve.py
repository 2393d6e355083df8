from math import comb

import pytest

from planejac.algebra import GF, QQ, PolyRing
from planejac.curve import (b_m, base_contact_ideal, branch_coefficients, c_m, choose_m,
                            interpolation_exponents, parse_curve_text, restricted_system_basis,
                            validate_curve)
from planejac.errors import ParseError, ValidationError
from planejac.groebner import Ideal, dehomogenize_ideal

R = PolyRing(QQ, "xyz")


def test_fermat_quartic(fermat):
    assert (fermat.n, fermat.genus, fermat.d) == (4, 3, 0)
    assert fermat.describe() == "n=4 genus=3 smooth"


def test_nodal_quartic(nodal):
    assert (nodal.n, nodal.genus, nodal.d, nodal.full_genus) == (4, 2, 1, 3)
    assert nodal.describe() == "n=4 genus=2 nodes=1"


@pytest.mark.parametrize("F,nodes,P0,message", [
    ("x^4 + y^4 - 2*z^4", [(1, 1, 1)], (1, 1, 1), "smooth point"),
    ("x^4 + y^4 - 2*z^4", [], (1, 2, 1), "not on the curve"),
    ("x^4 + y^3*z - 2*z^4", [], (1, 1, 1), "(0:1:0)"),
    ("x^4 - y^4 - 30*x*y*z^2", [], (1, 1, 0), "singular locus"),
    ("x^2 + y^2 - z^2", [], (1, 0, 1), "degree 2"),
    ("x^4 - y^4 - 30*x*y*z^2", [(0, 0, 1)], (0, 0, 1), "must not be a node"),
    ("x^3*z + y^4 + x*y^3", [], (0, 0, 1), "singular locus"),
])
def test_validation_failures(F, nodes, P0, message):
    with pytest.raises(ValidationError, match=message.replace("(", r"\(").replace(")", r"\)")):
        validate_curve(R.parse(F), nodes, P0)


def test_cusp_is_not_a_node():
    # cusp at the origin: the tangent cone y^2 is a double line
    F = R.parse("y^2*z^2 - x^3*z + y^4")
    with pytest.raises(ValidationError):
        validate_curve(F, [(0, 0, 1)], (0, 0, 1))


def test_b_m_and_choose_m(fermat, nodal):
    assert b_m(fermat, 3) == 9
    assert b_m(fermat, 4) == 13
    assert b_m(nodal, 4) == 13
    assert b_m(fermat, 2) == 5
    assert choose_m(fermat, 6, 0) == 3
    assert choose_m(fermat, 6, 6) == 3
    assert choose_m(fermat, 0, 3) == 3
    assert c_m(fermat, 3) == 3


@pytest.mark.parametrize("n", [4, 5, 6])
def test_b_m_matches_binomial_form(n):
    C = validate_curve(R.parse(f"x^{n} + y^{n} - 2*z^{n}"), [], (1, 1, 1))
    for m in range(max(n - 3, 1), n):
        assert b_m(C, m) == m * n - C.genus + comb(n - m - 1, 2)


def test_restricted_system_counts(fermat):
    C = validate_curve(fermat.F, [], (1, 1, 1), fixed_monomial=(0, 0))
    four = restricted_system_basis(C, 4)
    assert len(four) == 14
    assert (0, 0, 4) not in four
    five = restricted_system_basis(C, 5)
    assert len(five) == 18
    assert not {(0, 0, 5), (1, 0, 4), (0, 1, 4)} & set(five)
    # below the curve degree every monomial is allowed
    assert len(interpolation_exponents(C, 3)) == 10


def test_default_fixed_monomial(fermat):
    assert fermat.fixed_monomial == (4, 0)
    assert len(restricted_system_basis(fermat, 4)) == 14


def test_fixed_monomial_must_occur(fermat):
    with pytest.raises(ValidationError):
        validate_curve(fermat.F, [], (1, 1, 1), fixed_monomial=(2, 2))


def test_branch_series(nodal):
    node = nodal.nodes[0]
    assert branch_coefficients(node, "+", 4) == [0, 0, QQ("1/30")]
    assert branch_coefficients(node, "-", 4) == [0, 0, QQ("-1/30")]
    assert node.branch("+").parameter == "x"
    assert node.branch("-").parameter == "y"
    coeffs = node.branch("+").coefficients(12)
    assert coeffs[10] == QQ("-1/24300000")
    assert all(c == 0 for k, c in enumerate(coeffs) if k not in (2, 10))
    for sign in "+-":
        assert node.branch(sign).residual_order(20) > 20
    with pytest.raises(ValidationError):
        node.branch("*")


def test_branches_of_a_coordinate_node():
    K = GF(31)
    S = PolyRing(K, "xyz")
    F = S.parse("x*y*z^2 + x^3*z + y^4")
    P0 = next((a, b, 1) for a in range(1, 31) for b in range(31)
              if F.evaluate({"x": a, "y": b, "z": 1}) == 0)
    C = validate_curve(F, [(0, 0, 1)], P0)
    node = C.nodes[0]
    assert node.branch("+").coefficients(1) == [0]
    assert node.branch("-").parameter == "y"
    assert node.branch("-").coefficients(1) == [0]
    for sign in "+-":
        assert node.branch(sign).residual_order(15) > 15


def test_base_contact_ideals(fermat, nodal):
    I3 = base_contact_ideal(fermat, 3)
    Rz = fermat.ring_z
    expected = Ideal([Rz.parse("-1 + 3*y - 3*y^2 + y^3"), Rz.parse("-1 - x + 5*y - 3*y^2")], Rz)
    assert dehomogenize_ideal(I3, "z") == expected
    assert base_contact_ideal(nodal, 2) == Ideal([R.parse("x - y"), R.parse("z^2")], R)
    assert base_contact_ideal(fermat, 0).is_unit()


def test_contact_chain_degrees(fermat):
    for r in range(0, 7):
        assert dehomogenize_ideal(base_contact_ideal(fermat, r), "z").quotient_dimension() == r


def test_parse_curve_text():
    C = parse_curve_text("# comment\ncurve = x^4 + y^4 - 2*z^4\nfield = GF(17)\n"
                         "base_point = (1,1,1)\n")
    assert C.field == GF(17)
    assert C.P0 == (1, 1, 1)
    N = parse_curve_text("curve = x^4 - y^4 - 30*x*y*z^2\nnodes = [(0,0,1)]\n"
                         "base_point = (1,1,0)\n")
    assert N.describe() == "n=4 genus=2 nodes=1"


@pytest.mark.parametrize("text,message", [
    ("curve = x^4+y^4-2*z^\nbase_point = (1,1,1)\n", "line 1"),
    ("curve = x^4+y^4-2*z^4\nbogus line\n", "line 2"),
    ("curve = x^4+y^4-2*z^4\nbase_point = (1,1)\n", "line 2"),
    ("base_point = (1,1,1)\n", "curve"),
    ("curve = x^4+y^4-2*z^4\ncolor = red\n", "unknown key"),
])
def test_parse_curve_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_curve_text(text)
