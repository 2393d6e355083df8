"""Reduced divisors and the group law in the Jacobian of a plane curve."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .algebra import Poly
from .curve import PlaneCurve, b_m, choose_m, interpolation_exponents
from .divisor_ideal import (HomogeneousDivisorIdeal, contact_divisor, empty_divisor, odot,
                            odot_delta, oslash, oslash_delta, strip_point)
from .errors import InvariantViolation, ValidationError
from .groebner import Ideal

log = logging.getLogger(__name__)


@dataclass
class ReductionTrace:
    """Intermediate objects of one reduction, kept for inspection and tests."""

    m: int
    s_plus: int
    s_minus: int
    A: HomogeneousDivisorIdeal
    G: Poly
    J: HomogeneousDivisorIdeal
    K: HomogeneousDivisorIdeal
    r: int
    B: HomogeneousDivisorIdeal
    G_prime: Poly


@dataclass
class JacobianElement:
    """Class of S_1 + ... + S_t - t*P0 with S the divisor of ``ideal``."""

    curve: PlaneCurve
    ideal: HomogeneousDivisorIdeal
    t: int
    alpha: int = 0
    trace: ReductionTrace | None = None

    def __post_init__(self):
        if self.ideal.curve is not self.curve:
            raise ValidationError("ideal belongs to another curve")

    def is_identity(self) -> bool:
        return self.t == 0

    def generators(self) -> list[Poly]:
        return self.ideal.generators()

    def __eq__(self, other):
        if not isinstance(other, JacobianElement):
            return NotImplemented
        return equal(self, other)

    __hash__ = None

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        return add(self, neg(other))

    def __rmul__(self, k: int):
        return scalar_mul(k, self)


def identity(curve: PlaneCurve) -> JacobianElement:
    return JacobianElement(curve, empty_divisor(curve), 0)


def _sum(curve, I1, I2):
    return odot_delta(I1, I2) if curve.d else odot(I1, I2)


def _residual(curve, G, I):
    return oslash_delta(G, I) if curve.d else oslash(G, I)


def _canonical_form(curve: PlaneCurve, I: HomogeneousDivisorIdeal, m: int) -> Poly | None:
    """Echelon element of smallest leading monomial among degree-m forms of I
    that are not multiples of F."""
    rows = I.forms(m, interpolation_exponents(curve, m))
    Fid = Ideal([curve.F], curve.ring)
    for G in reversed(rows):
        if m < curve.n or not Fid.contains(G):
            return G
    return None


def reduce(curve: PlaneCurve, Iplus: HomogeneousDivisorIdeal, Iminus: HomogeneousDivisorIdeal,
           p0_offset: int | None = None) -> JacobianElement:
    """Reduced representative of D+ - D- + p0_offset*P0.

    The offset defaults to the value that makes the divisor degree zero; an
    explicit offset must agree with it.
    """
    for I in (Iplus, Iminus):
        if I.curve is not curve:
            raise ValidationError("divisor ideal belongs to another curve")
        if curve.d and not I.delta:
            raise ValidationError("divisor ideals on a nodal curve must contain Delta")
    balance = Iminus.degree_on_curve - Iplus.degree_on_curve
    if p0_offset is not None and p0_offset != balance:
        raise ValidationError(
            f"divisor has degree {p0_offset - balance}, not zero (P0 offset should be {balance})")

    Iplus, _ = strip_point(Iplus, curve.P0)
    Iminus, _ = strip_point(Iminus, curve.P0)
    s_plus, s_minus = Iplus.degree_on_curve, Iminus.degree_on_curve
    g, d, n = curve.genus, curve.d, curve.n

    m = choose_m(curve, s_plus, s_minus)
    bm = b_m(curve, m)
    log.debug("reduce: s+=%d s-=%d m=%d b_m=%d", s_plus, s_minus, m, bm)

    A = odot(Iplus, contact_divisor(curve, bm - s_plus - d))
    G = _canonical_form(curve, A, m)
    if G is None:
        raise InvariantViolation(f"no {m}-form through D+ outside (F)")
    J = _residual(curve, G, A)
    if J.degree_on_curve != g:
        raise InvariantViolation(f"first residual has degree {J.degree_on_curve}, expected {g}")

    K = _sum(curve, J, Iminus)
    r0 = bm - s_minus - g - d
    best = None
    for r in range(r0, r0 + g + 1):
        B = odot(K, contact_divisor(curve, r))
        Gp = _canonical_form(curve, B, m)
        if Gp is None:
            break
        best = (r, B, Gp)
    if best is None:
        raise InvariantViolation("no second interpolation form")
    r, B, Gp = best
    Ired = _residual(curve, Gp, B)
    t = m * n - 2 * d - g - s_minus - r
    if Ired.degree_on_curve != t:
        raise InvariantViolation(f"residual degree {Ired.degree_on_curve} != t = {t}")
    trace = ReductionTrace(m, s_plus, s_minus, A, G, J, K, r, B, Gp)
    return JacobianElement(curve, Ired, t, alpha=r - r0, trace=trace)


def from_divisor(curve: PlaneCurve, Iplus: HomogeneousDivisorIdeal,
                 Iminus: HomogeneousDivisorIdeal | None = None) -> JacobianElement:
    return reduce(curve, Iplus, Iminus if Iminus is not None else empty_divisor(curve))


def _same(E1: JacobianElement, E2: JacobianElement) -> PlaneCurve:
    if E1.curve is not E2.curve:
        raise ValidationError("elements live on different curves")
    return E1.curve


def add(E1: JacobianElement, E2: JacobianElement) -> JacobianElement:
    c = _same(E1, E2)
    if E1.t == 0:
        return E2
    if E2.t == 0:
        return E1
    return reduce(c, _sum(c, E1.ideal, E2.ideal), empty_divisor(c), -(E1.t + E2.t))


def neg(E: JacobianElement) -> JacobianElement:
    if E.t == 0:
        return E
    return reduce(E.curve, empty_divisor(E.curve), E.ideal, E.t)


def equal(E1: JacobianElement, E2: JacobianElement) -> bool:
    """Reduced representatives are unique, so compare them structurally."""
    _same(E1, E2)
    return E1.t == E2.t and E1.ideal == E2.ideal


def scalar_mul(k: int, E: JacobianElement) -> JacobianElement:
    if k < 0:
        return scalar_mul(-k, neg(E))
    result = identity(E.curve)
    base = E
    while k:
        if k & 1:
            result = add(result, base)
        k >>= 1
        if k:
            base = add(base, base)
    return result


def verify_reduced(curve: PlaneCurve, I: HomogeneousDivisorIdeal, t: int | None = None) -> bool:
    """Dimension of (n-3)-forms through the divisor (and Delta) is at most g - t."""
    if t is None:
        t = I.degree_on_curve
    if t > curve.genus:
        raise ValidationError(f"t = {t} exceeds the genus {curve.genus}")
    if I.degree_on_curve != t:
        raise ValidationError("t does not match the divisor degree")
    if t == 0:
        return True
    return len(I.forms(curve.n - 3)) <= curve.genus - t


__all__ = [
    "JacobianElement", "ReductionTrace", "identity", "reduce", "from_divisor", "add", "neg",
    "equal", "scalar_mul", "verify_reduced",
]
