"""Divisors on a plane curve as ideals, kept in the two affine charts z = 1 and x = 1."""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field

from .algebra import Poly, dehomogenize, grlex
from .curve import (PlaneCurve, branch_ideal_z, format_point, normalize_point,
                    point_chart_ideals)
from .errors import ParseError, ValidationError
from .groebner import Ideal, dehomogenize_ideal, homogenize_ideal, ideal_intersection
from .linalg import nullspace, rref


@dataclass
class DivisorSpec:
    """Effective divisor: (point, multiplicity, branch) entries or a raw ideal."""

    entries: list = field(default_factory=list)
    ideal: list | None = None

    @property
    def degree(self) -> int:
        return sum(m for _, m, _ in self.entries)


class HomogeneousDivisorIdeal:
    """Ideal of forms whose intersection divisor with the curve is >= D
    (>= Delta + D when ``delta`` is set), stored through its chart ideals."""

    def __init__(self, curve: PlaneCurve, Iz: Ideal, Ix: Ideal, delta: bool = False):
        if Iz.ring != curve.ring_z or Ix.ring != curve.ring_x:
            raise ValidationError("chart ideals live in the wrong rings")
        self.curve = curve
        self.Iz = Iz.plus(curve.f_z) if curve.f_z not in Iz.gens else Iz
        self.Ix = Ix.plus(curve.f_x) if curve.f_x not in Ix.gens else Ix
        self.delta = delta
        self._ideal = None
        self._degree = None
        self._lock = threading.Lock()

    @classmethod
    def from_homogeneous(cls, curve: PlaneCurve, H: Ideal, delta: bool = False):
        if H.ring != curve.ring:
            raise ValidationError("ideal must live in K[x,y,z]")
        if any(not g.is_homogeneous() for g in H.gens):
            raise ValidationError("ideal generators must be forms")
        if not H.contains(curve.F):
            raise ValidationError("ideal does not contain the curve equation")
        out = cls(curve, dehomogenize_ideal(H, "z"), dehomogenize_ideal(H, "x"), delta)
        out.degree_on_curve  # raises if not zero-dimensional
        out._ideal = H
        return out

    def __repr__(self):
        tag = " delta" if self.delta else ""
        return f"HomogeneousDivisorIdeal(degree={self.degree_on_curve}{tag})"

    # -- degree -------------------------------------------------------------
    @property
    def degree_on_curve(self) -> int:
        if self._degree is None:
            dz = self.Iz.quotient_dimension()
            dx = self.Ix.quotient_dimension()
            if dz == float("inf") or dx == float("inf"):
                raise ValidationError("ideal is not zero-dimensional on the curve")
            z = self.curve.ring_x.gen("z")
            dinf = self.Ix.plus(z ** (dx + 1)).quotient_dimension()
            deg = dz + dinf - (self.curve.d if self.delta else 0)
            if deg < 0:
                raise ValidationError("ideal does not contain the adjoint conditions")
            self._degree = deg
        return self._degree

    def is_empty(self) -> bool:
        return self.degree_on_curve == 0

    # -- homogeneous ideal --------------------------------------------------
    @property
    def ideal(self) -> Ideal:
        with self._lock:
            if self._ideal is None:
                self._ideal = self._homogeneous()
            return self._ideal

    def _homogeneous(self) -> Ideal:
        c = self.curve
        if self.Ix.plus(c.ring_x.gen("z")).is_unit():
            return homogenize_ideal(self.Iz, "z")
        if self.Iz.plus(c.ring_z.gen("x")).is_unit():
            return homogenize_ideal(self.Ix, "x")
        return ideal_intersection(homogenize_ideal(self.Iz, "z"), homogenize_ideal(self.Ix, "x"))

    def generators(self) -> list[Poly]:
        """Canonical reduced graded-lex basis of the homogeneous ideal."""
        return self.ideal.groebner_basis(grlex("x", "y", "z"))

    # -- membership and forms -----------------------------------------------
    def contains(self, G: Poly) -> bool:
        if G.ring != self.curve.ring or not G.is_homogeneous():
            raise ValidationError("expected a form in x, y, z")
        return self.Iz.contains(dehomogenize(G, "z")) and self.Ix.contains(dehomogenize(G, "x"))

    def __contains__(self, G):
        return self.contains(G)

    def forms(self, m: int, exponents=None) -> list[Poly]:
        """Echelon basis of the degree-m forms in the ideal, restricted to the
        span of ``exponents`` if given; rows by descending leading monomial."""
        c = self.curve
        ring = c.ring
        if exponents is None:
            exponents = ring.exponent_tuples(m)
        key = grlex("x", "y", "z").key(ring.gens)
        cols = sorted(exponents, key=key, reverse=True)
        fld = ring.field
        ix, iy, iz = (ring.gens.index(v) for v in "xyz")
        images = []
        for e in cols:
            mz = c.ring_z.monomial(_pick(c.ring_z.gens, e, ix, iy, iz))
            mx = c.ring_x.monomial(_pick(c.ring_x.gens, e, ix, iy, iz))
            images.append((self.Iz.reduce(mz), self.Ix.reduce(mx)))
        keys = sorted({("z", k) for a, _ in images for k in a.terms}
                      | {("x", k) for _, b in images for k in b.terms})
        rows = []
        for chart, k in keys:
            rows.append([(a if chart == "z" else b).terms.get(k, fld.zero) for a, b in images])
        kernel = nullspace(rows, len(cols), fld) if rows else [
            [fld.one if i == j else fld.zero for i in range(len(cols))] for j in range(len(cols))]
        red, _ = rref(kernel, fld)
        return [Poly(ring, {cols[k]: v for k, v in enumerate(r) if v != 0}) for r in red]

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, HomogeneousDivisorIdeal):
            return NotImplemented
        return (self.curve is other.curve and self.delta == other.delta
                and self.Iz == other.Iz and self.Ix == other.Ix)

    __hash__ = None


def _pick(gens, e, ix, iy, iz):
    src = {"x": e[ix], "y": e[iy], "z": e[iz]}
    return tuple(src[v] for v in gens)


def _z_to_x(curve: PlaneCurve, Iz: Ideal) -> Ideal:
    """x-chart ideal of the finite part described by a z-chart ideal."""
    return dehomogenize_ideal(homogenize_ideal(Iz, "z"), "x").plus(curve.f_x)


def _same_curve(*ideals):
    c = ideals[0].curve
    for I in ideals[1:]:
        if I.curve is not c:
            raise ValidationError("divisor ideals belong to different curves")
    return c


# --------------------------------------------------------------------------
# construction
# --------------------------------------------------------------------------


def empty_divisor(curve: PlaneCurve) -> HomogeneousDivisorIdeal:
    """Representative of the zero divisor (Delta-type on nodal curves)."""
    if curve.d == 0:
        return HomogeneousDivisorIdeal(curve, Ideal.unit(curve.ring_z), Ideal.unit(curve.ring_x))
    Iz = Ideal.unit(curve.ring_z)
    rz = curve.ring_z
    for nd in curve.nodes:
        x0, y0, _ = nd.location
        Iz = Iz * Ideal([rz.gen("x") - rz.const(x0), rz.gen("y") - rz.const(y0)], rz)
    Iz = Iz.plus(curve.f_z)
    return HomogeneousDivisorIdeal(curve, Iz, _z_to_x(curve, Iz), delta=True)


def adjoint_ideal(curve: PlaneCurve) -> Ideal:
    """Homogeneous ideal of forms through every node."""
    if curve.d == 0:
        return Ideal.unit(curve.ring)
    return empty_divisor(curve).ideal


def _node_component(curve, node, mplus: int, mminus: int) -> Ideal:
    rz = curve.ring_z
    if mplus == 0 and mminus == 0:
        x0, y0, _ = node.location
        return Ideal([rz.gen("x") - rz.const(x0), rz.gen("y") - rz.const(y0), curve.f_z], rz)
    a = branch_ideal_z(curve, node, "+", mplus + 1)
    b = branch_ideal_z(curve, node, "-", mminus + 1)
    return ideal_intersection(a, b)


def ideal_of_divisor(curve: PlaneCurve, D: DivisorSpec) -> HomogeneousDivisorIdeal:
    """Ideal of forms with intersection divisor >= D (>= Delta + D on nodal curves)."""
    delta = curve.d > 0
    if D.ideal is not None:
        H = Ideal(D.ideal, curve.ring)
        return HomogeneousDivisorIdeal.from_homogeneous(curve, H, delta)
    fld = curve.field
    smooth: dict = {}
    at_nodes: dict = {}
    for pt, mult, branch in D.entries:
        if mult < 0:
            raise ValidationError(f"negative multiplicity {mult} at {format_point(fld, pt)}")
        if mult == 0:
            continue
        q = normalize_point(fld, pt)
        if not curve.on_curve(q):
            raise ValidationError(f"point {format_point(fld, pt)} is not on the curve")
        node = curve.node_at(q)
        if node is not None:
            if branch not in ("+", "-"):
                raise ValidationError(f"point {format_point(fld, pt)} is a node; tag it with branch + or -")
            plus, minus = at_nodes.get(q, (0, 0))
            at_nodes[q] = (plus + mult, minus) if branch == "+" else (plus, minus + mult)
        else:
            if branch is not None:
                raise ValidationError(f"branch tag on {format_point(fld, pt)}, which is not a node")
            smooth[q] = smooth.get(q, 0) + mult
    rz, rx = curve.ring_z, curve.ring_x
    Iz, Ix = Ideal.unit(rz), Ideal.unit(rx)
    for q, mult in smooth.items():
        cz, cx = point_chart_ideals(curve, q, mult)
        Iz, Ix = Iz * cz, Ix * cx
    for node in curve.nodes:
        plus, minus = at_nodes.get(node.location, (0, 0))
        comp = _node_component(curve, node, plus, minus)
        Iz = Iz * comp
        if node.location[0] != 0:
            Ix = Ix * _z_to_x(curve, comp)
    return HomogeneousDivisorIdeal(curve, Iz.plus(curve.f_z), Ix.plus(curve.f_x), delta)


def contact_divisor(curve: PlaneCurve, r: int, pt=None) -> HomogeneousDivisorIdeal:
    """Plain (never Delta-type) ideal of r times a smooth point, P0 by default."""
    if r < 0:
        raise ValidationError("contact order must be non-negative")
    Iz, Ix = point_chart_ideals(curve, curve.P0 if pt is None else pt, r)
    return HomogeneousDivisorIdeal(curve, Iz, Ix, False)


def point_divisor(curve: PlaneCurve, *points, branch=None) -> HomogeneousDivisorIdeal:
    """Convenience: ideal of the sum of the given points (each multiplicity 1)."""
    return ideal_of_divisor(curve, DivisorSpec([(p, 1, branch) for p in points]))


# --------------------------------------------------------------------------
# sums and residuals
# --------------------------------------------------------------------------


def odot(I1: HomogeneousDivisorIdeal, I2: HomogeneousDivisorIdeal) -> HomogeneousDivisorIdeal:
    """Ideal of the divisor sum; at most one factor may be Delta-type."""
    c = _same_curve(I1, I2)
    if I1.delta and I2.delta:
        raise ValidationError("both ideals contain Delta; use odot_delta")
    return HomogeneousDivisorIdeal(c, I1.Iz * I2.Iz, I1.Ix * I2.Ix, I1.delta or I2.delta)


def odot_delta(I1: HomogeneousDivisorIdeal, I2: HomogeneousDivisorIdeal) -> HomogeneousDivisorIdeal:
    c = _same_curve(I1, I2)
    if c.d == 0:
        return odot(I1, I2)
    if not (I1.delta and I2.delta):
        raise ValidationError("odot_delta needs Delta-type ideals")
    adj = empty_divisor(c)
    Iz = (I1.Iz * I2.Iz).plus(c.f_z).quotient(adj.Iz)
    Ix = (I1.Ix * I2.Ix).plus(c.f_x).quotient(adj.Ix)
    return HomogeneousDivisorIdeal(c, Iz, Ix, True)


def _check_residual(G: Poly, I: HomogeneousDivisorIdeal):
    c = I.curve
    if G.ring != c.ring or not G.is_homogeneous() or G.is_zero():
        raise ValidationError("G must be a nonzero form in x, y, z")
    if Ideal([c.F], c.ring).contains(G):
        raise ValidationError("G vanishes identically on the curve")
    if not I.contains(G):
        raise ValidationError("G does not lie in the divisor ideal")


def oslash(G: Poly, I: HomogeneousDivisorIdeal) -> HomogeneousDivisorIdeal:
    """Ideal of the residual divisor (G) - D_I."""
    c = I.curve
    if I.delta:
        raise ValidationError("ideal contains Delta; use oslash_delta")
    _check_residual(G, I)
    Iz = Ideal([dehomogenize(G, "z"), c.f_z], c.ring_z).quotient(I.Iz)
    Ix = Ideal([dehomogenize(G, "x"), c.f_x], c.ring_x).quotient(I.Ix)
    return HomogeneousDivisorIdeal(c, Iz, Ix, False)


def oslash_delta(G: Poly, I: HomogeneousDivisorIdeal) -> HomogeneousDivisorIdeal:
    """Delta-type ideal of (G) - Delta - D_I, for I of Delta-type."""
    c = I.curve
    if c.d == 0:
        return oslash(G, I)
    if not I.delta:
        raise ValidationError("oslash_delta needs a Delta-type ideal")
    _check_residual(G, I)
    adj = empty_divisor(c)
    Gz = Ideal([dehomogenize(G, "z")], c.ring_z)
    Gx = Ideal([dehomogenize(G, "x")], c.ring_x)
    Iz = (Gz * adj.Iz).plus(c.f_z).quotient(I.Iz)
    Ix = (Gx * adj.Ix).plus(c.f_x).quotient(I.Ix)
    return HomogeneousDivisorIdeal(c, Iz, Ix, True)


def divisor_degree(I: HomogeneousDivisorIdeal) -> int:
    return I.degree_on_curve


def strip_point(I: HomogeneousDivisorIdeal, pt) -> tuple[HomogeneousDivisorIdeal, int]:
    """Remove every copy of a smooth point from the divisor; return the count."""
    c = I.curve
    q = normalize_point(c.field, pt)
    if c.node_at(q) is not None:
        raise ValidationError("cannot strip a node")
    x, y, z = q
    rz, rx = c.ring_z, c.ring_x
    mz = Ideal([rz.gen("x") - rz.const(x), rz.gen("y") - rz.const(y)], rz) if z != 0 else None
    mx = None
    if x != 0:
        mx = Ideal([rx.gen("y") - rx.const(c.field.div(y, x)),
                    rx.gen("z") - rx.const(c.field.div(z, x))], rx)
    count = 0
    Iz, Ix = I.Iz, I.Ix
    while True:
        if mz is not None:
            inside = all(g.evaluate({"x": x, "y": y}) == 0 for g in Iz.basis())
        else:
            inside = all(g.evaluate({"y": c.field.div(y, x), "z": c.field.zero}) == 0
                         for g in Ix.basis())
        if not inside:
            break
        if mz is not None:
            Iz = Iz.quotient(mz)
        if mx is not None:
            Ix = Ix.quotient(mx)
        count += 1
    if count == 0:
        return I, 0
    return HomogeneousDivisorIdeal(c, Iz, Ix, I.delta), count


# --------------------------------------------------------------------------
# text format
# --------------------------------------------------------------------------

_POINT_LINE = re.compile(
    r"^point\s*\(([^)]*)\)\s*(?:mult\s+(\d+))?\s*(?:branch\s*([+-]))?\s*$")


def parse_point(text: str, curve_field) -> tuple:
    parts = [p.strip() for p in text.strip().strip("()").split(",")]
    if len(parts) != 3:
        raise ParseError(f"expected three coordinates in {text!r}")
    try:
        return tuple(curve_field(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coordinate in {text!r}: {exc}") from None


def parse_divisor(text: str, curve: PlaneCurve) -> DivisorSpec:
    """Parse ``point (x,y,z) mult m [branch +|-]`` lines or ``ideal { f; g }``."""
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if body.startswith("ideal"):
        m = re.fullmatch(r"ideal\s*\{(.*)\}", body, re.S)
        if not m:
            raise ParseError("malformed ideal block, expected 'ideal { f; g; ... }'")
        polys = [curve.ring.parse(p) for p in m.group(1).split(";") if p.strip()]
        if not polys:
            raise ParseError("empty ideal block")
        return DivisorSpec(ideal=polys)
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = _POINT_LINE.match(line)
        if not m:
            raise ParseError(f"line {lineno}: cannot parse {line!r}")
        pt = parse_point(m.group(1), curve.field)
        entries.append((pt, int(m.group(2) or 1), m.group(3)))
    return DivisorSpec(entries)


__all__ = [
    "DivisorSpec", "HomogeneousDivisorIdeal", "ideal_of_divisor", "point_divisor", "contact_divisor", "odot",
    "oslash", "odot_delta", "oslash_delta", "adjoint_ideal", "empty_divisor", "divisor_degree",
    "strip_point", "parse_divisor", "parse_point",
]
