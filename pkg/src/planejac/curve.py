"""Plane projective curves with at most simple nodes."""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from math import comb

from .algebra import QQ, Field, Poly, PolyRing, dehomogenize, grlex, homogenize, parse_field
from .errors import ParseError, ValidationError
from .groebner import Ideal, homogenize_ideal

MAX_BRANCH_ORDER = 400

Point = tuple  # projective point, three raw field values


def normalize_point(field: Field, pt) -> tuple:
    """Scale a projective point so that its last nonzero of (z, x, y) is 1."""
    if len(pt) != 3:
        raise ValidationError(f"projective point needs three coordinates: {pt!r}")
    x, y, z = (field(c) for c in pt)
    for pivot in (z, x, y):
        if pivot != 0:
            inv = field.inv(pivot)
            return (field.mul(x, inv), field.mul(y, inv), field.mul(z, inv))
    raise ValidationError("(0:0:0) is not a projective point")


def format_point(field: Field, pt) -> str:
    return "(" + " : ".join(field.format(field(c)) for c in pt) + ")"


def _mono_str(k: int, l: int, n: int) -> str:
    parts = [f"{v}^{e}" if e > 1 else v for v, e in (("x", k), ("y", l), ("z", n - k - l)) if e]
    return "*".join(parts) or "1"


class BranchExpansion:
    """Power series of one branch through a node, extended on demand.

    ``parameter == "x"`` means y - y0 = a1 (x - x0) + a2 (x - x0)^2 + ...;
    ``"y"`` (vertical tangent) means x - x0 = b1 (y - y0) + ... .
    """

    def __init__(self, local: dict, parameter: str, slope, field: Field):
        # local: {(i, j): c} for f(x0 + X, y0 + Y)
        self.parameter = parameter
        self.field = field
        if parameter == "y":
            local = {(j, i): c for (i, j), c in local.items()}
        self._local = local
        B = local.get((1, 1), field.zero)
        C = local.get((0, 2), field.zero)
        # d/dY of the tangent cone at (1, slope); nonzero for a simple node
        self._pivot = field.add(B, field.mul(field(2), field.mul(C, slope)))
        if self._pivot == 0:
            raise ValidationError("node is not simple: repeated tangent")
        self._coeffs = [slope]
        self._lock = threading.Lock()

    def coefficients(self, count: int) -> list:
        """First ``count`` coefficients a1, a2, ..."""
        if count > MAX_BRANCH_ORDER:
            raise ValidationError(f"branch order {count} exceeds cap {MAX_BRANCH_ORDER}")
        with self._lock:
            while len(self._coeffs) < count:
                k = len(self._coeffs) + 1
                c = self._series_coeff(self._coeffs, k + 1)
                self._coeffs.append(self.field.neg(self.field.div(c, self._pivot)))
            return list(self._coeffs[:count])

    def _series_coeff(self, coeffs: list, order: int):
        """Coefficient of T^order in f(T, sum coeffs[j] T^(j+1))."""
        fld = self.field
        series = [fld.zero] + list(coeffs)
        series = series[: order + 1] + [fld.zero] * max(0, order + 1 - len(series))
        powers = [[fld.one] + [fld.zero] * order]
        total = fld.zero
        maxj = max(j for _, j in self._local)
        for _ in range(maxj):
            prev = powers[-1]
            nxt = [fld.zero] * (order + 1)
            for a, ca in enumerate(prev):
                if ca == 0:
                    continue
                for b in range(1, order + 1 - a):
                    cb = series[b]
                    if cb != 0:
                        nxt[a + b] = fld.add(nxt[a + b], fld.mul(ca, cb))
            powers.append(nxt)
        for (i, j), c in self._local.items():
            if i <= order:
                pj = powers[j][order - i]
                if pj != 0:
                    total = fld.add(total, fld.mul(c, pj))
        return total

    def residual_order(self, count: int) -> int:
        """Order of vanishing of f along the truncated series (for checks)."""
        coeffs = self.coefficients(count)
        order = 0
        while order <= count + 1:
            if self._series_coeff(coeffs, order) != 0:
                return order
            order += 1
        return order


@dataclass
class Node:
    location: tuple          # (x, y, 1)
    branch_plus: BranchExpansion
    branch_minus: BranchExpansion

    def branch(self, sign: str) -> BranchExpansion:
        if sign == "+":
            return self.branch_plus
        if sign == "-":
            return self.branch_minus
        raise ValidationError(f"branch sign must be '+' or '-', got {sign!r}")


@dataclass
class PlaneCurve:
    F: Poly
    n: int
    nodes: list[Node]
    genus: int
    P0: tuple
    fixed_monomial: tuple[int, int]
    ring: PolyRing = field(repr=False)
    ring_z: PolyRing = field(repr=False)
    ring_x: PolyRing = field(repr=False)
    f_z: Poly = field(repr=False)
    f_x: Poly = field(repr=False)

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def d(self) -> int:
        return len(self.nodes)

    @property
    def full_genus(self) -> int:
        return (self.n - 1) * (self.n - 2) // 2

    @property
    def curve_ideal_z(self) -> Ideal:
        return Ideal([self.f_z], self.ring_z)

    @property
    def curve_ideal_x(self) -> Ideal:
        return Ideal([self.f_x], self.ring_x)

    def on_curve(self, pt) -> bool:
        x, y, z = pt
        return self.F.evaluate({"x": x, "y": y, "z": z}) == 0

    def node_at(self, pt) -> Node | None:
        for nd in self.nodes:
            if nd.location == pt:
                return nd
        return None

    def describe(self) -> str:
        kind = "smooth" if not self.nodes else f"nodes={len(self.nodes)}"
        return f"n={self.n} genus={self.genus} {kind}"


def _local_expansion(f_z: Poly, x0, y0) -> dict:
    """Coefficients of f(x0 + X, y0 + Y) as {(i, j): c}."""
    ring = f_z.ring
    shifted = f_z.substitute({"x": ring.gen("x") + ring.const(x0),
                              "y": ring.gen("y") + ring.const(y0)})
    ix, iy = ring.gens.index("x"), ring.gens.index("y")
    return {(e[ix], e[iy]): c for e, c in shifted.terms.items()}


def _make_node(fld: Field, f_z: Poly, pt) -> Node:
    x0, y0, _ = pt
    local = _local_expansion(f_z, x0, y0)
    if any(i + j < 2 for (i, j) in local):
        raise ValidationError(f"declared node {format_point(fld, pt)} is not a singular point")
    A = local.get((2, 0), fld.zero)
    B = local.get((1, 1), fld.zero)
    C = local.get((0, 2), fld.zero)
    disc = fld.sub(fld.mul(B, B), fld.mul(fld(4), fld.mul(A, C)))
    if disc == 0:
        raise ValidationError(f"declared node {format_point(fld, pt)} fails F_xx*F_yy - F_xy^2 != 0")
    root = fld.sqrt(disc)
    if root is None:
        raise ValidationError(f"node {format_point(fld, pt)} has tangents that are not rational over {fld}")
    branches = []
    if C != 0:
        two_c = fld.mul(fld(2), C)
        for s in (root, fld.neg(root)):
            slope = fld.div(fld.add(fld.neg(B), s), two_c)
            branches.append((0, fld.sort_key(slope), slope, "x"))
    else:
        slope = fld.neg(fld.div(A, B))
        branches.append((0, fld.sort_key(slope), slope, "x"))
        branches.append((1, 0, fld.zero, "y"))
    branches.sort(key=lambda b: (b[0], b[1]))
    exps = [BranchExpansion(local, par, slope, fld) for _, _, slope, par in branches]
    return Node(pt, exps[0], exps[1])


def validate_curve(F: Poly, nodes=(), P0=None, fixed_monomial=None) -> PlaneCurve:
    """Check a homogeneous form and its declared nodes; return the curve."""
    ring = F.ring
    fld = ring.field
    if set(ring.gens) != {"x", "y", "z"}:
        raise ValidationError("curve must be a form in x, y, z")
    if F.is_zero() or not F.is_homogeneous():
        raise ValidationError("curve polynomial must be a nonzero form")
    n = F.degree()
    if n < 3:
        raise ValidationError(f"degree {n} < 3 is not supported")
    if F.evaluate({"x": 0, "y": 1, "z": 0}) == 0:
        raise ValidationError("(0:1:0) lies on the curve; change coordinates")
    f_z = dehomogenize(F, "z")
    f_x = dehomogenize(F, "x")
    if f_z.degree() != n:
        raise ValidationError("curve contains the line z = 0 as a component")

    pts = []
    for p in nodes:
        q = normalize_point(fld, p)
        if q[2] == 0:
            raise ValidationError(f"node {format_point(fld, p)} is not finite")
        if F.evaluate(dict(zip("xyz", q))) != 0:
            raise ValidationError(f"node {format_point(fld, p)} is not on the curve")
        for var in "xyz":
            if F.diff(var).evaluate(dict(zip("xyz", q))) != 0:
                raise ValidationError(f"declared node {format_point(fld, p)} is a smooth point (F_{var} != 0)")
        if q in pts:
            raise ValidationError(f"node {format_point(fld, p)} declared twice")
        pts.append(q)
    node_objs = [_make_node(fld, f_z, q) for q in pts]

    # undeclared singularities, counted over the algebraic closure
    rz = f_z.ring
    sing_z = Ideal([f_z, f_z.diff("x"), f_z.diff("y"), dehomogenize(F.diff("z"), "z")], rz)
    dim = sing_z.quotient_dimension()
    if dim != len(pts):
        raise ValidationError(
            f"singular locus has degree {dim} but {len(pts)} node(s) were declared"
            if dim != float("inf") else "curve is singular along a component")
    rx = f_x.ring
    sing_inf = Ideal([f_x, dehomogenize(F.diff("x"), "x"), dehomogenize(F.diff("y"), "x"),
                      dehomogenize(F.diff("z"), "x"), rx.gen("z")], rx)
    if not sing_inf.is_unit():
        raise ValidationError("curve has a singular point at infinity")

    genus = (n - 1) * (n - 2) // 2 - len(pts)
    if genus < 1:
        raise ValidationError(f"genus {genus} < 1")

    if P0 is None:
        raise ValidationError("a base point P0 is required")
    p0 = normalize_point(fld, P0)
    if F.evaluate(dict(zip("xyz", p0))) != 0:
        raise ValidationError(f"base point {format_point(fld, P0)} is not on the curve")
    if p0 in pts:
        raise ValidationError("base point must not be a node")

    fm = _choose_fixed_monomial(F, fixed_monomial)
    return PlaneCurve(F=F, n=n, nodes=node_objs, genus=genus, P0=p0, fixed_monomial=fm,
                      ring=ring, ring_z=rz, ring_x=rx, f_z=f_z, f_x=f_x)


def _choose_fixed_monomial(F: Poly, fixed) -> tuple[int, int]:
    n = F.degree()
    gens = F.ring.gens
    if fixed is None:
        e = F.leading_exponent(grlex("x", "y", "z"))
        d = dict(zip(gens, e))
        return (d["x"], d["y"])
    k, l = fixed
    e = tuple({"x": k, "y": l, "z": n - k - l}[v] for v in gens)
    if k < 0 or l < 0 or k + l > n or F.coefficient(e) == 0:
        raise ValidationError(f"fixed monomial {_mono_str(k, l, n)} does not occur in F")
    return (k, l)


# --------------------------------------------------------------------------
# interpolation bookkeeping
# --------------------------------------------------------------------------


def b_m(curve: PlaneCurve, m: int) -> int:
    """Number of point conditions absorbed by m-curves."""
    if m < 1:
        raise ValueError("m must be positive")
    if m < curve.n:
        return m * (m + 3) // 2
    return m * curve.n - curve.full_genus


def c_m(curve: PlaneCurve, m: int) -> int:
    return m * curve.n - b_m(curve, m)


def choose_m(curve: PlaneCurve, s_plus: int, s_minus: int) -> int:
    """Smallest m >= n - 2 with b_m >= max(s_plus, s_minus + g) + d."""
    need = max(s_plus, s_minus + curve.genus) + curve.d
    m = max(curve.n - 2, 1)
    while b_m(curve, m) < need:
        m += 1
    return m


def restricted_system_basis(curve: PlaneCurve, m: int) -> list[tuple[int, int, int]]:
    """Degree-m exponents (in x, y, z) not divisible by the fixed monomial."""
    if m < curve.n:
        raise ValueError("restricted system is defined for m >= n")
    k, l = curve.fixed_monomial
    fixed = (k, l, curve.n - k - l)
    out = [e for e in curve.ring.exponent_tuples(m)
           if not all(a >= b for a, b in zip(e, fixed))]
    assert len(out) == comb(m + 2, 2) - comb(m - curve.n + 2, 2)
    return out


def interpolation_exponents(curve: PlaneCurve, m: int) -> list[tuple[int, int, int]]:
    """All degree-m exponents for m < n, the restricted system otherwise."""
    if m < curve.n:
        return curve.ring.exponent_tuples(m)
    return restricted_system_basis(curve, m)


# --------------------------------------------------------------------------
# point and branch ideals
# --------------------------------------------------------------------------


def point_chart_ideals(curve: PlaneCurve, pt, mult: int) -> tuple[Ideal, Ideal]:
    """Chart ideals (z-chart, x-chart) of mult * pt for a smooth point."""
    fld = curve.field
    x, y, z = normalize_point(fld, pt)
    rz, rx = curve.ring_z, curve.ring_x
    if mult == 0:
        return Ideal.unit(rz), Ideal.unit(rx)
    if z != 0:
        X, Y = rz.gen("x") - rz.const(x), rz.gen("y") - rz.const(y)
        Iz = Ideal([X ** a * Y ** (mult - a) for a in range(mult + 1)] + [curve.f_z], rz)
    else:
        Iz = Ideal.unit(rz)
    if x != 0:
        yy, zz = fld.div(y, x), fld.div(z, x)
        Y, Z = rx.gen("y") - rx.const(yy), rx.gen("z") - rx.const(zz)
        Ix = Ideal([Y ** a * Z ** (mult - a) for a in range(mult + 1)] + [curve.f_x], rx)
    else:
        Ix = Ideal.unit(rx)
    return Iz, Ix


def branch_coefficients(node: Node, sign: str, k: int) -> list:
    """a_1 ... a_{k-1} of the branch series (k >= 2)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return node.branch(sign).coefficients(k - 1)


def branch_ideal_z(curve: PlaneCurve, node: Node, sign: str, k: int) -> Ideal:
    """Affine ideal of functions with k-fold contact with one node branch."""
    rz = curve.ring_z
    br = node.branch(sign)
    x0, y0, _ = node.location
    X, Y = rz.gen("x") - rz.const(x0), rz.gen("y") - rz.const(y0)
    if br.parameter == "y":
        X, Y = Y, X
    gens = [X ** a * Y ** (k - a) for a in range(k + 1)]
    if k >= 2:
        tail = Y
        for j, a in enumerate(br.coefficients(k - 1), start=1):
            if a != 0:
                tail = tail - X ** j * rz.const(a)
        gens.append(tail)
    else:
        gens = [X, Y]
    return Ideal(gens + [curve.f_z], rz)


def base_contact_charts(curve: PlaneCurve, r: int) -> tuple[Ideal, Ideal]:
    return point_chart_ideals(curve, curve.P0, r)


def base_contact_ideal(curve: PlaneCurve, r: int) -> Ideal:
    """Homogeneous ideal of forms with r-fold contact with C at P0."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        return Ideal.unit(curve.ring)
    Iz, Ix = base_contact_charts(curve, r)
    if curve.P0[2] != 0:
        return homogenize_ideal(Iz, "z")
    return homogenize_ideal(Ix, "x")


# --------------------------------------------------------------------------
# text format
# --------------------------------------------------------------------------

_KEYS = ("curve", "field", "nodes", "base_point", "fixed_monomial")


def read_curve_text(text: str) -> dict:
    """Parse ``key = value`` lines into raw strings, with line-precise errors."""
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KEYS:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in out:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        out[key] = (value, lineno)
    if "curve" not in out:
        raise ParseError("missing 'curve = <polynomial>' line")
    return out


def _tuples(text: str, lineno: int, size: int) -> list[tuple[str, ...]]:
    found = re.findall(r"\(([^()]*)\)", text)
    rest = re.sub(r"\(([^()]*)\)", "", text).strip(" []," + "\t")
    if rest:
        raise ParseError(f"line {lineno}: cannot parse {text!r}")
    out = []
    for grp in found:
        parts = tuple(p.strip() for p in grp.split(","))
        if len(parts) != size or not all(parts):
            raise ParseError(f"line {lineno}: expected {size} entries in ({grp})")
        out.append(parts)
    return out


def parse_curve_text(text: str) -> PlaneCurve:
    """Build and validate a curve from the ``key = value`` file format."""
    kv = read_curve_text(text)
    fld = parse_field(kv["field"][0]) if "field" in kv else QQ
    ring = PolyRing(fld, ("x", "y", "z"))
    value, lineno = kv["curve"]
    try:
        F = ring.parse(value)
    except ParseError as exc:
        raise ParseError(f"line {lineno}: {exc}") from None

    def coords(key):
        v, ln = kv[key]
        pts = _tuples(v, ln, 3)
        try:
            return [tuple(fld(c) for c in p) for p in pts], ln
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"line {ln}: bad coordinate: {exc}") from None

    nodes = coords("nodes")[0] if "nodes" in kv else []
    if "base_point" not in kv:
        raise ParseError("missing 'base_point = (x,y,z)' line")
    base, ln = coords("base_point")
    if len(base) != 1:
        raise ParseError(f"line {ln}: expected exactly one base point")
    fixed = None
    if "fixed_monomial" in kv:
        v, ln = kv["fixed_monomial"]
        pair = _tuples(v, ln, 2)
        if len(pair) != 1:
            raise ParseError(f"line {ln}: expected one pair (k,l)")
        try:
            fixed = tuple(int(a) for a in pair[0])
        except ValueError:
            raise ParseError(f"line {ln}: exponents must be integers") from None
    return validate_curve(F, nodes, base[0], fixed)


__all__ = [
    "BranchExpansion", "Node", "PlaneCurve", "validate_curve", "b_m", "c_m", "choose_m",
    "restricted_system_basis", "interpolation_exponents", "point_chart_ideals",
    "branch_coefficients", "branch_ideal_z", "base_contact_ideal", "base_contact_charts",
    "normalize_point", "homogenize", "parse_curve_text", "read_curve_text",
]
