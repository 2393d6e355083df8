"""Hyperelliptic and Picard/superelliptic curves with P0 at infinity.

Divisors are affine ideals in K[x, y]; the point at infinity is folded into
the -deg(D) P0 bookkeeping.  Cantor's algorithm serves as an independent
check of the hyperelliptic reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .algebra import Field, Poly, PolyRing, lex, weighted
from .errors import ValidationError
from .groebner import Ideal

# --------------------------------------------------------------------------
# dense univariate polynomials: lists of raw field values, low degree first
# --------------------------------------------------------------------------


def u_trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def u_deg(a: list) -> int:
    return len(a) - 1 if a else -1


def u_add(K: Field, a, b):
    n = max(len(a), len(b))
    return u_trim([K.add(a[i] if i < len(a) else K.zero, b[i] if i < len(b) else K.zero)
                   for i in range(n)])


def u_neg(K: Field, a):
    return [K.neg(c) for c in a]


def u_sub(K: Field, a, b):
    return u_add(K, a, u_neg(K, b))


def u_mul(K: Field, a, b):
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return u_trim(out)


def u_scale(K: Field, a, c):
    return u_trim([K.mul(x, c) for x in a])


def u_divmod(K: Field, a, b):
    b = u_trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = u_trim(a)
    inv = K.inv(b[-1])
    q = [K.zero] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = K.mul(a[-1], inv)
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = K.sub(a[i + k], K.mul(c, y))
        a = u_trim(a)
    return u_trim(q), a


def u_mod(K: Field, a, b):
    return u_divmod(K, a, b)[1]


def u_monic(K: Field, a):
    a = u_trim(a)
    return u_scale(K, a, K.inv(a[-1])) if a else a


def u_xgcd(K: Field, a, b):
    """(d, s, t) with d = s a + t b monic (or zero)."""
    r0, r1 = u_trim(a), u_trim(b)
    s0, s1, t0, t1 = [K.one], [], [], [K.one]
    while r1:
        q, r = u_divmod(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, u_sub(K, s0, u_mul(K, q, s1))
        t0, t1 = t1, u_sub(K, t0, u_mul(K, q, t1))
    if not r0:
        return [], [], []
    inv = K.inv(r0[-1])
    return u_scale(K, r0, inv), u_scale(K, s0, inv), u_scale(K, t0, inv)


def u_derivative(K: Field, a):
    return u_trim([K.mul(K(i), c) for i, c in enumerate(a)][1:])


def u_eval(K: Field, a, x):
    acc = K.zero
    for c in reversed(a):
        acc = K.add(K.mul(acc, x), c)
    return acc


def u_from_poly(f: Poly, var: str = "x") -> list:
    i = f.ring.gens.index(var)
    if any(sum(e) != e[i] for e in f.terms):
        raise ValidationError(f"{f} is not a polynomial in {var} alone")
    out = [f.ring.field.zero] * (f.degree() + 1 if not f.is_zero() else 0)
    for e, c in f.terms.items():
        out[e[i]] = c
    return u_trim(out)


def u_to_poly(ring: PolyRing, a, var: str = "x") -> Poly:
    i = ring.gens.index(var)
    terms = {}
    for k, c in enumerate(a):
        if c != 0:
            e = [0] * ring.nvars
            e[i] = k
            terms[tuple(e)] = c
    return Poly(ring, terms)


def u_resultant(K: Field, a, b):
    """Resultant of two univariate polynomials (Euclidean algorithm)."""
    a, b = u_trim(a), u_trim(b)
    if not a or not b:
        return K.zero
    res = K.one
    while u_deg(b) > 0:
        r = u_mod(K, a, b)
        if not r:
            return K.zero
        da, db, dr = u_deg(a), u_deg(b), u_deg(r)
        if (da * db) % 2:
            res = K.neg(res)
        res = K.mul(res, _pow(K, b[-1], da - dr))
        a, b = b, r
    return K.mul(res, _pow(K, b[0], u_deg(a)))


def _pow(K, x, k):
    out = K.one
    for _ in range(k):
        out = K.mul(out, x)
    return out


# --------------------------------------------------------------------------
# curve records
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SuperellipticCurve:
    """y^m = h(x) with deg h coprime to m; m = 2 hyperelliptic, m = 3 Picard."""

    field: Field
    m: int
    h: tuple  # raw coefficients, low degree first

    def __post_init__(self):
        h = u_trim(list(self.h))
        K = self.field
        if self.m < 2:
            raise ValidationError("exponent of y must be at least 2")
        if u_deg(h) < 3:
            raise ValidationError("h must have degree at least 3")
        if gcd(self.m, u_deg(h)) != 1:
            raise ValidationError(f"gcd(m, deg h) = gcd({self.m}, {u_deg(h)}) must be 1")
        char = getattr(K, "p", 0)
        if char and self.m % char == 0:
            raise ValidationError(f"characteristic {char} divides m = {self.m}")
        dh = u_derivative(K, h)
        d, _, _ = u_xgcd(K, h, dh)
        if u_deg(d) > 0:
            raise ValidationError("h has a repeated root")
        object.__setattr__(self, "h", tuple(h))

    @property
    def n(self) -> int:
        return len(self.h) - 1

    @property
    def genus(self) -> int:
        return (self.m - 1) * (self.n - 1) // 2

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.field, ("x", "y"))

    @property
    def equation(self) -> Poly:
        R = self.ring
        return R.gen("y") ** self.m - u_to_poly(R, list(self.h))

    @property
    def curve_ideal(self) -> Ideal:
        return Ideal([self.equation], self.ring)

    @property
    def order(self):
        """Pole-order weighted order at infinity, ties broken with y > x."""
        return weighted({"x": self.m, "y": self.n}, "y", "x")

    def on_curve(self, x, y) -> bool:
        return self.equation.evaluate({"x": x, "y": y}) == 0

    def points(self) -> list[tuple]:
        """All affine K-points (prime fields only)."""
        p = getattr(self.field, "p", None)
        if p is None:
            raise ValidationError("point enumeration needs a finite field")
        return [(a, b) for a in range(p) for b in range(p) if self.on_curve(a, b)]

    def divisor_ideal(self, points) -> Ideal:
        """Ideal of a sum of affine points (repetition means multiplicity)."""
        R, K = self.ring, self.field
        counts: dict = {}
        for x, y in points:
            x, y = K(x), K(y)
            if not self.on_curve(x, y):
                raise ValidationError(f"({x}, {y}) is not on the curve")
            counts[(x, y)] = counts.get((x, y), 0) + 1
        I = Ideal.unit(R)
        for (x, y), k in counts.items():
            mx = Ideal([R.gen("x") - R.const(x), R.gen("y") - R.const(y)], R)
            P = Ideal.unit(R)
            for _ in range(k):
                P = P * mx
            I = I * P.plus(self.equation)
        return I.plus(self.equation)


def HyperellipticCurve(field: Field, h) -> SuperellipticCurve:
    return SuperellipticCurve(field, 2, tuple(_coeffs(field, h)))


def PicardCurve(field: Field, h) -> SuperellipticCurve:
    c = SuperellipticCurve(field, 3, tuple(_coeffs(field, h)))
    if c.n != 4:
        raise ValidationError("a Picard curve needs a quartic h")
    return c


def _coeffs(field, h):
    if isinstance(h, Poly):
        return u_from_poly(h)
    return u_trim([field(c) for c in h])


# --------------------------------------------------------------------------
# ideal-level reduction
# --------------------------------------------------------------------------


def involution(I: Ideal) -> Ideal:
    """Image under y -> -y."""
    R = I.ring
    return Ideal([g.substitute({"y": -R.gen("y")}) for g in I.gens], R)


def weighted_min_element(I: Ideal, weights) -> Poly:
    """Element of I with the smallest leading monomial (ties y > x)."""
    if I.is_zero():
        raise ValidationError("zero ideal has no minimal element")
    if isinstance(weights, tuple):
        weights = {"x": weights[0], "y": weights[1]}
    order = weighted(dict(weights), "y", "x")
    return I.groebner_basis(order)[0]


def _check_affine(curve, I: Ideal):
    if I.ring != curve.ring:
        raise ValidationError(f"divisor ideal must live in {curve.ring}")
    I = I.plus(curve.equation)
    if not I.is_zero_dimensional():
        raise ValidationError("divisor ideal is not zero-dimensional")
    return I


def weighted_degree(curve, f: Poly) -> int:
    e = f.leading_exponent(curve.order)
    w = {"x": curve.m, "y": curve.n}
    return sum(w[v] * k for v, k in zip(f.ring.gens, e))


def he_reduce(curve: SuperellipticCurve, Iplus: Ideal, Iminus: Ideal) -> Ideal:
    """Reduced ideal of D+ - D- in one quotient step."""
    if curve.m != 2:
        raise ValidationError("he_reduce needs a hyperelliptic curve")
    Iplus, Iminus = _check_affine(curve, Iplus), _check_affine(curve, Iminus)
    J = (Iplus * involution(Iminus)).plus(curve.equation)
    f = J.groebner_basis(curve.order)[0]
    res = Ideal([f, curve.equation], curve.ring).quotient(J)
    return involution(res)


def pc_reduce(curve: SuperellipticCurve, Iplus: Ideal, Iminus: Ideal) -> Ideal:
    """Reduced ideal of D+ - D- in two quotient steps (any m >= 2)."""
    Iplus, Iminus = _check_affine(curve, Iplus), _check_affine(curve, Iminus)
    C = curve.equation
    f = Iplus.groebner_basis(curve.order)[0]
    Dp = Ideal([f, C], curve.ring).quotient(Iplus)
    M = (Dp * Iminus).plus(C)
    g = M.groebner_basis(curve.order)[0]
    return Ideal([g, C], curve.ring).quotient(M)


def reduced_degree(I: Ideal) -> int:
    return I.quotient_dimension()


def norm(curve: SuperellipticCurve, f: Poly) -> list:
    """Res_y(f, y^m - h) as a univariate polynomial in x (coefficient list).

    For m = 3 and f = p + q y + r y^2 this is p^3 + q^3 h + r^3 h^2 - 3pqrh.
    """
    K, m = curve.field, curve.m
    iy = f.ring.gens.index("y")
    ix = f.ring.gens.index("x")
    coeffs = [[] for _ in range(max(e[iy] for e in f.terms) + 1)]
    for e, c in f.terms.items():
        a = coeffs[e[iy]]
        a += [K.zero] * (e[ix] + 1 - len(a))
        a[e[ix]] = K.add(a[e[ix]], c)
    coeffs = [u_trim(a) for a in coeffs]
    if len(coeffs) > m:
        raise ValidationError("reduce f modulo the curve first")
    # determinant of multiplication by f on K(x)[y]/(y^m - h)
    h = list(curve.h)
    mat = [[[] for _ in range(m)] for _ in range(m)]
    for i in range(m):  # column i: f * y^i
        for j, q in enumerate(coeffs):
            k = i + j
            val = q
            if k >= m:
                k -= m
                val = u_mul(K, q, h)
            mat[k][i] = u_add(K, mat[k][i], val)
    return _det(K, mat)


def _det(K, mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = []
    for j in range(n):
        if not mat[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = u_mul(K, mat[0][j], _det(K, minor))
        total = u_sub(K, total, term) if j % 2 else u_add(K, total, term)
    return total


# --------------------------------------------------------------------------
# Mumford representation and Cantor's algorithm
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MumfordPair:
    u: tuple
    v: tuple

    def degree(self) -> int:
        return u_deg(list(self.u))


def mumford(curve: SuperellipticCurve, u, v) -> MumfordPair:
    K = curve.field
    u = u_monic(K, _coeffs(K, u))
    v = u_mod(K, _coeffs(K, v), u) if u_deg(u) > 0 else []
    if not u:
        raise ValidationError("u must be nonzero")
    if u_mod(K, u_sub(K, u_mul(K, v, v), list(curve.h)), u):
        raise ValidationError("v^2 is not congruent to h modulo u")
    return MumfordPair(tuple(u), tuple(v))


def ideal_to_mumford(curve: SuperellipticCurve, I: Ideal) -> MumfordPair:
    """(u(x), y - v(x)) -> (u, v); other shapes raise."""
    K = curve.field
    gb = I.plus(curve.equation).groebner_basis(lex("y", "x"))
    if len(gb) == 1 and gb[0].is_constant():
        return MumfordPair((K.one,), ())
    if len(gb) != 2:
        raise ValidationError("ideal is not of the form (u(x), y - v(x))")
    u = u_from_poly(gb[0])
    second = gb[1]
    iy = I.ring.gens.index("y")
    ylin = {e: c for e, c in second.terms.items() if e[iy] == 1}
    if list(ylin) != [tuple(1 if i == iy else 0 for i in range(2))]:
        raise ValidationError("ideal is not of the form (u(x), y - v(x))")
    lc = next(iter(ylin.values()))
    rest = Poly(I.ring, {e: c for e, c in second.terms.items() if e[iy] == 0})
    v = u_scale(K, u_from_poly(rest), K.neg(K.inv(lc)))
    return mumford(curve, u, v)


def mumford_to_ideal(curve: SuperellipticCurve, M: MumfordPair) -> Ideal:
    R = curve.ring
    return Ideal([u_to_poly(R, list(M.u)), R.gen("y") - u_to_poly(R, list(M.v)),
                  curve.equation], R)


def cantor_compose(curve: SuperellipticCurve, M1: MumfordPair, M2: MumfordPair) -> MumfordPair:
    """Semireduced sum of two Mumford pairs (general composition)."""
    K, h = curve.field, list(curve.h)
    u1, v1, u2, v2 = list(M1.u), list(M1.v), list(M2.u), list(M2.v)
    d1, e1, e2 = u_xgcd(K, u1, u2)
    d, c1, c2 = u_xgcd(K, d1, u_add(K, v1, v2))
    if not d:
        d, c1, c2 = d1, [K.one], []
    s1, s2, s3 = u_mul(K, c1, e1), u_mul(K, c1, e2), c2
    dd = u_mul(K, d, d)
    u, r = u_divmod(K, u_mul(K, u1, u2), dd)
    assert not r
    num = u_add(K, u_add(K, u_mul(K, s1, u_mul(K, u1, v2)), u_mul(K, s2, u_mul(K, u2, v1))),
                u_mul(K, s3, u_add(K, u_mul(K, v1, v2), h)))
    v, r = u_divmod(K, num, d)
    assert not r
    u = u_monic(K, u)
    return MumfordPair(tuple(u), tuple(u_mod(K, v, u)) if u_deg(u) > 0 else ())


def cantor_reduce_step(curve: SuperellipticCurve, M: MumfordPair) -> MumfordPair:
    K, h = curve.field, list(curve.h)
    u, v = list(M.u), list(M.v)
    up, r = u_divmod(K, u_sub(K, h, u_mul(K, v, v)), u)
    assert not r
    up = u_monic(K, up)
    vp = u_mod(K, u_neg(K, v), up) if u_deg(up) > 0 else []
    return MumfordPair(tuple(up), tuple(vp))


def cantor_compose_reduce(curve: SuperellipticCurve, M1: MumfordPair, M2: MumfordPair,
                          steps: list | None = None) -> MumfordPair:
    """Cantor's algorithm; intermediate pairs are appended to ``steps``."""
    if curve.m != 2:
        raise ValidationError("Cantor's algorithm needs a hyperelliptic curve")
    for M in (M1, M2):
        mumford(curve, list(M.u), list(M.v))
    M = cantor_compose(curve, M1, M2)
    if steps is not None:
        steps.append(M)
    while M.degree() > curve.genus:
        M = cantor_reduce_step(curve, M)
        if steps is not None:
            steps.append(M)
    return M


def cantor_negate(curve: SuperellipticCurve, M: MumfordPair) -> MumfordPair:
    K = curve.field
    return MumfordPair(M.u, tuple(u_neg(K, list(M.v))))


def format_upoly(K: Field, a, var: str = "x") -> str:
    R = PolyRing(K, (var,))
    return u_to_poly(R, a, var).to_str() if a else "0"


__all__ = [
    "SuperellipticCurve", "HyperellipticCurve", "PicardCurve", "MumfordPair", "involution",
    "weighted_min_element", "he_reduce", "pc_reduce", "norm", "mumford", "ideal_to_mumford",
    "mumford_to_ideal", "cantor_compose", "cantor_reduce_step", "cantor_compose_reduce",
    "cantor_negate", "weighted_degree", "u_resultant", "format_upoly",
]
