"""Exact scalars, monomial orders and sparse multivariate polynomials.

Coefficients are kept as raw field values (``gmpy2.mpq`` for the rationals,
plain ``int`` residues for prime fields) inside polynomials; the
:class:`Scalar` wrapper is the checked public face of a single element.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from gmpy2 import mpq

from .errors import AlgebraError, ParseError

NEG_INF = float("-inf")

# preferred position of well-known variable names inside a ring
_VAR_RANK = {"t": 0, "x": 1, "y": 2, "z": 3}


# --------------------------------------------------------------------------
# fields
# --------------------------------------------------------------------------


class Field:
    """Base class; concrete fields operate on raw element values."""

    zero: object
    one: object

    def __call__(self, value):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sqrt(self, a):
        """Return a square root of ``a`` in the field or ``None``."""
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def sort_key(self, a):
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __call__(self, value):
        if isinstance(value, str):
            return mpq(value.strip())
        return mpq(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def sqrt(self, a):
        if a < 0:
            return None
        num, den = int(a.numerator), int(a.denominator)
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return mpq(rn, rd)
        return None

    def sort_key(self, a):
        return a


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
            raise AlgebraError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __call__(self, value):
        if isinstance(value, str):
            value = mpq(value.strip())
        if isinstance(value, int):
            return value % self.p
        q = mpq(value)
        den = int(q.denominator)
        if den % self.p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes mod {self.p}")
        return int(q.numerator) * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def sqrt(self, a):
        p = self.p
        a %= p
        if a == 0 or p == 2:
            return a
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
        return min(r, p - r)

    def sort_key(self, a):
        return a


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str) -> Field:
    """``"Q"`` / ``"QQ"`` or ``"Fp 31"`` / ``"GF(31)"``."""
    s = spec.strip()
    if s in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:Fp|F_p|GF)\s*\(?\s*(\d+)\s*\)?", s)
    if not m:
        raise ParseError(f"unknown field {spec!r}")
    return GF(int(m.group(1)))


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field."""

    field: Field
    value: object

    @classmethod
    def of(cls, field: Field, value) -> "Scalar":
        return cls(field, field(value))

    def _other(self, other) -> object:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise AlgebraError(f"field mismatch: {self.field} vs {other.field}")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"Scalar({self.field}, {self.value})"

    def __str__(self):
        return str(self.value)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    ops = {"add": Scalar.__add__, "sub": Scalar.__sub__,
           "mul": Scalar.__mul__, "div": Scalar.__truediv__}
    if not isinstance(a, Scalar) or not isinstance(b, Scalar):
        raise AlgebraError("scalar_arith expects Scalar operands")
    if op not in ops:
        raise AlgebraError(f"unknown operation {op!r}")
    return ops[op](a, b)


# --------------------------------------------------------------------------
# monomials and orders
# --------------------------------------------------------------------------


def sort_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=lambda v: (_VAR_RANK.get(v, 99), v)))


class Monomial:
    """Power product stored as a sparse ``{variable: exponent}`` map."""

    __slots__ = ("_exps",)

    def __init__(self, exps: Mapping[str, int] | None = None, **kw: int):
        d = dict(exps or {}, **kw)
        for v, e in d.items():
            if not isinstance(e, int) or e < 0:
                raise AlgebraError(f"bad exponent {e!r} for {v}")
        self._exps = {v: e for v, e in d.items() if e}

    @property
    def exponents(self) -> dict[str, int]:
        return dict(self._exps)

    def degree(self) -> int:
        return sum(self._exps.values())

    def __getitem__(self, var: str) -> int:
        return self._exps.get(var, 0)

    def variables(self) -> set[str]:
        return set(self._exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        d = dict(self._exps)
        for v, e in other._exps.items():
            d[v] = d.get(v, 0) + e
        return Monomial(d)

    def divides(self, other: "Monomial") -> bool:
        return all(other[v] >= e for v, e in self._exps.items())

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._exps == other._exps

    def __hash__(self):
        return hash(frozenset(self._exps.items()))

    def __repr__(self):
        if not self._exps:
            return "1"
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in
                        sorted(self._exps.items(), key=lambda it: _VAR_RANK.get(it[0], 99)))


@dataclass(frozen=True)
class MonomialOrder:
    """Lex, graded-lex, weighted-degree-lex or a block elimination order.

    ``precedence`` lists variables from greatest to smallest; variables of a
    ring that are not listed follow in ring order.  ``weights`` are only used
    by the weighted kind, ``block``/``inner`` only by the elimination kind.
    """

    kind: str
    precedence: tuple[str, ...] = ()
    weights: tuple[tuple[str, int], ...] = ()
    block: tuple[str, ...] = ()
    inner: "MonomialOrder | None" = None

    def __post_init__(self):
        if self.kind not in ("lex", "grlex", "weighted", "block"):
            raise AlgebraError(f"unknown order kind {self.kind!r}")
        if self.kind == "block" and (not self.block or self.inner is None):
            raise AlgebraError("block order needs block variables and an inner order")

    def __str__(self):
        if self.kind == "weighted":
            return "weighted:" + ",".join(str(w) for _, w in self.weights)
        if self.kind == "block":
            return f"block({','.join(self.block)};{self.inner})"
        return self.kind

    def variables_for(self, gens: tuple[str, ...]) -> tuple[str, ...]:
        prec = [v for v in self.precedence if v in gens]
        return tuple(prec + [v for v in gens if v not in prec])

    def key(self, gens: tuple[str, ...]) -> Callable[[tuple[int, ...]], tuple]:
        return _order_key(self, gens)

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        gens = self._universe(m1.variables() | m2.variables())
        key = self.key(gens)
        k1 = key(tuple(m1[v] for v in gens))
        k2 = key(tuple(m2[v] for v in gens))
        return (k1 > k2) - (k1 < k2)

    def _universe(self, used: set[str]) -> tuple[str, ...]:
        declared = set(self.precedence) | {v for v, _ in self.weights} | set(self.block)
        if self.inner is not None:
            declared |= set(self.inner.precedence) | {v for v, _ in self.inner.weights}
        if declared:
            unknown = used - declared
            if unknown:
                raise AlgebraError(f"unknown variable(s) {sorted(unknown)} for order {self}")
            return sort_vars(declared)
        return sort_vars(used)


@lru_cache(maxsize=None)
def _order_key(order: MonomialOrder, gens: tuple[str, ...]):
    if order.kind == "block":
        inner_gens = tuple(v for v in gens if v not in order.block)
        bpos = [gens.index(v) for v in order.variables_for(tuple(v for v in gens if v in order.block))]
        ipos = [gens.index(v) for v in inner_gens]
        ikey = _order_key(order.inner, inner_gens)

        def key(e):
            return (sum(e[i] for i in bpos), tuple(e[i] for i in bpos),
                    ikey(tuple(e[i] for i in ipos)))
        return key
    perm = [gens.index(v) for v in order.variables_for(gens)]
    if order.kind == "lex":
        return lambda e: tuple(e[i] for i in perm)
    if order.kind == "grlex":
        return lambda e: (sum(e),) + tuple(e[i] for i in perm)
    wmap = dict(order.weights)
    missing = [v for v in gens if v not in wmap]
    if missing:
        raise AlgebraError(f"no weight for variable(s) {missing}")
    w = [wmap[v] for v in gens]
    return lambda e: (sum(a * b for a, b in zip(w, e)),) + tuple(e[i] for i in perm)


def lex(*precedence: str) -> MonomialOrder:
    return MonomialOrder("lex", tuple(precedence))


def grlex(*precedence: str) -> MonomialOrder:
    return MonomialOrder("grlex", tuple(precedence))


def weighted(weights: Mapping[str, int], *precedence: str) -> MonomialOrder:
    for v, w in weights.items():
        if w <= 0:
            raise AlgebraError(f"weight of {v} must be positive")
    return MonomialOrder("weighted", tuple(precedence), tuple(sorted(weights.items())))


def elimination(block: Iterable[str], inner: MonomialOrder) -> MonomialOrder:
    return MonomialOrder("block", block=tuple(block), inner=inner)


def compare_monomials(m1: Monomial, m2: Monomial, order: MonomialOrder) -> int:
    """-1, 0 or 1 according to ``order``."""
    return order.compare(m1, m2)


def parse_order(text: str) -> MonomialOrder:
    """``lex``, ``grlex`` or ``weighted:<wx>,<wy>`` (``y > x`` on ties)."""
    t = text.strip()
    if t == "lex":
        return lex()
    if t == "grlex":
        return grlex()
    m = re.fullmatch(r"weighted:\s*(\d+)\s*,\s*(\d+)", t)
    if m:
        return weighted({"x": int(m.group(1)), "y": int(m.group(2))}, "y", "x")
    raise ParseError(f"unknown order {text!r}")


# --------------------------------------------------------------------------
# polynomial rings
# --------------------------------------------------------------------------


class PolyRing:
    """A field together with an explicit, ordered variable universe."""

    __slots__ = ("field", "gens", "_hash")

    def __init__(self, field: Field, gens: Iterable[str]):
        gens = tuple(gens)
        if len(set(gens)) != len(gens):
            raise AlgebraError(f"repeated variables in {gens}")
        self.field = field
        self.gens = gens
        self._hash = hash((field, gens))

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.gens == other.gens and self.field == other.field

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.field}[{','.join(self.gens)}]"

    @property
    def nvars(self) -> int:
        return len(self.gens)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {} if c == 0 else {(0,) * len(self.gens): c})

    def gen(self, name: str) -> "Poly":
        if name not in self.gens:
            raise AlgebraError(f"{name!r} is not a variable of {self}")
        e = tuple(1 if v == name else 0 for v in self.gens)
        return Poly(self, {e: self.field.one})

    def monomial(self, exps: tuple[int, ...], coeff=1) -> "Poly":
        c = self.field(coeff)
        return Poly(self, {tuple(exps): c} if c != 0 else {})

    def from_dict(self, terms: Mapping[tuple[int, ...], object]) -> "Poly":
        f = self.field
        out = {}
        for e, c in terms.items():
            c = f(c)
            if c != 0:
                out[tuple(e)] = c
        return Poly(self, out)

    def extend(self, var: str) -> "PolyRing":
        if var in self.gens:
            raise AlgebraError(f"{var!r} already in {self}")
        return PolyRing(self.field, sort_vars(self.gens + (var,)))

    def drop(self, var: str) -> "PolyRing":
        if var not in self.gens:
            raise AlgebraError(f"{var!r} not in {self}")
        return PolyRing(self.field, tuple(v for v in self.gens if v != var))

    def exponent_tuples(self, degree: int) -> list[tuple[int, ...]]:
        return list(_compositions(degree, len(self.gens)))

    def monomials_of_degree(self, degree: int) -> list["Poly"]:
        return [self.monomial(e) for e in self.exponent_tuples(degree)]

    def parse(self, text: str) -> "Poly":
        return _Parser(self, text).parse()

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            return value.change_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------


class Poly:
    """Sparse polynomial: ``{exponent tuple: nonzero raw coefficient}``."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic predicates ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def degree(self, var: str | None = None):
        if not self.terms:
            return NEG_INF
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.ring.gens.index(var)
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            used.update(v for v, k in zip(self.ring.gens, e) if k)
        return used

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def __len__(self):
        return len(self.terms)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise AlgebraError(f"universe mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, Scalar):
            if other.field != self.ring.field:
                raise AlgebraError("field mismatch")
            return self.ring.const(other.value)
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        add = self.ring.field.add
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                s = add(v, c)
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Poly(self.ring, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        add, mul = f.add, f.mul
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                p = mul(c1, c2)
                out[e] = p if v is None else add(v, p)
        return Poly(self.ring, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise AlgebraError("negative power")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        f = self.ring.field
        c = f(c)
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {e: f.mul(v, c) for e, v in self.terms.items()})

    def mul_monomial(self, exps: tuple[int, ...], c=None) -> "Poly":
        f = self.ring.field
        if c is None:
            return Poly(self.ring, {tuple(a + b for a, b in zip(e, exps)): v
                                    for e, v in self.terms.items()})
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, exps)): f.mul(v, c)
                                for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- order-dependent queries -----------------------------------------
    def leading_exponent(self, order: MonomialOrder) -> tuple[int, ...]:
        if not self.terms:
            raise AlgebraError("zero polynomial has no leading term")
        return max(self.terms, key=order.key(self.ring.gens))

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        e = self.leading_exponent(order)
        return Monomial(dict(zip(self.ring.gens, e)))

    def leading_coefficient(self, order: MonomialOrder):
        return self.terms[self.leading_exponent(order)]

    def sorted_terms(self, order: MonomialOrder) -> list[tuple[tuple[int, ...], object]]:
        key = order.key(self.ring.gens)
        return sorted(self.terms.items(), key=lambda it: key(it[0]), reverse=True)

    def monic(self, order: MonomialOrder) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def normalized(self, order: MonomialOrder) -> "Poly":
        """Canonical scalar multiple: primitive integral with positive leading
        coefficient over QQ, monic over a prime field."""
        if not self.terms:
            return self
        f = self.ring.field
        if isinstance(f, PrimeField):
            return self.monic(order)
        den = 1
        for c in self.terms.values():
            den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
        nums = [int(c * den) for c in self.terms.values()]
        g = 0
        for n in nums:
            g = math.gcd(g, n)
        s = den / mpq(g)
        if self.leading_coefficient(order) < 0:
            s = -s
        return Poly(self.ring, {e: c * s for e, c in self.terms.items()})

    # -- evaluation and substitution --------------------------------------
    def evaluate(self, point: Mapping[str, object]):
        f = self.ring.field
        vals = [f(point[v]) if v in point else None for v in self.ring.gens]
        total = f.zero
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    if v is None:
                        raise AlgebraError("evaluate needs every occurring variable")
                    t = f.mul(t, _fpow(f, v, k))
            total = f.add(total, t)
        return total

    def substitute(self, mapping: Mapping[str, "Poly"], ring: PolyRing | None = None) -> "Poly":
        """Replace variables by polynomials of ``ring`` (default: own ring).
        Variables not in ``mapping`` must exist in the target ring."""
        ring = ring or self.ring
        images = []
        for v in self.ring.gens:
            if v in mapping:
                images.append(ring(mapping[v]))
            else:
                images.append(ring.gen(v))
        powers: list[dict[int, Poly]] = [dict() for _ in images]

        def pw(i, k):
            if k not in powers[i]:
                powers[i][k] = images[i] ** k
            return powers[i][k]

        acc: dict = {}
        f = ring.field
        for e, c in self.terms.items():
            t = ring.const(c)
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            for te, tc in t.terms.items():
                acc[te] = f.add(acc.get(te, f.zero), tc)
        return Poly(ring, {e: c for e, c in acc.items() if c != 0})

    def change_ring(self, ring: PolyRing) -> "Poly":
        """Re-embed into a ring over the same field whose variables cover
        the ones actually used."""
        if ring.field != self.ring.field:
            raise AlgebraError("field mismatch")
        pos = []
        for i, v in enumerate(self.ring.gens):
            if v in ring.gens:
                pos.append(ring.gens.index(v))
            else:
                pos.append(None)
        out = {}
        n = len(ring.gens)
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise AlgebraError(f"variable {self.ring.gens[i]} missing in {ring}")
                    new[pos[i]] = k
            out[tuple(new)] = c
        return Poly(ring, out)

    def diff(self, var: str) -> "Poly":
        i = self.ring.gens.index(var)
        f = self.ring.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                v = f.mul(c, f(k))
                if v != 0:
                    out[e[:i] + (k - 1,) + e[i + 1:]] = v
        return Poly(self.ring, out)

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == degree})

    # -- printing -----------------------------------------------------------
    def to_str(self, order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        order = order or grlex()
        f = self.ring.field
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.ring.gens, e) if k)
            if isinstance(f, PrimeField):
                neg, mag = False, str(c)
            else:
                neg, mag = c < 0, str(abs(c))
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r}, {self.ring})"


def _fpow(field: Field, v, k: int):
    if isinstance(field, PrimeField):
        return pow(v, k, field.p)
    return v ** k


# --------------------------------------------------------------------------
# (de)homogenization
# --------------------------------------------------------------------------


def homogenize(f: Poly, var: str, target_degree: int | None = None) -> Poly:
    """Multiply each term by ``var`` to reach a common degree; the result
    lives in the ring extended by ``var``."""
    ring = f.ring.extend(var)
    if f.is_zero():
        return ring.zero()
    d = f.degree()
    if target_degree is None:
        target_degree = d
    elif target_degree < d:
        raise AlgebraError(f"target degree {target_degree} < degree {d}")
    i = ring.gens.index(var)
    out = {}
    for e, c in f.terms.items():
        new = list(e)
        new.insert(i, target_degree - sum(e))
        out[tuple(new)] = c
    return Poly(ring, out)


def dehomogenize(f: Poly, var: str) -> Poly:
    """Set ``var := 1``; the result lives in the ring without ``var``."""
    ring = f.ring.drop(var)
    i = f.ring.gens.index(var)
    add = f.ring.field.add
    out: dict = {}
    for e, c in f.terms.items():
        k = e[:i] + e[i + 1:]
        v = out.get(k)
        out[k] = c if v is None else add(v, c)
    return Poly(ring, {e: c for e, c in out.items() if c != 0})


# --------------------------------------------------------------------------
# division
# --------------------------------------------------------------------------


def normal_form(f: Poly, basis: list[Poly], order: MonomialOrder) -> Poly:
    """Remainder of multivariate division of ``f`` by ``basis`` (in order)."""
    basis = [b for b in basis if not b.is_zero()]
    if not basis:
        raise AlgebraError("normal_form needs a nonempty basis")
    for b in basis:
        f._check(b)
    key = order.key(f.ring.gens)
    fld = f.ring.field
    leads = [(b.leading_exponent(order), b) for b in basis]
    leads = [(le, fld.inv(b.terms[le]), b) for le, b in leads]
    p = dict(f.terms)
    r = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for le, linv, b in leads:
            if all(a >= q for a, q in zip(m, le)):
                q = tuple(a - q for a, q in zip(m, le))
                factor = fld.mul(c, linv)
                for be, bc in b.terms.items():
                    ne = tuple(a + s for a, s in zip(be, q))
                    v = fld.sub(p.get(ne, fld.zero), fld.mul(factor, bc))
                    if v == 0:
                        p.pop(ne, None)
                    else:
                        p[ne] = v
                break
        else:
            r[m] = c
            del p[m]
    return Poly(f.ring, r)


def poly_arith(f: Poly, g: Poly, op: str) -> Poly:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "sub":
        return f - g
    raise AlgebraError(f"unknown operation {op!r}")


# --------------------------------------------------------------------------
# text grammar
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at {pos} in {text!r}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("var", name))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self) -> Poly:
        p = self.power()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                p = p * self.power()
            elif tok == ("op", "/"):
                self.take()
                d = self.power()
                if not d.is_constant() or d.is_zero():
                    raise ParseError("can only divide by nonzero constants")
                p = p.scale(self.ring.field.inv(d.terms[next(iter(d.terms))]))
            elif tok[0] in ("num", "var") or tok == ("op", "("):
                p = p * self.power()
            else:
                return p

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            base = base ** val
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "var":
            if val not in self.ring.gens:
                raise ParseError(f"unknown variable {val!r} (ring has {', '.join(self.ring.gens)})")
            return self.ring.gen(val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return p
        if (kind, val) == ("op", "-"):
            return -self.power()
        raise ParseError(f"unexpected token {val!r}")
