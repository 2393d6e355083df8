"""Buchberger's algorithm and the ideal toolkit built on it."""

from __future__ import annotations

import heapq
import math
import threading
from typing import Iterable

from .algebra import (
    MonomialOrder,
    Poly,
    PolyRing,
    dehomogenize,
    elimination,
    grlex,
    homogenize,
)
from .errors import AlgebraError, InvariantViolation
from .linalg import nullspace, rref

INFINITE = math.inf


# --------------------------------------------------------------------------
# low level: monic polynomials as (leading exponent, terms) pairs
# --------------------------------------------------------------------------


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _reduce(terms: dict, basis: list, key, field) -> dict:
    """Full reduction of ``terms`` modulo monic ``basis`` [(lead, terms)]."""
    if not basis or not terms:
        return dict(terms)
    sub, mul = field.sub, field.mul
    p = dict(terms)
    heap = [(tuple(-k for k in _flat(key(m))), m) for m in p]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        for lead, g in basis:
            if _divides(lead, m):
                break
        else:
            rem[m] = c
            continue
        q = tuple(a - b for a, b in zip(m, lead))
        for ge, gc in g.items():
            if ge == lead:
                continue
            ne = tuple(a + b for a, b in zip(ge, q))
            v = p.get(ne)
            if v is None:
                p[ne] = field.neg(mul(c, gc))
                heapq.heappush(heap, (tuple(-k for k in _flat(key(ne))), ne))
            else:
                v = sub(v, mul(c, gc))
                if v == 0:
                    del p[ne]
                else:
                    p[ne] = v
    return rem


def _flat(k):
    # block-order keys nest tuples; flatten for negation
    out = []
    for x in k:
        if isinstance(x, tuple):
            out.extend(_flat(x))
        else:
            out.append(x)
    return out


def _monic(terms: dict, lead, field) -> dict:
    c = terms[lead]
    if c == field.one:
        return terms
    inv = field.inv(c)
    return {e: field.mul(v, inv) for e, v in terms.items()}


def buchberger(polys: Iterable[Poly], order: MonomialOrder) -> list[Poly]:
    """Reduced Groebner basis (monic, ascending leading monomials).

    Pairs are processed by the sugar strategy; the coprime-leading-term and
    chain criteria discard useless S-pairs.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    ring = polys[0].ring
    field = ring.field
    key = order.key(ring.gens)

    def lead_of(t):
        return max(t, key=key)

    G: list[tuple] = []          # (lead, terms, sugar)
    pairs: dict = {}

    def add(terms, sugar):
        lead = lead_of(terms)
        terms = _monic(terms, lead, field)
        n = len(G)
        G.append((lead, terms, sugar))
        dl = sum(lead)
        for i, (li, _, si) in enumerate(G[:-1]):
            lcm = tuple(max(a, b) for a, b in zip(li, lead))
            dd = sum(lcm)
            s = max(si + dd - sum(li), sugar + dd - dl)
            pairs[(i, n)] = (s, key(lcm), lcm)

    def basis():
        return [(le, t) for le, t, _ in G]

    start = sorted(polys, key=lambda p: key(lead_of(p.terms)))
    for p in start:
        r = _reduce(p.terms, basis(), key, field)
        if r:
            add(r, max(sum(e) for e in p.terms))

    while pairs:
        ij = min(pairs, key=lambda k: (pairs[k][0], pairs[k][1], k))
        sugar, _, lcm = pairs.pop(ij)
        i, j = ij
        li, ti, _ = G[i]
        lj, tj, _ = G[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        chain = False
        for k, (lk, _, _) in enumerate(G):
            if k == i or k == j or not _divides(lk, lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                chain = True
                break
        if chain:
            continue
        qi = tuple(a - b for a, b in zip(lcm, li))
        qj = tuple(a - b for a, b in zip(lcm, lj))
        s = {}
        for e, c in ti.items():
            s[tuple(a + b for a, b in zip(e, qi))] = c
        for e, c in tj.items():
            ne = tuple(a + b for a, b in zip(e, qj))
            v = field.sub(s.get(ne, field.zero), c)
            if v == 0:
                s.pop(ne, None)
            else:
                s[ne] = v
        r = _reduce(s, basis(), key, field)
        if r:
            add(r, sugar)

    # minimal basis, then inter-reduce the tails
    items = sorted(((le, t) for le, t, _ in G), key=lambda it: key(it[0]))
    # a divisor of a lead has a smaller key, so scanning upward suffices
    minimal = []
    for le, t in items:
        if not any(_divides(lo, le) for lo, _ in minimal):
            minimal.append((le, t))
    out = []
    for idx, (le, t) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = _reduce(t, others, key, field)
        if le not in r:
            raise InvariantViolation("leading term vanished during inter-reduction")
        out.append(Poly(ring, _monic(r, le, field)))
    return out


# --------------------------------------------------------------------------
# ideals
# --------------------------------------------------------------------------


class Ideal:
    """Finitely generated ideal with a per-order cache of reduced bases."""

    def __init__(self, gens: Iterable[Poly], ring: PolyRing | None = None):
        gens = tuple(gens)
        if ring is None:
            if not gens:
                raise AlgebraError("empty generator list needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise AlgebraError(f"universe mismatch: {g.ring} vs {ring}")
        self.ring = ring
        self.gens = tuple(g for g in gens if not g.is_zero())
        self._gb: dict[MonomialOrder, tuple[Poly, ...]] = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        I = cls([ring.one()], ring)
        return I

    def __repr__(self):
        return f"Ideal({', '.join(g.to_str() for g in self.gens)}) in {self.ring}"

    # -- bases ------------------------------------------------------------
    def basis(self, order: MonomialOrder | None = None) -> tuple[Poly, ...]:
        """Monic reduced Groebner basis, ascending by leading monomial."""
        order = order or grlex()
        gb = self._gb.get(order)
        if gb is None:
            gb = tuple(buchberger(self.gens, order))
            with self._lock:
                self._gb.setdefault(order, gb)
        return gb

    def _seed(self, order: MonomialOrder, gb: Iterable[Poly]) -> None:
        with self._lock:
            self._gb.setdefault(order, tuple(gb))

    def groebner_basis(self, order: MonomialOrder | None = None) -> list[Poly]:
        """Reduced basis with canonical scalar normalization."""
        order = order or grlex()
        return [g.normalized(order) for g in self.basis(order)]

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        gb = self.basis()
        return len(gb) == 1 and gb[0].is_constant()

    def reduce(self, f: Poly, order: MonomialOrder | None = None) -> Poly:
        order = order or grlex()
        if f.ring != self.ring:
            raise AlgebraError(f"universe mismatch: {f.ring} vs {self.ring}")
        gb = self.basis(order)
        if not gb:
            return f
        key = order.key(self.ring.gens)
        basis = [(g.leading_exponent(order), g.terms) for g in gb]
        return Poly(self.ring, _reduce(f.terms, basis, key, self.ring.field))

    def contains(self, f: Poly) -> bool:
        return self.reduce(f).is_zero()

    def __contains__(self, f: Poly) -> bool:
        return self.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.basis() == other.basis()

    __hash__ = None

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Ideal"):
        if self.ring != other.ring:
            raise AlgebraError(f"universe mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.gens + other.gens, self.ring)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        a = self.basis() if len(self.gens) > len(self.basis()) else self.gens
        b = other.basis() if len(other.gens) > len(other.basis()) else other.gens
        return Ideal([f * g for f in a for g in b], self.ring)

    def plus(self, *polys: Poly) -> "Ideal":
        return Ideal(self.gens + tuple(polys), self.ring)

    def intersect(self, other: "Ideal", order: MonomialOrder | None = None) -> "Ideal":
        return ideal_intersection(self, other, order)

    def quotient(self, other: "Ideal") -> "Ideal":
        return ideal_quotient(self, other)

    def map(self, fn) -> "Ideal":
        gens = [fn(g) for g in self.gens]
        ring = gens[0].ring if gens else None
        return Ideal(gens, ring) if gens else self

    # -- dimension --------------------------------------------------------
    def standard_monomials(self, order: MonomialOrder | None = None) -> list[tuple[int, ...]] | None:
        """Exponents outside the leading-term ideal; ``None`` if infinitely many."""
        order = order or grlex()
        gb = self.basis(order)
        n = self.ring.nvars
        if not gb:
            return None
        leads = [g.leading_exponent(order) for g in gb]
        bounds = []
        for i in range(n):
            pure = [le[i] for le in leads if all(le[j] == 0 for j in range(n) if j != i)]
            if not pure:
                return None
            bounds.append(min(pure))
        out = []

        def rec(prefix):
            k = len(prefix)
            if k == n:
                e = tuple(prefix)
                if not any(_divides(le, e) for le in leads):
                    out.append(e)
                return
            for a in range(bounds[k]):
                rec(prefix + [a])

        rec([])
        key = order.key(self.ring.gens)
        out.sort(key=key)
        return out

    def quotient_dimension(self, order: MonomialOrder | None = None):
        std = self.standard_monomials(order)
        return INFINITE if std is None else len(std)

    def is_zero_dimensional(self) -> bool:
        return self.standard_monomials() is not None


# --------------------------------------------------------------------------
# module level API
# --------------------------------------------------------------------------


def groebner_basis(I: Ideal, order: MonomialOrder | None = None) -> list[Poly]:
    return I.groebner_basis(order)


def membership(f: Poly, I: Ideal) -> bool:
    return I.contains(f)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return I + J


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return I * J


def quotient_dimension(I: Ideal):
    return I.quotient_dimension()


def _fresh(ring: PolyRing, base: str = "t") -> str:
    name, k = base, 0
    while name in ring.gens:
        k += 1
        name = f"{base}{k}"
    return name


def ideal_intersection(I: Ideal, J: Ideal, order: MonomialOrder | None = None) -> Ideal:
    """I ∩ J by eliminating ``t`` from t·I + (1 - t)·J."""
    I._check(J)
    ring = I.ring
    order = order or grlex()
    if I.is_zero() or J.is_zero():
        return Ideal([], ring)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    t = _fresh(ring)
    big = ring.extend(t)
    tt = big.gen(t)
    one_minus_t = big.one() - tt
    gens = [tt * g.change_ring(big) for g in I.basis(order)]
    gens += [one_minus_t * g.change_ring(big) for g in J.basis(order)]
    elim = elimination([t], order)
    gb = buchberger(gens, elim)
    ti = big.gens.index(t)
    kept = [g.change_ring(ring) for g in gb if all(e[ti] == 0 for e in g.terms)]
    out = Ideal(kept, ring)
    out._seed(order, kept)
    return out


def exact_divide(f: Poly, g: Poly) -> Poly:
    """Quotient of f by g; raises if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    order = grlex()
    field = f.ring.field
    lg = g.leading_exponent(order)
    inv = field.inv(g.terms[lg])
    rem = f
    q = {}
    while not rem.is_zero():
        lr = rem.leading_exponent(order)
        if not _divides(lg, lr):
            raise InvariantViolation("exact division failed")
        e = tuple(a - b for a, b in zip(lr, lg))
        c = field.mul(rem.terms[lr], inv)
        q[e] = c
        rem = rem - g.mul_monomial(e, c)
    return Poly(f.ring, q)


def ideal_quotient(I: Ideal, J: Ideal, method: str = "auto") -> Ideal:
    """I : J.

    ``method="elimination"`` intersects (I ∩ (g)) / g over the generators g
    of J.  ``"linear"`` requires a zero-dimensional I and solves for the
    kernel of multiplication by J on the finite-dimensional quotient ring;
    ``"auto"`` picks ``linear`` whenever I is zero-dimensional.
    """
    I._check(J)
    if J.is_zero():
        return Ideal.unit(I.ring)
    if method == "auto":
        method = "linear" if I.is_zero_dimensional() else "elimination"
    if method == "linear":
        return _quotient_linear(I, J)
    if method != "elimination":
        raise AlgebraError(f"unknown quotient method {method!r}")
    result = None
    for g in J.basis():
        if g.is_constant():
            part = I
        else:
            inter = ideal_intersection(I, Ideal([g], I.ring))
            part = Ideal([exact_divide(h, g) for h in inter.basis()], I.ring)
        result = part if result is None else ideal_intersection(result, part)
    return result


def _quotient_linear(I: Ideal, J: Ideal) -> Ideal:
    order = grlex()
    std = I.standard_monomials(order)
    if std is None:
        raise AlgebraError("linear quotient needs a zero-dimensional ideal")
    ring = I.ring
    field = ring.field
    if not std:
        return Ideal.unit(ring)
    rows = []
    for g in J.basis(order):
        images = [I.reduce(g.mul_monomial(b)) for b in std]
        for s in std:
            rows.append([img.terms.get(s, field.zero) for img in images])
    kernel = nullspace(rows, len(std), field)
    extra = [Poly(ring, {std[k]: c for k, c in enumerate(v) if c != 0}) for v in kernel]
    return Ideal(I.basis(order) + tuple(extra), ring)


def graded_piece(I: Ideal, m: int, order: MonomialOrder | None = None) -> list[Poly]:
    """Echelon basis of the degree-``m`` forms of a homogeneous ideal,
    rows ordered by descending leading monomial."""
    order = order or grlex()
    ring = I.ring
    for g in I.gens:
        if not g.is_homogeneous():
            raise AlgebraError("graded_piece needs homogeneous generators")
    if m < 0:
        return []
    gb = I.basis(grlex())
    cols = sorted(ring.exponent_tuples(m), key=order.key(ring.gens), reverse=True)
    index = {e: k for k, e in enumerate(cols)}
    field = ring.field
    rows = []
    for g in gb:
        d = g.degree()
        if d > m:
            continue
        for mono in ring.exponent_tuples(m - d):
            row = [field.zero] * len(cols)
            for e, c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(e, mono))]] = c
            rows.append(row)
    red, _ = rref(rows, field)
    return [Poly(ring, {cols[k]: c for k, c in enumerate(r) if c != 0}) for r in red]


def homogenize_ideal(I: Ideal, var: str) -> Ideal:
    """Homogenization of an ideal: homogenize a degree-compatible basis."""
    ring = I.ring.extend(var)
    if I.is_zero():
        return Ideal([], ring)
    return Ideal([homogenize(g, var) for g in I.basis(grlex())], ring)


def dehomogenize_ideal(I: Ideal, var: str) -> Ideal:
    ring = I.ring.drop(var)
    return Ideal([dehomogenize(g, var) for g in I.gens], ring)
