"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 parse or validation failure, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from dataclasses import dataclass, field

from .algebra import QQ, PolyRing, grlex, lex, parse_field, parse_order
from .curve import PlaneCurve, parse_curve_text, read_curve_text
from .divisor_ideal import empty_divisor, ideal_of_divisor, parse_divisor, parse_point
from .errors import AlgebraError, InvariantViolation, ParseError, ValidationError
from .groebner import Ideal
from .jacobian import add, equal, neg, reduce, scalar_mul
from .special_curves import (SuperellipticCurve, format_upoly, he_reduce, ideal_to_mumford,
                             pc_reduce, u_from_poly)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class Session:
    curve: PlaneCurve | SuperellipticCurve
    special: str | None = None
    divisors: dict = field(default_factory=dict)

    @property
    def field(self):
        return self.curve.field


# --------------------------------------------------------------------------
# loading
# --------------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def load_special(text: str, kind: str) -> SuperellipticCurve:
    kv = read_curve_text(text)
    fld = parse_field(kv["field"][0]) if "field" in kv else QQ
    if kind == "hyperelliptic":
        m = 2
    elif kind == "picard":
        m = 3
    else:
        mm = re.fullmatch(r"superelliptic:(\d+)", kind)
        if not mm:
            raise UsageError(f"unknown --special value {kind!r}")
        m = int(mm.group(1))
    R = PolyRing(fld, ("x", "y"))
    value, lineno = kv["curve"]
    try:
        f = R.parse(value)
    except ParseError as exc:
        raise ParseError(f"line {lineno}: {exc}") from None
    h = R.gen("y") ** m - f
    try:
        coeffs = u_from_poly(h)
    except ValidationError:
        raise ValidationError(f"line {lineno}: curve must read y^{m} - h(x)") from None
    curve = SuperellipticCurve(fld, m, tuple(coeffs))
    if kind == "picard" and curve.n != 4:
        raise ValidationError("a Picard curve needs a quartic h")
    return curve


def load_session(args) -> Session:
    if not args.curve:
        raise UsageError("--curve is required")
    text = _read(args.curve)
    if args.special:
        return Session(load_special(text, args.special), args.special)
    return Session(parse_curve_text(text))


def _special_ideal(session: Session, text: str) -> Ideal:
    c = session.curve
    R = c.ring
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if body.startswith("ideal"):
        m = re.fullmatch(r"ideal\s*\{(.*)\}", body, re.S)
        if not m:
            raise ParseError("malformed ideal block, expected 'ideal { f; g; ... }'")
        return Ideal([R.parse(p) for p in m.group(1).split(";") if p.strip()], R).plus(c.equation)
    pts = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        mm = re.fullmatch(r"point\s*(\([^)]*\))\s*(?:mult\s+(\d+))?", line)
        if not mm:
            raise ParseError(f"line {lineno}: cannot parse {line!r}")
        x, y, z = parse_point(mm.group(1), c.field)
        if z == 0:
            raise ValidationError(f"line {lineno}: the point at infinity is the base point")
        zi = c.field.inv(z)
        pts += [(c.field.mul(x, zi), c.field.mul(y, zi))] * int(mm.group(2) or 1)
    return c.divisor_ideal(pts)


def load_divisor(session: Session, path: str | None):
    """Divisor ideal from a file; ``None`` means the empty divisor."""
    if session.special:
        if path is None:
            return Ideal.unit(session.curve.ring)
        return _special_ideal(session, _read(path))
    if path is None:
        return empty_divisor(session.curve)
    return ideal_of_divisor(session.curve, parse_divisor(_read(path), session.curve))


# --------------------------------------------------------------------------
# element construction and printing
# --------------------------------------------------------------------------


def _reduce(session: Session, plus, minus):
    if session.special:
        c = session.curve
        fn = he_reduce if c.m == 2 else pc_reduce
        return fn(c, plus, minus)
    return reduce(session.curve, plus, minus)


def _class_of(session: Session, path: str):
    return _reduce(session, load_divisor(session, path), load_divisor(session, None))


def _special_add(session, I1: Ideal, I2: Ideal) -> Ideal:
    return _reduce(session, I1 * I2, Ideal.unit(session.curve.ring))


def _special_neg(session, I: Ideal) -> Ideal:
    return _reduce(session, Ideal.unit(session.curve.ring), I)


def _special_mul(session, k: int, I: Ideal) -> Ideal:
    if k < 0:
        return _special_mul(session, -k, _special_neg(session, I))
    result, base = Ideal.unit(session.curve.ring), I
    while k:
        if k & 1:
            result = _special_add(session, result, base)
        k >>= 1
        if k:
            base = _special_add(session, base, base)
    return result


def _order(session: Session, text: str | None):
    if text:
        return parse_order(text)
    if session.special:
        return lex("y", "x")
    return grlex("x", "y", "z")


def format_element(session: Session, E, order_text: str | None, chart: str) -> list[str]:
    order = _order(session, order_text)
    if session.special:
        I = E
        t = I.quotient_dimension()
        if t == 0:
            return ["identity (t=0)"]
        lines = [f"t={t}"]
        lines += [g.to_str(order) for g in I.groebner_basis(order)]
        if session.curve.m == 2:
            M = ideal_to_mumford(session.curve, I)
            K = session.field
            lines.append(f"mumford u={format_upoly(K, list(M.u))} v={format_upoly(K, list(M.v))}")
        return lines
    if E.t == 0:
        return ["identity (t=0)"]
    lines = [f"t={E.t} alpha={E.alpha}"]
    if chart == "affine":
        gens = E.ideal.Iz.groebner_basis(order)
    else:
        gens = E.ideal.ideal.groebner_basis(order)
    lines += [g.to_str(order) for g in gens]
    return lines


# --------------------------------------------------------------------------
# numeric points (display only)
# --------------------------------------------------------------------------


def _numeric_points(I: Ideal, tol: float):
    """Complex points of a zero-dimensional ideal over Q, with multiplicity."""
    import numpy as np

    std = I.standard_monomials()
    if not std:
        return []
    ring = I.ring
    index = {e: k for k, e in enumerate(std)}
    one = (0,) * ring.nvars

    def mult_matrix(var):
        M = np.zeros((len(std), len(std)), dtype=complex)
        g = ring.gen(var)
        for j, e in enumerate(std):
            img = I.reduce(g.mul_monomial(e))
            for k, c in img.terms.items():
                M[index[k], j] = float(c)
        return M

    mats = {v: mult_matrix(v) for v in ring.gens}
    rng = np.random.default_rng(0)
    combo = sum(rng.uniform(0.5, 1.5) * mats[v] for v in ring.gens)
    # left eigenvectors of the multiplication map are point evaluations
    _, W = np.linalg.eig(combo.T)
    e1 = np.zeros(len(std))
    e1[index[one]] = 1.0
    pts = []
    for k in range(W.shape[1]):
        w = W[:, k]
        denom = w[index[one]]
        if abs(denom) < tol:
            continue
        pts.append({v: (w @ mats[v] @ e1) / denom for v in ring.gens})
    pts.sort(key=lambda p: tuple((round(p[v].real, 6), round(p[v].imag, 6)) for v in ring.gens))
    return pts


def _fmt_complex(c: complex, tol: float) -> str:
    re_, im = c.real, c.imag
    if abs(re_) < 0.5e-5:
        re_ = 0.0
    if abs(im) < max(tol, 0.5e-5):
        return f"{re_:.5f}"
    sign = "+" if im > 0 else "-"
    return f"{re_:.5f} {sign} {abs(im):.5f}i"


def element_points(session: Session, E, tol: float) -> list[str]:
    if session.field != QQ:
        raise ValidationError("numeric points are only available over Q")
    out = []
    if session.special:
        for p in _numeric_points(E, tol):
            out.append(f"({_fmt_complex(p['x'], tol)}, {_fmt_complex(p['y'], tol)}, 1)")
        return out
    if E.t == 0:
        return []
    c = session.curve
    Iz, Ix = E.ideal.Iz, E.ideal.Ix
    if E.ideal.delta:
        adj = empty_divisor(c)
        Iz, Ix = Iz.quotient(adj.Iz), Ix.quotient(adj.Ix)
    for p in _numeric_points(Iz, tol):
        out.append(f"({_fmt_complex(p['x'], tol)}, {_fmt_complex(p['y'], tol)}, 1)")
    for p in _numeric_points(Ix, tol):
        if abs(p["z"]) < tol:
            out.append(f"(1, {_fmt_complex(p['y'], tol)}, 0)")
    return out


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_info(session: Session, args) -> list[str]:
    c = session.curve
    if session.special:
        kind = {2: "hyperelliptic", 3: "picard"}.get(c.m, f"superelliptic:{c.m}")
        return [f"{kind} genus={c.genus}", f"field={c.field}",
                f"curve: {c.equation.to_str(lex('y', 'x'))} = 0",
                "base_point=(0 : 1 : 0)", "validation: ok"]
    K = c.field
    pt = " : ".join(K.format(v) for v in c.P0)
    k, l = c.fixed_monomial
    lines = [c.describe(), f"field={K}", f"curve: {c.F} = 0", f"base_point=({pt})"]
    for nd in c.nodes:
        loc = " : ".join(K.format(v) for v in nd.location)
        lines.append(f"node ({loc})")
    fm = "*".join(f"{v}^{e}" if e > 1 else v
                  for v, e in (("x", k), ("y", l), ("z", c.n - k - l)) if e) or "1"
    lines += [f"fixed_monomial={fm}", "validation: ok"]
    return lines


def _element(session, args):
    return _reduce(session, load_divisor(session, args.plus), load_divisor(session, args.minus))


def cmd_reduce(session, args):
    return format_element(session, _element(session, args), args.order, args.chart)


def _two(session, args):
    if len(args.divisors) != 2:
        raise UsageError("expected two divisor files")
    return [_class_of(session, p) for p in args.divisors]


def cmd_add(session, args):
    a, b = _two(session, args)
    E = _special_add(session, a, b) if session.special else add(a, b)
    return format_element(session, E, args.order, args.chart)


def _one(session, args):
    if len(args.divisors) == 1:
        return _class_of(session, args.divisors[0])
    if not args.divisors and (args.plus or args.minus):
        return _element(session, args)
    raise UsageError("expected one divisor file (or --plus/--minus)")


def cmd_neg(session, args):
    E = _one(session, args)
    E = _special_neg(session, E) if session.special else neg(E)
    return format_element(session, E, args.order, args.chart)


def cmd_mul(session, args):
    E = _one(session, args)
    k = args.k
    E = _special_mul(session, k, E) if session.special else scalar_mul(k, E)
    return format_element(session, E, args.order, args.chart)


def cmd_equal(session, args):
    a, b = _two(session, args)
    if session.special:
        same = a.plus(session.curve.equation) == b.plus(session.curve.equation)
    else:
        same = equal(a, b)
    return ["equal" if same else "not equal"]


def cmd_points(session, args):
    E = _one(session, args)
    pts = element_points(session, E, args.tolerance)
    return pts if pts else ["(no points)"]


COMMANDS = {
    "info": cmd_info, "reduce": cmd_reduce, "add": cmd_add, "neg": cmd_neg,
    "mul": cmd_mul, "equal": cmd_equal, "points": cmd_points,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--curve", help="curve description file")
    common.add_argument("--plus", help="divisor file for D+")
    common.add_argument("--minus", help="divisor file for D-")
    common.add_argument("--order", help="lex | grlex | weighted:<wx>,<wy>")
    common.add_argument("--chart", choices=("projective", "affine"), default="projective",
                        help="print the homogeneous ideal or its z = 1 chart")
    common.add_argument("--tolerance", type=float, default=1e-8,
                        help="numeric tolerance for the points command")
    common.add_argument("--special",
                        help="hyperelliptic | picard | superelliptic:<m> (P0 at infinity)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="planejac", description="Jacobian arithmetic on plane curves.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.add_parser("info", parents=[common], help="validate a curve and print its data")
    sub.add_parser("reduce", parents=[common], help="reduce D+ - D-")
    for name, hlp in (("add", "sum of two divisor classes"),
                      ("equal", "compare two divisor classes")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("divisors", nargs="*", help="effective divisor files, each taken as D - deg(D) P0")
    for name, hlp in (("neg", "negate a divisor class"),
                      ("points", "numeric points of a reduced divisor (Q only)")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("divisors", nargs="*")
    p = sub.add_parser("mul", parents=[common], help="integer multiple of a divisor class")
    p.add_argument("k", type=int)
    p.add_argument("divisors", nargs="*")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        if not args.command:
            raise UsageError("missing command")
        # positional files may follow options
        if extra and (not hasattr(args, "divisors") or any(a.startswith("-") for a in extra)):
            raise UsageError(f"unrecognized arguments: {' '.join(extra)}")
        if extra:
            args.divisors = list(args.divisors) + extra
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        session = load_session(args)
        lines = COMMANDS[args.command](session, args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValidationError, AlgebraError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    for line in lines:
        print(line)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
