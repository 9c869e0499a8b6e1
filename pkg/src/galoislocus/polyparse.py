"""Polynomial text grammar: parser and canonical renderer.

Grammar (EBNF), LL(1), no implicit multiplication:

    expr    = term { ("+" | "-") term } ;
    term    = unary { "*" unary } ;
    unary   = "-" unary | power ;
    power   = atom [ "^" natural ] ;         (* right associative *)
    atom    = natural [ "/" natural ]        (* scalar literal *)
            | "zeta"                         (* cyclotomic generator *)
            | "g"                            (* GF(p^k) generator, class of t *)
            | identifier                     (* a declared variable *)
            | "(" expr ")" ;

Precedence: ^  >  unary-  >  *  >  binary +/-.  Exponents are unsigned
integer literals bounded by 2^31.  Rendering is canonical: graded-lex
descending terms, "+"/"-" separated, extension-field coefficients
parenthesized; parse(render(f)) == f holds exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, PreconditionError
from .exactfield import CyclotomicField, FiniteField
from .multipoly import MultiPoly

_EXP_LIMIT = 2 ** 31


@dataclass(frozen=True)
class PolySource:
    """A polynomial as text plus the context needed to interpret it."""

    text: str
    variable_names: tuple
    field_spec: str = "Q"


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        t, _ = self._scan()
        return t

    def next(self):
        tok, new = self._scan()
        self.pos = new
        return tok

    def _scan(self):
        i = self.pos
        s = self.text
        while i < len(s) and s[i].isspace():
            i += 1
        if i >= len(s):
            return ("eof", None, i), i
        ch = s[i]
        if ch in "+-*^()/":
            return (ch, ch, i), i + 1
        if ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            return ("int", int(s[i:j]), i), j
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                j += 1
            return ("ident", s[i:j], i), j
        raise ParseError(f"unexpected character {ch!r}", i)


class _Parser:
    def __init__(self, text, field, names):
        self.lex = _Lexer(text)
        self.field = field
        self.names = list(names)
        self.nvars = len(self.names)

    def parse(self):
        poly = self._expr()
        tok = self.lex.next()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return poly

    def _expr(self):
        acc = self._term()
        while True:
            tok = self.lex.peek()
            if tok[0] == "+":
                self.lex.next()
                acc = acc + self._term()
            elif tok[0] == "-":
                self.lex.next()
                acc = acc - self._term()
            else:
                return acc

    def _term(self):
        acc = self._unary()
        while True:
            tok = self.lex.peek()
            if tok[0] == "*":
                self.lex.next()
                acc = acc * self._unary()
            elif tok[0] in ("int", "ident", "("):
                raise ParseError("juxtaposition is not allowed; use '*'", tok[2])
            else:
                return acc

    def _unary(self):
        tok = self.lex.peek()
        if tok[0] == "-":
            self.lex.next()
            return -self._unary()
        return self._power()

    def _power(self):
        base = self._atom()
        tok = self.lex.peek()
        if tok[0] != "^":
            return base
        self.lex.next()
        exp = self._exponent()
        return base ** exp

    def _exponent(self):
        tok = self.lex.next()
        if tok[0] == "-":
            raise ParseError("negative exponents are not allowed", tok[2])
        if tok[0] != "int":
            raise ParseError("expected an integer exponent", tok[2])
        e = tok[1]
        if e > _EXP_LIMIT:
            raise ParseError(f"exponent {e} exceeds 2^31", tok[2])
        if self.lex.peek()[0] == "^":  # right associative chain
            self.lex.next()
            inner = self._exponent()
            e = _pow_capped(e, inner)
            if e > _EXP_LIMIT:
                raise ParseError("exponent tower exceeds 2^31", tok[2])
        return e

    def _atom(self):
        tok = self.lex.next()
        if tok[0] == "(":
            inner = self._expr()
            closing = self.lex.next()
            if closing[0] != ")":
                raise ParseError("expected ')'", closing[2])
            return inner
        if tok[0] == "int":
            value = Fraction(tok[1])
            if self.lex.peek()[0] == "/":
                self.lex.next()
                den = self.lex.next()
                if den[0] != "int":
                    raise ParseError("expected an integer denominator", den[2])
                if den[1] == 0:
                    raise ParseError("zero denominator", den[2])
                value = Fraction(tok[1], den[1])
            try:
                c = self.field.scalar(value)
            except ZeroDivisionError:
                raise ParseError("denominator vanishes in this field", tok[2])
            return MultiPoly.const(self.field, self.nvars, c)
        if tok[0] == "ident":
            name = tok[1]
            if name in self.names:
                return MultiPoly.variable(self.field, self.nvars,
                                          self.names.index(name))
            if name == "zeta":
                if isinstance(self.field, CyclotomicField) and self.field.cyclotomic_index > 1:
                    return MultiPoly.const(self.field, self.nvars, self.field.zeta())
                raise ParseError("'zeta' is only valid over Q(zeta N)", tok[2])
            if name == "g":
                if isinstance(self.field, FiniteField):
                    return MultiPoly.const(self.field, self.nvars,
                                           self.field.generator())
                raise ParseError("'g' is only valid over GF(p^k)", tok[2])
            raise ParseError(f"unknown identifier {name!r}", tok[2])
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])


def _pow_capped(base: int, exp: int) -> int:
    if base in (0, 1):
        return base
    if exp > 31:
        return _EXP_LIMIT + 1
    v = 1
    for _ in range(exp):
        v *= base
        if v > _EXP_LIMIT:
            return _EXP_LIMIT + 1
    return v


def parse(text: str, field, variable_names) -> MultiPoly:
    """Parse ``text`` into an exact MultiPoly over ``field``."""
    return _Parser(text, field, variable_names).parse()


def parse_source(src: PolySource) -> MultiPoly:
    from .exactfield import parse_field_spec

    field = parse_field_spec(src.field_spec)
    return parse(src.text, field, src.variable_names)


def parse_envelope(obj: dict):
    """Decode the JSON input envelope {"field", "vars", "poly"}."""
    from .exactfield import parse_field_spec

    for key in ("field", "vars", "poly"):
        if key not in obj:
            raise PreconditionError(f"envelope is missing {key!r}")
    field = parse_field_spec(obj["field"])
    names = tuple(obj["vars"])
    return field, names, parse(obj["poly"], field, names)


# ---------------------------------------------------------------------------
# rendering


def _scalar_pieces(field, c):
    """(sign, body, needs_parens) for a coefficient; sign only for rationals."""
    rep = c.rep
    if isinstance(field, CyclotomicField):
        if field.degree == 1 or field.is_rational_rep(rep):
            q = rep[0]
            sign = "-" if q < 0 else "+"
            return sign, _fraction_str(abs(q)), False
        body = field.scalar_str(rep)
        return "+", body, True
    # finite field: digits are canonical representatives, no sign folding
    body = field.scalar_str(rep)
    return "+", body, (" " in body)


def _fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _monomial_str(exps, names):
    pieces = []
    for j, e in enumerate(exps):
        if e == 1:
            pieces.append(names[j])
        elif e > 1:
            pieces.append(f"{names[j]}^{e}")
    return "*".join(pieces)


def render(f: MultiPoly, names) -> str:
    """Canonical text form; parse(render(f)) == f."""
    if len(names) != f.nvars:
        raise PreconditionError("name count does not match the variable count")
    if f.is_zero():
        return "0"
    out = []
    for exps, coeff in f.sorted_terms():
        sign, body, parens = _scalar_pieces(f.field, coeff)
        mono = _monomial_str(exps, names)
        if mono:
            if body == "1" and not parens:
                piece = mono
            else:
                piece = (f"({body})*{mono}" if parens else f"{body}*{mono}")
        else:
            piece = f"({body})" if parens else body
        if not out:
            out.append(piece if sign == "+" else "-" + piece)
        else:
            out.append(("+ " if sign == "+" else "- ") + piece)
    return " ".join(out)


def render_point(coords) -> str:
    """Projective point as colon-separated scalar expressions."""
    parts = []
    for c in coords:
        fld = c.field
        if isinstance(fld, CyclotomicField) and fld.is_rational_rep(c.rep):
            parts.append(_fraction_str(c.rep[0]))
        else:
            _, body, parens = _scalar_pieces(fld, c)
            parts.append(f"({body})" if parens else body)
    return ":".join(parts)


def parse_point(text: str, field):
    """Parse "a:b:...:c" with scalar-expression coordinates."""
    chunks = text.split(":")
    coords = []
    for ch in chunks:
        poly = parse(ch.strip(), field, ())
        coords.append(poly.coefficient(()))
    return tuple(coords)
