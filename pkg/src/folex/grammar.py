"""Text grammar for polynomials, forms and sections.

    expr  := ['+'|'-'] term (('+'|'-') term)*
    term  := power (('*' | '/' NUMBER) power?)*
    power := atom ('^' atom)*
    atom  := NUMBER | xN | dxN | '(' expr ')' | iR '(' expr ')' | d '(' expr ')'

``^`` followed by an integer is an exponent; between form factors it is the
wedge product.  ``iR(...)`` is contraction with the radial field and
``d(...)`` the exterior derivative.  A section is a form optionally preceded
by a header line ``n=<dim> q=<q> k=<twist>``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .forms import DiffForm, InhomogeneousForm, sort_with_sign
from .pfaff import TwistedSection, make_section
from .poly import Poly


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class HomogeneityError(ParseError):
    pass


_TOKEN = re.compile(r"(\d+)|(dx)(\d+)|(x)(\d+)|(iR)|(d)(?=\s*\()|([-+*/^()])")
_KINDS = {1: "num", 2: "dx", 4: "x", 6: "iR", 7: "d", 8: "op"}


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, dx, x, iR, d, op, end
    value: object
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    out: List[_Tok] = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        g = m.lastindex if m.lastindex not in (3, 5) else m.lastindex - 1
        kind = _KINDS[g]
        if kind in ("dx", "x"):
            value: object = int(m.group(g + 1))
        elif kind == "num":
            value = int(m.group(1))
        else:
            value = m.group(g)
        out.append(_Tok(kind, value, pos))
        pos = m.end()
    out.append(_Tok("end", None, len(text)))
    return out


# Intermediate values: degree q plus {index tuple: Poly}, no homogeneity enforced.
_Val = Tuple[int, Dict[Tuple[int, ...], Poly]]


class _Parser:
    def __init__(self, text: str, n_vars: Optional[int]):
        self.toks = _tokenize(text)
        top = max((t.value for t in self.toks if t.kind in ("x", "dx")), default=-1)
        if n_vars is None:
            n_vars = top + 1
        elif top >= n_vars:
            t = next(t for t in self.toks if t.kind in ("x", "dx") and t.value >= n_vars)
            raise ParseError(f"variable index {t.value} outside 0..{n_vars - 1}", t.pos)
        self.n = n_vars
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _is(self, op: str) -> bool:
        return self.tok.kind == "op" and self.tok.value == op

    def _expect(self, op: str) -> None:
        if not self._is(op):
            raise ParseError(f"expected {op!r}", self.tok.pos)
        self.i += 1

    def parse(self) -> _Val:
        v = self.expr()
        if self.tok.kind != "end":
            raise ParseError("unexpected trailing input", self.tok.pos)
        return v

    def _const(self, c) -> _Val:
        return 0, ({(): Poly.constant(self.n, c)} if c else {})

    def expr(self) -> _Val:
        sign = 1
        if self._is("+") or self._is("-"):
            sign = -1 if self.tok.value == "-" else 1
            self.i += 1
        v = self.term()
        if sign < 0:
            v = _scale(v, -1)
        while self._is("+") or self._is("-"):
            op, pos = self.tok.value, self.tok.pos
            self.i += 1
            w = self.term()
            v = _add(v, w if op == "+" else _scale(w, -1), pos)
        return v

    def term(self) -> _Val:
        v = self.power()
        while self._is("*") or self._is("/"):
            if self._is("/"):
                self.i += 1
                if self.tok.kind != "num":
                    raise ParseError("only division by an integer constant is supported", self.tok.pos)
                if self.tok.value == 0:
                    raise ParseError("division by zero", self.tok.pos)
                v = _scale(v, Fraction(1, self.tok.value))
                self.i += 1
            else:
                self.i += 1
                v = _wedge(v, self.power(), self.n)
        return v

    def power(self) -> _Val:
        v = self.atom()
        while self._is("^"):
            pos = self.tok.pos
            self.i += 1
            if self.tok.kind == "num":
                if v[0] != 0:
                    raise ParseError("exponent applied to a form of positive degree", pos)
                k = self.tok.value
                self.i += 1
                acc = self._const(1)
                for _ in range(k):
                    acc = _wedge(acc, v, self.n)
                v = acc
            else:
                v = _wedge(v, self.atom(), self.n)
        return v

    def atom(self) -> _Val:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return self._const(t.value)
        if t.kind == "x":
            self.i += 1
            return 0, {(): Poly.var(self.n, t.value)}
        if t.kind == "dx":
            self.i += 1
            return 1, {(t.value,): Poly.one(self.n)}
        if t.kind in ("iR", "d"):
            self.i += 1
            self._expect("(")
            v = self.expr()
            self._expect(")")
            return _contract_radial(v, self.n, t.pos) if t.kind == "iR" else _exterior_d(v, self.n)
        if self._is("("):
            self.i += 1
            v = self.expr()
            self._expect(")")
            return v
        raise ParseError("expected a number, variable, dx or '('", t.pos)


def _add(a: _Val, b: _Val, pos: int) -> _Val:
    if not a[1]:
        return b
    if not b[1]:
        return a
    if a[0] != b[0]:
        raise ParseError(f"cannot add a {a[0]}-form and a {b[0]}-form", pos)
    out = dict(a[1])
    for idx, c in b[1].items():
        s = out.get(idx, Poly.zero(c.n_vars)) + c
        if s:
            out[idx] = s
        else:
            out.pop(idx, None)
    return a[0], out


def _scale(a: _Val, c) -> _Val:
    return a[0], {idx: p.scale(c) for idx, p in a[1].items()}


def _wedge(a: _Val, b: _Val, n: int) -> _Val:
    out: Dict[Tuple[int, ...], Poly] = {}
    for i, p in a[1].items():
        for j, r in b[1].items():
            sign, idx = sort_with_sign(i + j)
            if sign:
                s = out.get(idx, Poly.zero(n)) + (p * r).scale(sign)
                if s:
                    out[idx] = s
                else:
                    out.pop(idx, None)
    return a[0] + b[0], out


def _contract_radial(a: _Val, n: int, pos: int) -> _Val:
    if a[0] == 0 and a[1]:
        raise ParseError("iR applied to a function", pos)
    out: Dict[Tuple[int, ...], Poly] = {}
    for idx, p in a[1].items():
        for s, i in enumerate(idx):
            rest = idx[:s] + idx[s + 1:]
            term = (p * Poly.var(n, i)).scale(1 if s % 2 == 0 else -1)
            v = out.get(rest, Poly.zero(n)) + term
            if v:
                out[rest] = v
            else:
                out.pop(rest, None)
    return max(a[0] - 1, 0), out


def _exterior_d(a: _Val, n: int) -> _Val:
    out: Dict[Tuple[int, ...], Poly] = {}
    for idx, p in a[1].items():
        for j in range(n):
            dp = p.partial(j)
            if not dp:
                continue
            sign, new = sort_with_sign((j,) + idx)
            if sign:
                v = out.get(new, Poly.zero(n)) + dp.scale(sign)
                if v:
                    out[new] = v
                else:
                    out.pop(new, None)
    return a[0] + 1, out


def parse_poly(text: str, n_vars: Optional[int] = None, homogeneous: bool = False) -> Poly:
    p = _Parser(text, n_vars)
    q, comps = p.parse()
    if q != 0:
        raise ParseError(f"expected a polynomial, got a {q}-form", 0)
    poly = comps.get((), Poly.zero(p.n))
    if homogeneous and not poly.is_homogeneous():
        raise HomogeneityError("polynomial is not homogeneous", 0)
    return poly


def parse_form(text: str, n_vars: Optional[int] = None) -> DiffForm:
    p = _Parser(text, n_vars)
    q, comps = p.parse()
    if not comps:
        return DiffForm.zero(p.n, min(q, p.n))
    try:
        return DiffForm(p.n, q, comps)
    except InhomogeneousForm as exc:
        raise HomogeneityError(f"coefficients of mixed degree ({exc})", 0) from None


_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s+q\s*=\s*(\d+)\s+k\s*=\s*(-?\d+)\s*$")


def parse_section(text: str, n: Optional[int] = None) -> TwistedSection:
    """Parse a section, with or without its ``n= q= k=`` header line."""
    lines = text.strip().splitlines()
    header = _HEADER.match(lines[0]) if lines else None
    if header:
        hn, hq, hk = (int(g) for g in header.groups())
        if n is not None and n != hn:
            raise ParseError(f"header says n={hn}, expected n={n}", 0)
        n = hn
        body = "\n".join(lines[1:])
    else:
        body = text
    form = parse_form(" ".join(body.split()), None if n is None else n + 1)
    s = make_section(form, n)
    if header and (s.q, s.k) != (hq, hk):
        raise ParseError(f"header says q={hq} k={hk}, form has q={s.q} k={s.k}", 0)
    return s


def format_section(s: TwistedSection) -> str:
    return str(s)


def format_form(w: DiffForm) -> str:
    return w.to_str()
