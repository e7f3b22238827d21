"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` lives in a fixed ring ``Q[x0, ..., x_{n_vars-1}]`` and stores
its terms as ``{exponent tuple: Fraction}`` with no zero coefficients.  Terms
are ordered by graded reverse lexicographic order (``x0 > x1 > ...``) for
printing, leading terms and division.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd, lcm
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Exps = Tuple[int, ...]


def grevlex_key(e: Exps):
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(e), tuple(-x for x in reversed(e)))


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Poly:
    __slots__ = ("n_vars", "_terms", "_hash")

    def __init__(self, n_vars: int, terms: Optional[Mapping[Sequence[int], object]] = None):
        if n_vars < 0:
            raise ValueError("n_vars must be non-negative")
        clean: Dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n_vars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {n_vars} variables")
            c = _frac(c)
            if c:
                c = clean.get(e, 0) + c
                if c:
                    clean[e] = c
                else:
                    clean.pop(e, None)
        self.n_vars = n_vars
        self._terms = clean
        self._hash = None

    @classmethod
    def _make(cls, n_vars: int, terms: Dict[Exps, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p.n_vars = n_vars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n_vars: int) -> "Poly":
        return cls._make(n_vars, {})

    @classmethod
    def constant(cls, n_vars: int, c) -> "Poly":
        c = _frac(c)
        return cls._make(n_vars, {(0,) * n_vars: c} if c else {})

    @classmethod
    def one(cls, n_vars: int) -> "Poly":
        return cls.constant(n_vars, 1)

    @classmethod
    def var(cls, n_vars: int, i: int) -> "Poly":
        if not 0 <= i < n_vars:
            raise IndexError(f"variable x{i} outside {n_vars} variables")
        e = [0] * n_vars
        e[i] = 1
        return cls._make(n_vars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Poly":
        return cls(len(exps), {tuple(exps): c})

    # -- basic queries ----------------------------------------------------

    @property
    def terms(self) -> Mapping[Exps, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * self.n_vars, Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def sorted_terms(self) -> List[Tuple[Exps, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self) -> Tuple[Exps, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=grevlex_key)
        return e, self._terms[e]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def variables(self) -> List[int]:
        used = set()
        for e in self._terms:
            used.update(i for i, x in enumerate(e) if x)
        return sorted(used)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.n_vars != self.n_vars:
                raise ValueError(f"ring mismatch: {self.n_vars} vs {other.n_vars} variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.n_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._make(self.n_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make(self.n_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Poly":
        c = _frac(c)
        if not c:
            return Poly.zero(self.n_vars)
        return Poly._make(self.n_vars, {e: x * c for e, x in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exps, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._make(self.n_vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / _frac(other))
        return NotImplemented

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.one(self.n_vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.n_vars == other.n_vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.constant(self.n_vars, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n_vars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution ----------------------------------------

    def partial(self, i: int) -> "Poly":
        if not 0 <= i < self.n_vars:
            raise IndexError(f"variable x{i} outside {self.n_vars} variables")
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Poly._make(self.n_vars, out)

    def gradient(self) -> Tuple["Poly", ...]:
        return tuple(self.partial(i) for i in range(self.n_vars))

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.n_vars:
            raise ValueError(f"point of length {len(point)} for {self.n_vars} variables")
        pt = [_frac(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def specialize(self, values: Mapping[int, object]) -> "Poly":
        """Fix some variables to rational values (ring unchanged)."""
        vals = {i: _frac(v) for i, v in values.items()}
        out: Dict[Exps, Fraction] = {}
        for e, c in self._terms.items():
            d = list(e)
            for i, v in vals.items():
                if d[i]:
                    c = c * v ** d[i]
                    d[i] = 0
            if c:
                t = tuple(d)
                out[t] = out.get(t, 0) + c
        return Poly._make(self.n_vars, {e: c for e, c in out.items() if c})

    def compose(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute ``x_i -> images[i]``; the result lives in the images' ring."""
        if len(images) != self.n_vars:
            raise ValueError(f"{len(images)} images for {self.n_vars} variables")
        if not images:
            return self
        m = images[0].n_vars
        powers: Dict[Tuple[int, int], Poly] = {}

        def power(i: int, k: int) -> Poly:
            if (i, k) not in powers:
                powers[(i, k)] = images[i] ** k
            return powers[(i, k)]

        out = Poly.zero(m)
        for e, c in self._terms.items():
            t = Poly.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def homogenize(self, at: int, degree: Optional[int] = None) -> "Poly":
        """Insert a new variable at position ``at`` and homogenize with it."""
        D = self.degree if degree is None else degree
        if self._terms and D < self.degree:
            raise ValueError("target degree below polynomial degree")
        out = {}
        for e, c in self._terms.items():
            out[e[:at] + (D - sum(e),) + e[at:]] = c
        return Poly._make(self.n_vars + 1, out)

    # -- normalization ----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num, den = 0, 1
        for c in self._terms.values():
            num = igcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer-primitive associate with positive leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self) -> "Poly":
        return self.scale(1 / self.leading_coefficient())

    # -- printing ---------------------------------------------------------

    def to_str(self, names: Optional[Sequence[str]] = None) -> str:
        names = list(names) if names is not None else [f"x{i}" for i in range(self.n_vars)]
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({self.n_vars}, {self.to_str()!r})"


def partial_derivative(p: Poly, i: int) -> Poly:
    return p.partial(i)


def substitute_linear(p: Poly, m: Sequence[Sequence]) -> Poly:
    """Compose ``p`` with ``x -> m x``: each ``x_i`` becomes ``sum_j m[i][j] x_j``.

    ``m`` may be singular (projections are allowed).
    """
    n = p.n_vars
    if len(m) != n or any(len(row) != n for row in m):
        raise ValueError(f"substitution matrix must be {n}x{n}")
    images = [
        Poly._make(n, {tuple(int(j == k) for k in range(n)): _frac(x) for j, x in enumerate(row) if x})
        for row in m
    ]
    return p.compose(images)


def dehomogenize(p: Poly, chart: int) -> Poly:
    """Set ``x_chart = 1`` and drop that variable."""
    if not 0 <= chart < p.n_vars:
        raise IndexError(f"chart x{chart} outside {p.n_vars} variables")
    out: Dict[Exps, Fraction] = {}
    for e, c in p.terms.items():
        d = e[:chart] + e[chart + 1:]
        v = out.get(d, 0) + c
        if v:
            out[d] = v
        else:
            out.pop(d, None)
    return Poly._make(p.n_vars - 1, out)


# ---------------------------------------------------------------------------
# division


def reduce(g: Poly, f: Poly) -> Tuple[Poly, Poly]:
    """Multivariate division of g by f in grevlex: returns (quotient, remainder)."""
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lf, cf = f.leading_term()
    n = g.n_vars
    work = dict(g._terms)
    quot: Dict[Exps, Fraction] = {}
    rem: Dict[Exps, Fraction] = {}
    while work:
        e = max(work, key=grevlex_key)
        c = work[e]
        if all(a >= b for a, b in zip(e, lf)):
            t = tuple(a - b for a, b in zip(e, lf))
            k = c / cf
            quot[t] = k
            for ef, xf in f._terms.items():
                s = tuple(a + b for a, b in zip(t, ef))
                v = work.get(s, 0) - k * xf
                if v:
                    work[s] = v
                else:
                    work.pop(s, None)
        else:
            rem[e] = c
            del work[e]
    return Poly._make(n, quot), Poly._make(n, rem)


def exact_divide(g: Poly, f: Poly) -> Optional[Poly]:
    """Return h with g == f*h, or None when f does not divide g."""
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if g.n_vars != f.n_vars:
        raise ValueError("ring mismatch")
    lf, cf = f.leading_term()
    work = dict(g._terms)
    quot: Dict[Exps, Fraction] = {}
    while work:
        e = max(work, key=grevlex_key)
        if not all(a >= b for a, b in zip(e, lf)):
            return None
        t = tuple(a - b for a, b in zip(e, lf))
        k = work[e] / cf
        quot[t] = k
        for ef, xf in f._terms.items():
            s = tuple(a + b for a, b in zip(t, ef))
            v = work.get(s, 0) - k * xf
            if v:
                work[s] = v
            else:
                work.pop(s, None)
    return Poly._make(g.n_vars, quot)


def _divide(g: Poly, f: Poly) -> Poly:
    h = exact_divide(g, f)
    if h is None:
        raise ArithmeticError("inexact division inside gcd")
    return h


# ---------------------------------------------------------------------------
# gcd: recursive content / primitive part, subresultant PRS in the main variable


def _coeffs_in(p: Poly, v: int) -> Dict[int, Poly]:
    out: Dict[int, Dict[Exps, Fraction]] = {}
    for e, c in p._terms.items():
        d = e[:v] + (0,) + e[v + 1:]
        out.setdefault(e[v], {})[d] = c
    return {k: Poly._make(p.n_vars, t) for k, t in out.items()}


def _shift(p: Poly, v: int, k: int) -> Poly:
    """Multiply by x_v^k."""
    if k == 0:
        return p
    return Poly._make(p.n_vars, {e[:v] + (e[v] + k,) + e[v + 1:]: c for e, c in p._terms.items()})


def _prem(a: Poly, b: Poly, v: int) -> Poly:
    db = b.degree_in(v)
    lcb = _coeffs_in(b, v)[db]
    r = a
    e = a.degree_in(v) - db + 1
    while r and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lcr = _coeffs_in(r, v)[dr]
        r = lcb * r - _shift(lcr * b, v, dr - db)
        e -= 1
    return r * (lcb ** e) if e > 0 else r


def _content_in(p: Poly, v: int) -> Poly:
    return _gcd_list(list(_coeffs_in(p, v).values()))


def _gcd_list(ps: List[Poly]) -> Poly:
    g = Poly.zero(ps[0].n_vars)
    for p in ps:
        g = _gcd(g, p)
        if g.is_constant() and g:
            return Poly.one(g.n_vars)
    return g


def _gcd(a: Poly, b: Poly) -> Poly:
    n = a.n_vars
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.is_constant() or b.is_constant():
        return Poly.one(n)
    used = set(a.variables()) | set(b.variables())
    v = min(used)
    ca, cb = _content_in(a, v), _content_in(b, v)
    c = _gcd(ca, cb)
    pa, pb = _divide(a, ca), _divide(b, cb)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    if pb.degree_in(v) == 0:
        return c
    g = _subresultant_last(pa, pb, v)
    return (c * g).primitive()


def _subresultant_last(a: Poly, b: Poly, v: int) -> Poly:
    """Primitive gcd in x_v of two polynomials primitive in x_v (deg a >= deg b >= 1)."""
    n = a.n_vars
    g = Poly.one(n)
    h = Poly.one(n)
    while True:
        delta = a.degree_in(v) - b.degree_in(v)
        r = _prem(a, b, v)
        if r.is_zero():
            return _divide(b, _content_in(b, v)).primitive()
        if r.degree_in(v) == 0:
            return Poly.one(n)
        a, b = b, _divide(r, g * h ** delta)
        g = _coeffs_in(a, v)[a.degree_in(v)]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _divide(g ** delta, h ** (delta - 1))


def gcd(a: Poly, b: Poly) -> Poly:
    if a.n_vars != b.n_vars:
        raise ValueError("ring mismatch")
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials")
    return _gcd(a, b)


def gcd_many(ps: Iterable[Poly]) -> Poly:
    """Normalized gcd (primitive, positive leading coefficient) of the inputs."""
    ps = [p for p in ps]
    nonzero = [p for p in ps if p]
    if not nonzero:
        raise ValueError("gcd of zero polynomials only")
    # small polynomials first keeps the recursion cheap
    nonzero.sort(key=lambda p: (p.degree, len(p)))
    return _gcd_list(nonzero)
