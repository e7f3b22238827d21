"""Polynomial differential forms on affine space C^{n+1}.

A :class:`DiffForm` of degree q is a map from strictly increasing index
tuples (the ``dx_I``) to coefficient polynomials.  All sign handling goes
through :func:`sort_with_sign`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .poly import Poly, grevlex_key

Index = Tuple[int, ...]
Coefficient = Union[Poly, int, Fraction]


class InhomogeneousForm(ValueError):
    """Raised when coefficients of a form do not share a common degree."""


def sort_with_sign(indices: Sequence[int]) -> Tuple[int, Index]:
    """Sort an index sequence, returning (sign of the permutation, sorted tuple).

    The sign is 0 when an index repeats (the wedge vanishes).
    """
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


class DiffForm:
    __slots__ = ("n_vars", "q", "_comps", "_hash")

    def __init__(self, n_vars: int, q: int, components: Optional[Mapping[Sequence[int], Coefficient]] = None):
        if not 0 <= q <= n_vars:
            raise ValueError(f"form degree {q} outside 0..{n_vars}")
        comps: Dict[Index, Poly] = {}
        for idx, c in (components or {}).items():
            idx = tuple(idx)
            if len(idx) != q or any(not 0 <= i < n_vars for i in idx):
                raise ValueError(f"bad index tuple {idx} for a {q}-form in {n_vars} variables")
            if not isinstance(c, Poly):
                c = Poly.constant(n_vars, c)
            elif c.n_vars != n_vars:
                raise ValueError("coefficient ring mismatch")
            sign, key = sort_with_sign(idx)
            if not sign or not c:
                continue
            v = comps.get(key, Poly.zero(n_vars)) + (c if sign > 0 else -c)
            if v:
                comps[key] = v
            else:
                comps.pop(key, None)
        self._init(n_vars, q, comps)

    def _init(self, n_vars: int, q: int, comps: Dict[Index, Poly]) -> None:
        degrees = set()
        for c in comps.values():
            if not c.is_homogeneous():
                raise InhomogeneousForm(f"coefficient {c} is not homogeneous")
            degrees.add(c.degree)
        if len(degrees) > 1:
            raise InhomogeneousForm(f"coefficients of mixed degrees {sorted(degrees)}")
        self.n_vars = n_vars
        self.q = q
        self._comps = comps
        self._hash = None

    @classmethod
    def _make(cls, n_vars: int, q: int, comps: Dict[Index, Poly]) -> "DiffForm":
        f = cls.__new__(cls)
        f._init(n_vars, q, {k: v for k, v in comps.items() if v})
        return f

    @classmethod
    def zero(cls, n_vars: int, q: int) -> "DiffForm":
        return cls._make(n_vars, q, {})

    @classmethod
    def function(cls, p: Poly) -> "DiffForm":
        return cls._make(p.n_vars, 0, {(): p})

    @classmethod
    def dx(cls, n_vars: int, *indices: int) -> "DiffForm":
        """The constant form dx_{i1} ^ ... ^ dx_{iq}."""
        return cls(n_vars, len(indices), {tuple(indices): 1})

    # -- queries ----------------------------------------------------------

    @property
    def components(self) -> Mapping[Index, Poly]:
        return dict(self._comps)

    def items(self) -> Iterator[Tuple[Index, Poly]]:
        for k in sorted(self._comps):
            yield k, self._comps[k]

    def coefficient(self, idx: Sequence[int]) -> Poly:
        sign, key = sort_with_sign(idx)
        c = self._comps.get(key, Poly.zero(self.n_vars))
        return c if sign >= 0 else -c

    def coefficients(self) -> List[Poly]:
        return [c for _, c in self.items()]

    def is_zero(self) -> bool:
        return not self._comps

    def __bool__(self) -> bool:
        return bool(self._comps)

    @property
    def coefficient_degree(self) -> Optional[int]:
        """Common degree of the coefficients (None for the zero form)."""
        for c in self._comps.values():
            return c.degree
        return None

    # -- vector space structure -------------------------------------------

    def _check(self, other: "DiffForm") -> None:
        if not isinstance(other, DiffForm):
            raise TypeError(f"expected DiffForm, got {type(other).__name__}")
        if other.n_vars != self.n_vars:
            raise ValueError(f"variable-count mismatch: {self.n_vars} vs {other.n_vars}")

    def __add__(self, other: "DiffForm") -> "DiffForm":
        self._check(other)
        if other.q != self.q:
            if not other:
                return self
            if not self:
                return other
            raise ValueError(f"cannot add a {self.q}-form and a {other.q}-form")
        out = dict(self._comps)
        for k, c in other._comps.items():
            v = out.get(k, Poly.zero(self.n_vars)) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return DiffForm._make(self.n_vars, self.q, out)

    def __neg__(self) -> "DiffForm":
        return DiffForm._make(self.n_vars, self.q, {k: -c for k, c in self._comps.items()})

    def __sub__(self, other: "DiffForm") -> "DiffForm":
        return self + (-other)

    def __mul__(self, other) -> "DiffForm":
        """Multiplication by a scalar or a polynomial (a 0-form)."""
        if isinstance(other, DiffForm):
            return wedge(self, other)
        if isinstance(other, (int, Fraction)):
            return DiffForm._make(self.n_vars, self.q, {k: c.scale(other) for k, c in self._comps.items()})
        if isinstance(other, Poly):
            if other.n_vars != self.n_vars:
                raise ValueError("coefficient ring mismatch")
            return DiffForm._make(self.n_vars, self.q, {k: c * other for k, c in self._comps.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffForm):
            return NotImplemented
        if self.n_vars != other.n_vars:
            return False
        if not self._comps and not other._comps:
            return True
        return self.q == other.q and self._comps == other._comps

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n_vars, self.q if self._comps else None, frozenset(self._comps.items())))
        return self._hash

    def map_coefficients(self, fn) -> "DiffForm":
        return DiffForm._make(self.n_vars, self.q, {k: fn(c) for k, c in self._comps.items()})

    # -- operations -------------------------------------------------------

    def wedge(self, other: "DiffForm") -> "DiffForm":
        return wedge(self, other)

    def d(self) -> "DiffForm":
        return exterior_derivative(self)

    def contract(self, v: "VectorField") -> "DiffForm":
        return interior_product(v, self)

    def pullback_linear(self, m: Sequence[Sequence]) -> "DiffForm":
        """Pull back along x -> m x (so x_i = sum_j m[i][j] y_j, dx_i = sum_j m[i][j] dy_j)."""
        from .poly import substitute_linear

        n = self.n_vars
        dxs = [
            DiffForm._make(n, 1, {(j,): Poly.constant(n, x) for j, x in enumerate(row) if x})
            for row in m
        ]
        out = DiffForm.zero(n, self.q)
        for idx, c in self._comps.items():
            term = DiffForm.function(substitute_linear(c, m))
            for i in idx:
                term = wedge(term, dxs[i])
            out = out + term
        return out

    def to_str(self) -> str:
        if not self._comps:
            return "0"
        parts = []
        for idx, c in self.items():
            dx = "^".join(f"dx{i}" for i in idx)
            terms = c.sorted_terms()
            for e, a in terms:
                mono = Poly._make(self.n_vars, {e: abs(a)}).to_str()
                if not dx:
                    body = mono
                elif mono == "1":
                    body = dx
                else:
                    body = f"{mono}*{dx}"
                if not parts:
                    parts.append(body if a > 0 else f"-{body}")
                else:
                    parts.append(("+ " if a > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"DiffForm(n_vars={self.n_vars}, q={self.q}, {self.to_str()!r})"


class VectorField:
    """Polynomial vector field sum_i v_i d/dx_i."""

    __slots__ = ("n_vars", "components")

    def __init__(self, components: Sequence[Poly]):
        if not components:
            raise ValueError("empty vector field")
        n = components[0].n_vars
        if len(components) != n or any(c.n_vars != n for c in components):
            raise ValueError("vector field needs one coefficient per variable")
        self.n_vars = n
        self.components = tuple(components)

    @classmethod
    def radial(cls, n_vars: int) -> "VectorField":
        return cls([Poly.var(n_vars, i) for i in range(n_vars)])

    @classmethod
    def coordinate(cls, n_vars: int, j: int) -> "VectorField":
        return cls([Poly.constant(n_vars, int(i == j)) for i in range(n_vars)])

    def is_homogeneous(self) -> bool:
        degs = {c.degree for c in self.components if c}
        return len(degs) <= 1 and all(c.is_homogeneous() for c in self.components)


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    a._check(b)
    n = a.n_vars
    q = a.q + b.q
    if q > n:
        return DiffForm.zero(n, n)
    out: Dict[Index, Poly] = {}
    for i1, c1 in a._comps.items():
        for i2, c2 in b._comps.items():
            sign, key = sort_with_sign(i1 + i2)
            if not sign:
                continue
            p = c1 * c2
            v = out.get(key, Poly.zero(n)) + (p if sign > 0 else -p)
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return DiffForm._make(n, q, out)


def exterior_derivative(a: DiffForm) -> DiffForm:
    n = a.n_vars
    if a.q == n:
        return DiffForm.zero(n, n)
    out: Dict[Index, Poly] = {}
    for idx, c in a._comps.items():
        for j in c.variables():
            sign, key = sort_with_sign((j,) + idx)
            if not sign:
                continue
            p = c.partial(j)
            v = out.get(key, Poly.zero(n)) + (p if sign > 0 else -p)
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return DiffForm._make(n, a.q + 1, out)


def interior_product(v: VectorField, a: DiffForm) -> DiffForm:
    if v.n_vars != a.n_vars:
        raise ValueError(f"variable-count mismatch: {v.n_vars} vs {a.n_vars}")
    n = a.n_vars
    if a.q == 0:
        return DiffForm.zero(n, 0)
    out: Dict[Index, Poly] = {}
    for idx, c in a._comps.items():
        for s, i in enumerate(idx):
            vi = v.components[i]
            if not vi:
                continue
            key = idx[:s] + idx[s + 1:]
            p = c * vi
            v_ = out.get(key, Poly.zero(n)) + (p if s % 2 == 0 else -p)
            if v_:
                out[key] = v_
            else:
                out.pop(key, None)
    return DiffForm._make(n, a.q - 1, out)


def radial_contraction(a: DiffForm) -> DiffForm:
    return interior_product(VectorField.radial(a.n_vars), a)


def differential(p: Poly) -> DiffForm:
    return exterior_derivative(DiffForm.function(p))


# ---------------------------------------------------------------------------
# monomial coordinates of V(n_vars, q, e) = q-forms with degree-e coefficients


@lru_cache(maxsize=None)
def monomials(n_vars: int, e: int) -> Tuple[Tuple[int, ...], ...]:
    """Exponent vectors of degree e, largest first in grevlex."""
    if e < 0:
        return ()

    def gen(k: int, remaining: int):
        if k == n_vars - 1:
            yield (remaining,)
            return
        for a in range(remaining, -1, -1):
            for rest in gen(k + 1, remaining - a):
                yield (a,) + rest

    if n_vars == 0:
        return ((),) if e == 0 else ()
    return tuple(sorted(gen(0, e), key=grevlex_key, reverse=True))


@lru_cache(maxsize=None)
def form_basis(n_vars: int, q: int, e: int) -> Tuple[Tuple[Index, Tuple[int, ...]], ...]:
    """Basis {monomial * dx_I}, ordered by index tuple (lex) then monomial (grevlex)."""
    mons = monomials(n_vars, e)
    return tuple((idx, m) for idx in combinations(range(n_vars), q) for m in mons)


@lru_cache(maxsize=None)
def _basis_index(n_vars: int, q: int, e: int) -> Dict[Tuple[Index, Tuple[int, ...]], int]:
    return {b: i for i, b in enumerate(form_basis(n_vars, q, e))}


def space_dim(n_vars: int, q: int, e: int) -> int:
    if e < 0 or not 0 <= q <= n_vars:
        return 0
    return comb(n_vars, q) * comb(e + n_vars - 1, n_vars - 1)


def sparse_coordinates(a: DiffForm, e: int) -> Dict[int, Fraction]:
    """Coordinates of a in V(n_vars, q, e) as a sparse dict."""
    if a.is_zero():
        return {}
    if a.coefficient_degree != e:
        raise InhomogeneousForm(f"form has coefficient degree {a.coefficient_degree}, expected {e}")
    index = _basis_index(a.n_vars, a.q, e)
    out = {}
    for idx, c in a._comps.items():
        for m, x in c.terms.items():
            out[index[(idx, m)]] = x
    return out


def monomial_coordinates(a: DiffForm, e: int) -> Tuple[Fraction, ...]:
    """Dense coordinate vector of a in V(n_vars, q, e)."""
    vec = [Fraction(0)] * space_dim(a.n_vars, a.q, e)
    for i, x in sparse_coordinates(a, e).items():
        vec[i] = x
    return tuple(vec)


def form_from_coordinates(n_vars: int, q: int, e: int, vec: Union[Sequence, Mapping[int, object]]) -> DiffForm:
    basis = form_basis(n_vars, q, e)
    items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
    comps: Dict[Index, Dict[Tuple[int, ...], Fraction]] = {}
    for i, x in items:
        if x:
            idx, m = basis[i]
            comps.setdefault(idx, {})[m] = Fraction(x)
    return DiffForm._make(n_vars, q, {idx: Poly(n_vars, t) for idx, t in comps.items()})


def basis_form(n_vars: int, q: int, e: int, i: int) -> DiffForm:
    idx, m = form_basis(n_vars, q, e)[i]
    return DiffForm._make(n_vars, q, {idx: Poly._make(n_vars, {m: Fraction(1)})})
