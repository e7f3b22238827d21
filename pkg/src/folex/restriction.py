"""Hypersurfaces and the restriction of twisted forms to them.

A form vanishes on X = {f = 0} (pulled back to X) exactly when it lies in
f * V + df ^ V at the polynomial level, as long as its degree q is at most
dim X = n - 1.  For q > n - 1 the target sheaf is zero and every form
restricts to zero.  The kernel of the restriction map on global sections is
the intersection of the space of sections with that submodule, a finite
linear-algebra problem in monomial coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import exactlinalg as la
from .forms import (
    DiffForm,
    _basis_index,
    differential,
    form_basis,
    form_from_coordinates,
    monomials,
    space_dim,
    sparse_coordinates,
    wedge,
)
from .pfaff import TwistedSection, as_form
from .poly import Poly, exact_divide

FormLike = Union[TwistedSection, DiffForm]


@dataclass(frozen=True)
class Hypersurface:
    f: Poly
    n: int
    gradient: Tuple[Poly, ...]
    smooth_asserted: bool = True
    irreducible_asserted: bool = True
    smoothness_evidence: str = "unchecked"
    singular_point: Optional[Tuple[int, ...]] = None

    @property
    def d(self) -> int:
        return self.f.degree

    @property
    def certified_smooth(self) -> bool:
        return self.smoothness_evidence in ("linear", "fermat-pattern")

    def assumptions(self) -> List[str]:
        out = []
        if self.certified_smooth:
            out.append(f"X smooth (certified: {self.smoothness_evidence})")
        elif self.smooth_asserted:
            out.append(f"X smooth (user-asserted; heuristic evidence: {self.smoothness_evidence})")
        else:
            out.append("X not asserted smooth")
        return out


def _is_fermat_type(f: Poly) -> bool:
    d = f.degree
    seen = set()
    for e, c in f.terms.items():
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) != 1 or e[nz[0]] != d:
            return False
        seen.add(nz[0])
    return len(seen) == f.n_vars


def _sample_points(n_vars: int):
    r = range(-2, 3) if n_vars <= 4 else range(-1, 2)
    for p in product(r, repeat=n_vars):
        if any(p):
            yield p


def make_hypersurface(f: Poly, smooth: bool = True, irreducible: bool = True) -> Hypersurface:
    """Wrap a homogeneous f, caching its gradient and running smoothness heuristics.

    Linear forms and Fermat-type sums sum_i c_i x_i^d (every variable present)
    are recognized as smooth.  Otherwise a fixed box of small integer points is
    scanned for a point of f = 0 where the gradient vanishes.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial does not define a hypersurface")
    if not f.is_homogeneous():
        raise ValueError(f"{f} is not homogeneous")
    if f.degree < 1:
        raise ValueError("a hypersurface needs degree >= 1")
    grad = f.gradient()
    singular = None
    if f.degree == 1:
        evidence = "linear"
    elif _is_fermat_type(f):
        evidence = "fermat-pattern"
    else:
        evidence = "no singular sample point"
        for p in _sample_points(f.n_vars):
            if f.evaluate(p) == 0 and all(g.evaluate(p) == 0 for g in grad):
                evidence = "singular point found"
                singular = p
                break
    return Hypersurface(f, f.n_vars - 1, grad, smooth, irreducible, evidence, singular)


# ---------------------------------------------------------------------------
# invariance


def is_invariant(x: Hypersurface, s: FormLike) -> bool:
    """df ^ w is divisible by f coefficient-wise."""
    w = as_form(s)
    if w.n_vars != x.n + 1:
        raise ValueError(f"form has {w.n_vars} variables, hypersurface lives in P^{x.n}")
    dfw = wedge(differential(x.f), w)
    return all(exact_divide(c, x.f) is not None for c in dfw.coefficients())


def is_invariant_membership(x: Hypersurface, s: FormLike) -> bool:
    """Second route to invariance: df ^ w lies in f * V, decided by linear algebra."""
    w = as_form(s)
    if w.n_vars != x.n + 1:
        raise ValueError(f"form has {w.n_vars} variables, hypersurface lives in P^{x.n}")
    dfw = wedge(differential(x.f), w)
    if dfw.is_zero():
        return True
    e = dfw.coefficient_degree
    if e < x.d:
        return False
    cols, n_f, _ = _generators(x.f, dfw.q, e)
    target = sparse_coordinates(dfw, e)
    return la.solve_in_span(list(cols[:n_f]), space_dim(dfw.n_vars, dfw.q, e), target) is not None


# ---------------------------------------------------------------------------
# membership in f*V + df^V


@lru_cache(maxsize=256)
def _generators(f: Poly, q: int, e: int) -> Tuple[Tuple[Dict[int, Fraction], ...], int, int]:
    """Columns spanning f*V(q, e-d) + df^V(q-1, e-d+1) inside V(q, e).

    Returns (columns, number of f-columns, number of df-columns).
    """
    n_vars = f.n_vars
    d = f.degree
    cols: List[Dict[int, Fraction]] = []
    index = _basis_index(n_vars, q, e)
    fterms = list(f.terms.items())
    for idx, m in form_basis(n_vars, q, e - d):
        col = {}
        for t, c in fterms:
            col[index[(idx, tuple(a + b for a, b in zip(m, t)))]] = c
        cols.append(col)
    n_f = len(cols)
    if q >= 1:
        df = differential(f)
        for idx, m in form_basis(n_vars, q - 1, e - d + 1):
            g = wedge(df, DiffForm._make(n_vars, q - 1, {idx: Poly._make(n_vars, {m: Fraction(1)})}))
            cols.append(sparse_coordinates(g, e) if g else {})
    return tuple(cols), n_f, len(cols) - n_f


@dataclass(frozen=True)
class RestrictionVerdict:
    vanishes: bool
    reason: str
    beta: Optional[DiffForm] = None
    gamma: Optional[DiffForm] = None

    def __bool__(self) -> bool:
        return self.vanishes


def restriction_vanishes(x: Hypersurface, s: FormLike) -> RestrictionVerdict:
    """Decide whether the pullback of s to X is zero.

    When the answer comes from membership, the verdict carries forms beta,
    gamma with w = f*beta + df^gamma.
    """
    w = as_form(s)
    if w.n_vars != x.n + 1:
        raise ValueError(f"form has {w.n_vars} variables, hypersurface lives in P^{x.n}")
    if w.is_zero():
        return RestrictionVerdict(True, "zero form")
    if w.q > x.n - 1:
        return RestrictionVerdict(True, f"degree {w.q} exceeds dim X = {x.n - 1}")
    e = w.coefficient_degree
    cols, n_f, _ = _generators(x.f, w.q, e)
    if not cols:
        return RestrictionVerdict(False, "no generators in this degree")
    sol = la.solve_in_span(cols, space_dim(w.n_vars, w.q, e), sparse_coordinates(w, e))
    if sol is None:
        return RestrictionVerdict(False, "not in f*V + df^V")
    n_vars, d = w.n_vars, x.d
    beta = form_from_coordinates(n_vars, w.q, e - d, {j: c for j, c in sol.items() if j < n_f})
    gamma = form_from_coordinates(n_vars, w.q - 1, e - d + 1, {j - n_f: c for j, c in sol.items() if j >= n_f})
    if beta.is_zero():
        beta = DiffForm.zero(n_vars, w.q)
    if gamma.is_zero():
        gamma = DiffForm.zero(n_vars, w.q - 1)
    return RestrictionVerdict(True, "membership", beta, gamma)


def reassemble(x: Hypersurface, beta: DiffForm, gamma: DiffForm) -> DiffForm:
    return beta * x.f + wedge(differential(x.f), gamma)


# ---------------------------------------------------------------------------
# sections of Omega^q(k) and the kernel of restriction


def _radial_columns(n_vars: int, q: int, e: int) -> List[Dict[int, Fraction]]:
    """Columns of i_R : V(q, e) -> V(q-1, e+1) in monomial coordinates."""
    if q == 0:
        return [{} for _ in form_basis(n_vars, 0, e)]
    target = _basis_index(n_vars, q - 1, e + 1)
    cols = []
    for idx, m in form_basis(n_vars, q, e):
        col = {}
        for s, i in enumerate(idx):
            mm = m[:i] + (m[i] + 1,) + m[i + 1:]
            col[target[(idx[:s] + idx[s + 1:], mm)]] = Fraction(1 if s % 2 == 0 else -1)
        cols.append(col)
    return cols


@lru_cache(maxsize=128)
def section_basis(n: int, q: int, k: int) -> Tuple[Dict[int, Fraction], ...]:
    """Canonical basis of H^0(P^n, Omega^q(k)) inside V(n+1, q, k-q) (sparse vectors)."""
    e = k - q
    if e < 0:
        return ()
    return tuple(la.kernel_of_columns(_radial_columns(n + 1, q, e)))


def h0_bott(n: int, q: int, k: int) -> int:
    if not 0 <= q <= n:
        raise ValueError(f"q = {q} outside 0..{n}")
    if k > q:
        return comb(k + n - q, k) * comb(k - 1, q)
    if q == 0 and k == 0:
        return 1
    return 0


def h0_direct(n: int, q: int, k: int) -> int:
    """dim ker(i_R) on V(n+1, q, k-q), by exact elimination."""
    if not 0 <= q <= n:
        raise ValueError(f"q = {q} outside 0..{n}")
    e = k - q
    if e < 0:
        return 0
    return la.kernel_dimension(_radial_columns(n + 1, q, e))


@dataclass(frozen=True)
class RestrictionKernel:
    n: int
    q: int
    k: int
    d: int
    basis: Tuple[TwistedSection, ...]
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def injective(self) -> bool:
        return not self.basis


def restriction_kernel(x: Hypersurface, q: int, k: int) -> RestrictionKernel:
    """Sections of Omega^q(k) on P^n whose restriction to X vanishes."""
    if not 1 <= q <= x.n - 1:
        raise ValueError(f"q = {q} outside 1..{x.n - 1}")
    h0 = section_basis(x.n, q, k)
    e = k - q
    basis: Tuple[TwistedSection, ...] = ()
    if h0:
        cols, _, _ = _generators(x.f, q, e)
        kernel = la.intersect_sparse(list(h0), [c for c in cols if c])
        basis = tuple(TwistedSection(form_from_coordinates(x.n + 1, q, e, v), x.n) for v in kernel)
    return RestrictionKernel(x.n, q, k, x.d, basis, len(h0))


def injectivity_expected(x: Hypersurface, q: int, k: int) -> bool:
    """Sufficient condition for injectivity of restriction on sections.

    For n >= 4: k - q + 1 <= d.  For surfaces in P^3: k <= d when q = 1 and
    k - 1 <= d when q = 2 (these coincide with the general bound).
    """
    if x.n == 3 and q == 1:
        return k <= x.d
    if x.n == 3 and q == 2:
        return k - 1 <= x.d
    return k - q + 1 <= x.d


# ---------------------------------------------------------------------------
# degree bound for invariant hypersurfaces


@dataclass(frozen=True)
class PoincareVerdict:
    consistent: bool
    invariant: bool
    d: int
    bound: int
    assumptions: List[str] = field(default_factory=list)


def poincare_bound_check(x: Hypersurface, s: TwistedSection) -> PoincareVerdict:
    """If X is invariant by s, then deg X <= k - q must hold on smooth X.

    An inconsistent verdict means either a bug or a singular X.
    """
    if not x.smooth_asserted:
        raise ValueError("degree bound only applies to hypersurfaces asserted smooth")
    inv = is_invariant(x, s)
    bound = s.k - s.q
    return PoincareVerdict(not inv or x.d <= bound, inv, x.d, bound, x.assumptions())
