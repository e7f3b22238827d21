"""Named hypersurfaces and sections used by the CLI and the corpus."""
from __future__ import annotations

from typing import Optional, Sequence

from .forms import DiffForm, differential, radial_contraction
from .pfaff import TwistedSection, make_section
from .poly import Poly
from .restriction import Hypersurface, make_hypersurface


def fermat_poly(n: int, d: int) -> Poly:
    return Poly(n + 1, {tuple(d * (j == i) for j in range(n + 1)): 1 for i in range(n + 1)})


def fermat(n: int, d: int) -> Hypersurface:
    return make_hypersurface(fermat_poly(n, d))


def quadric(n: int) -> Hypersurface:
    return fermat(n, 2)


def pencil_form(p: Poly, q: Poly) -> DiffForm:
    """P dQ - Q dP."""
    return differential(q) * p - differential(p) * q


def pencil(n: int, i: int = 0, j: int = 1) -> TwistedSection:
    return make_section(pencil_form(Poly.var(n + 1, i), Poly.var(n + 1, j)), n)


def contact(n: int = 3) -> TwistedSection:
    """x0 dx1 - x1 dx0 + x2 dx3 - x3 dx2 + ... on odd-dimensional P^n."""
    if n % 2 == 0:
        raise ValueError("the contact form needs odd n")
    w = DiffForm.zero(n + 1, 1)
    for i in range(0, n + 1, 2):
        w = w + pencil_form(Poly.var(n + 1, i), Poly.var(n + 1, i + 1))
    return make_section(w, n)


def distribution_example(n: int = 4) -> TwistedSection:
    """i_R(dx0^dx1^dx2 + dx2^dx3^dx4), a non-decomposable 2-form on P^4."""
    if n < 4:
        raise ValueError("needs n >= 4")
    return make_section(radial_contraction(DiffForm.dx(n + 1, 0, 1, 2) + DiffForm.dx(n + 1, 2, 3, 4)), n)


def decomposable_example(n: int) -> TwistedSection:
    """i_R(dx0^dx1^dx2): a linear projection's codimension-two foliation."""
    if n < 3:
        raise ValueError("needs n >= 3")
    return make_section(radial_contraction(DiffForm.dx(n + 1, 0, 1, 2)), n)


def omega_fg(f: Poly, g: Poly) -> TwistedSection:
    """deg(g) g df - deg(f) f dg; leaves {f = 0} and {g = 0} invariant."""
    w = differential(f) * g.scale(g.degree) - differential(g) * f.scale(f.degree)
    return make_section(w)


def log_form(gs: Sequence[Poly], lambdas: Sequence[int]) -> TwistedSection:
    """sum_i lambda_i (prod_{j != i} g_j) dg_i, integrable when sum lambda_i deg g_i = 0."""
    if len(gs) != len(lambdas):
        raise ValueError("one residue per factor")
    if sum(l * g.degree for l, g in zip(lambdas, gs)):
        raise ValueError("residues must satisfy sum lambda_i deg g_i = 0")
    n_vars = gs[0].n_vars
    w: Optional[DiffForm] = None
    for i, (g, lam) in enumerate(zip(gs, lambdas)):
        others = Poly.one(n_vars)
        for j, h in enumerate(gs):
            if j != i:
                others = others * h
        term = differential(g) * others.scale(lam)
        w = term if w is None else w + term
    return make_section(w)
