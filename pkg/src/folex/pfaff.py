"""Twisted projective forms: validation, degree, saturation, integrability."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Union

from .forms import DiffForm, InhomogeneousForm, VectorField, interior_product, radial_contraction, wedge
from .poly import Poly, exact_divide, gcd_many

STANDARD_CRITERION_NOTE = "standard contraction criterion, no extension guarantee attached"


class RadialContractionNonzero(ValueError):
    """The form does not descend to projective space (i_R(form) != 0)."""


InhomogeneousCoefficients = InhomogeneousForm


class UnsupportedDegree(ValueError):
    pass


@dataclass(frozen=True)
class TwistedSection:
    """A global section of Omega^q(k) on P^n, stored as its affine form."""

    form: DiffForm
    n: int

    @property
    def q(self) -> int:
        return self.form.q

    @property
    def k(self) -> int:
        return self.form.coefficient_degree + self.form.q

    @property
    def e(self) -> int:
        return self.form.coefficient_degree

    def __str__(self) -> str:
        return f"n={self.n} q={self.q} k={self.k}\n{self.form.to_str()}"


def make_section(form: DiffForm, n: Optional[int] = None) -> TwistedSection:
    if n is None:
        n = form.n_vars - 1
    if form.n_vars != n + 1:
        raise ValueError(f"a form on P^{n} needs {n + 1} variables, got {form.n_vars}")
    if form.is_zero():
        raise ValueError("the zero form is not a section")
    if radial_contraction(form):
        raise RadialContractionNonzero(f"i_R does not vanish on {form}")
    return TwistedSection(form, n)


def as_form(s: Union[TwistedSection, DiffForm]) -> DiffForm:
    return s.form if isinstance(s, TwistedSection) else s


def foliation_degree(s: TwistedSection) -> int:
    return s.k - s.q - 1


@dataclass(frozen=True)
class SaturationResult:
    saturated: TwistedSection
    removed_divisor: Poly
    twist_drop: int

    @property
    def was_saturated(self) -> bool:
        return self.twist_drop == 0


def saturate(s: TwistedSection) -> SaturationResult:
    g = gcd_many(s.form.coefficients())
    if g.is_constant():
        return SaturationResult(s, Poly.one(s.form.n_vars), 0)
    quotient = s.form.map_coefficients(lambda c: exact_divide(c, g))
    return SaturationResult(TwistedSection(quotient, s.n), g, g.degree)


def integrability_witness(s: TwistedSection) -> DiffForm:
    """The 3-form omega ^ d(omega)."""
    if s.q != 1:
        raise UnsupportedDegree(f"integrability of codimension one needs q = 1, got q = {s.q}")
    return wedge(s.form, s.form.d())


def is_integrable_codim1(s: TwistedSection) -> bool:
    return integrability_witness(s).is_zero()


def decomposability_witness(s: TwistedSection) -> DiffForm:
    if s.q != 2:
        raise UnsupportedDegree(f"decomposability check needs q = 2, got q = {s.q}")
    return wedge(s.form, s.form)


def is_decomposable_codim2(s: TwistedSection) -> bool:
    return decomposability_witness(s).is_zero()


def is_integrable_codim2(s: TwistedSection) -> bool:
    """Contraction criterion for a decomposable 2-form.

    For every constant vector field d/dx_j, both i_j(w) ^ w and i_j(w) ^ dw
    must vanish.  The first family is the Plücker condition, the second the
    Frobenius condition on the kernel distribution.
    """
    if s.q != 2:
        raise UnsupportedDegree(f"codimension two integrability needs q = 2, got q = {s.q}")
    w = s.form
    dw = w.d()
    for j in range(w.n_vars):
        c = interior_product(VectorField.coordinate(w.n_vars, j), w)
        if wedge(c, w) or wedge(c, dw):
            return False
    return True


@dataclass(frozen=True)
class FoliationVerdict:
    is_foliation: bool
    degree: int
    saturated: bool
    integrable: Optional[bool]
    decomposable: Optional[bool]
    failed: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


def is_foliation(s: TwistedSection, check_integrability: bool = False) -> FoliationVerdict:
    """Saturation plus integrability (q = 1) or decomposability (q = 2).

    The singular-set condition is checked in its divisorial form only: the
    coefficients must have no common factor.  With ``check_integrability``
    a 2-form is also run through :func:`is_integrable_codim2`.
    """
    if s.q not in (1, 2):
        raise UnsupportedDegree(f"foliation check supports q in (1, 2), got q = {s.q}")
    failed: List[str] = []
    notes: List[str] = ["codim(sing) >= 2 checked in the divisorial sense only"]
    saturated = saturate(s).was_saturated
    if not saturated:
        failed.append("saturation")
    integrable = decomposable = None
    if s.q == 1:
        integrable = is_integrable_codim1(s)
        if not integrable:
            failed.append("integrability")
    else:
        decomposable = is_decomposable_codim2(s)
        notes.append(f"decomposability via w^w = 0 ({STANDARD_CRITERION_NOTE})")
        if not decomposable:
            failed.append("decomposability")
        if check_integrability:
            integrable = decomposable and is_integrable_codim2(s)
            notes.append(f"integrability via contraction criterion ({STANDARD_CRITERION_NOTE})")
            if not integrable:
                failed.append("integrability")
    return FoliationVerdict(not failed, foliation_degree(s), saturated, integrable, decomposable, failed, notes)
