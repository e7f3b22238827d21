"""Extension of foliations and distributions from a hypersurface to P^n.

A foliation on X is always handed in as an ambient representative beta (a
section on P^n whose restriction defines it).  When restriction is injective
on the relevant sections, beta is the only candidate extension, so the
verdict reduces to checking beta itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .forms import DiffForm, wedge
from .pfaff import (
    TwistedSection,
    foliation_degree,
    is_integrable_codim1,
    make_section,
    saturate,
)
from .poly import Poly
from .restriction import (
    Hypersurface,
    RestrictionKernel,
    RestrictionVerdict,
    injectivity_expected,
    restriction_kernel,
    restriction_vanishes,
)

UNIQUE_INTEGRABLE = "UniqueIntegrable"
UNIQUE_NON_INTEGRABLE = "UniqueNonIntegrable"
KERNEL_COSET = "KernelCoset"

REPRESENTATIVE_ASSUMPTION = (
    "foliation on X given by an ambient representative (restriction assumed surjective, not verified)"
)


class RestrictedFormNotIntegrable(ValueError):
    pass


class RestrictedFormNotDecomposable(ValueError):
    pass


def extension_degree_condition(x: Hypersurface, l: int) -> bool:
    return x.d > 2 * l + 1


def transversality_guaranteed(x: Hypersurface, l: int) -> bool:
    """True when every degree-l foliation restricts to a saturated one on X."""
    if x.n <= 3:
        raise ValueError("transversality criterion needs n > 3")
    return l + 2 <= x.d


@dataclass(frozen=True)
class NonExtensionCertificate:
    hypersurface: Hypersurface
    section: TwistedSection
    kernel_dim: int
    witness: DiffForm
    restriction: RestrictionVerdict

    def verify(self) -> bool:
        """Recompute every ingredient from scratch."""
        if self.witness.is_zero():
            return False
        if not restriction_vanishes(self.hypersurface, self.witness).vanishes:
            return False
        k = restriction_kernel(self.hypersurface, self.section.q, self.section.k)
        return k.dim == 0 == self.kernel_dim


@dataclass(frozen=True)
class ExtensionOutcome:
    kind: str
    candidate: TwistedSection
    kernel: RestrictionKernel
    witness: DiffForm
    assumptions: List[str]
    hypotheses: Dict[str, bool]
    certificate: Optional[NonExtensionCertificate] = None
    candidate_integrable: bool = True
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.kind in (UNIQUE_INTEGRABLE, UNIQUE_NON_INTEGRABLE) and self.kernel.dim:
            raise AssertionError("unique verdict with a nonzero kernel")
        if self.kind == UNIQUE_NON_INTEGRABLE and self.witness.is_zero():
            raise AssertionError("non-integrable verdict without a witness")


def _check_section(x: Hypersurface, beta: TwistedSection, q: int) -> None:
    if beta.q != q:
        raise ValueError(f"expected a {q}-form, got q = {beta.q}")
    if beta.n != x.n:
        raise ValueError(f"section lives on P^{beta.n}, hypersurface in P^{x.n}")
    if beta.form.is_zero():
        raise ValueError("zero section")


def extend_codim1(x: Hypersurface, beta: TwistedSection) -> ExtensionOutcome:
    _check_section(x, beta, 1)
    witness = wedge(beta.form, beta.form.d())
    restricted = restriction_vanishes(x, witness)
    if not restricted.vanishes:
        raise RestrictedFormNotIntegrable("beta ^ d(beta) does not vanish on X")
    l = foliation_degree(beta)
    kernel = restriction_kernel(x, 1, beta.k)
    hyp = {
        "degree_condition": x.n > 3 and extension_degree_condition(x, l),
        "transversality": x.n > 3 and transversality_guaranteed(x, l),
        "surface_injectivity": x.n == 3 and beta.k <= x.d,
        "injectivity_bound": injectivity_expected(x, 1, beta.k),
    }
    assumptions = x.assumptions() + [REPRESENTATIVE_ASSUMPTION]
    integrable = witness.is_zero()
    if kernel.dim:
        return ExtensionOutcome(
            KERNEL_COSET, beta, kernel, witness, assumptions, hyp, None, integrable,
            ["coset beta + K not searched for integrable members"],
        )
    if integrable:
        return ExtensionOutcome(UNIQUE_INTEGRABLE, beta, kernel, witness, assumptions, hyp)
    cert = NonExtensionCertificate(x, beta, 0, witness, restricted)
    return ExtensionOutcome(UNIQUE_NON_INTEGRABLE, beta, kernel, witness, assumptions, hyp, cert, False)


def extend_distribution_codim2(x: Hypersurface, beta: TwistedSection) -> ExtensionOutcome:
    _check_section(x, beta, 2)
    if x.n < 4:
        raise ValueError("codimension two distributions are handled for n >= 4")
    witness = wedge(beta.form, beta.form)
    restricted = restriction_vanishes(x, witness)
    if not restricted.vanishes:
        raise RestrictedFormNotDecomposable("beta ^ beta does not vanish on X")
    kernel = restriction_kernel(x, 2, beta.k)
    hyp = {
        "distribution_degree_condition": x.n > 4 and 2 * beta.k - 3 <= x.d,
        "n4_nonextension_regime": x.n == 4,
        "injectivity_bound": injectivity_expected(x, 2, beta.k),
    }
    notes = []
    if x.n == 4 and beta.k == 3:
        notes.append("injectivity already holds for d >= 2 here; the worked example uses d > 2")
    assumptions = x.assumptions() + [REPRESENTATIVE_ASSUMPTION]
    decomposable = witness.is_zero()
    if kernel.dim:
        notes.append("coset beta + K not searched for decomposable members")
        return ExtensionOutcome(KERNEL_COSET, beta, kernel, witness, assumptions, hyp, None, decomposable, notes)
    if decomposable:
        return ExtensionOutcome(UNIQUE_INTEGRABLE, beta, kernel, witness, assumptions, hyp, notes=notes)
    cert = NonExtensionCertificate(x, beta, 0, witness, restricted)
    return ExtensionOutcome(UNIQUE_NON_INTEGRABLE, beta, kernel, witness, assumptions, hyp, cert, False, notes)


@dataclass(frozen=True)
class CandidateCheck:
    same_restriction: bool
    integrable: bool

    @property
    def extends(self) -> bool:
        return self.same_restriction and self.integrable


def check_candidate(x: Hypersurface, beta: TwistedSection, candidate: TwistedSection) -> CandidateCheck:
    """Does ``candidate`` restrict like beta on X, and is it integrable (q = 1) or decomposable (q = 2)?"""
    if (candidate.q, candidate.k, candidate.n) != (beta.q, beta.k, beta.n):
        raise ValueError("candidate must have the same q, k and n as beta")
    diff = candidate.form - beta.form
    same = diff.is_zero() or restriction_vanishes(x, diff).vanishes
    w = candidate.form
    ok = wedge(w, w.d() if w.q == 1 else w).is_zero()
    return CandidateCheck(same, ok)


# ---------------------------------------------------------------------------
# trivial extensions


def _add_last_variable(p: Poly) -> Poly:
    return Poly(p.n_vars + 1, {e + (0,): c for e, c in p.terms.items()})


def trivial_extension(omega: TwistedSection, n: Optional[int] = None) -> TwistedSection:
    """Pull back along the projection P^n --> P^{n-1} from [0:...:0:1]."""
    if n is None:
        n = omega.n + 1
    if omega.n != n - 1:
        raise ValueError(f"input lives on P^{omega.n}, expected P^{n - 1}")
    form = DiffForm(n + 1, omega.q, {idx: _add_last_variable(c) for idx, c in omega.form.items()})
    return make_section(form, n)


def restrict_to_last_hyperplane(s: TwistedSection) -> TwistedSection:
    """Restriction to {x_n = 0}, read in the variables x_0..x_{n-1}."""
    last = s.form.n_vars - 1
    comps = {}
    for idx, c in s.form.items():
        if last in idx:
            continue
        kept = Poly(last, {e[:-1]: a for e, a in c.terms.items() if e[-1] == 0})
        if kept:
            comps[idx] = kept
    return TwistedSection(DiffForm(last, s.q, comps), s.n - 1)


# ---------------------------------------------------------------------------
# round trips


@dataclass(frozen=True)
class RoundTripReport:
    checked: bool
    recovered: bool
    kernel_dim: Optional[int]
    hypotheses: Dict[str, bool]
    outcome: Optional[ExtensionOutcome]
    failures: List[str]


def restriction_roundtrip(x: Hypersurface, alpha: TwistedSection) -> RoundTripReport:
    """Restrict a foliation of P^n to X and check that it extends back to itself."""
    l = foliation_degree(alpha)
    hyp = {
        "n_gt_3": x.n > 3,
        "degree_bound": extension_degree_condition(x, l),
        "q_is_1": alpha.q == 1,
    }
    if alpha.q == 1:
        hyp["integrable"] = is_integrable_codim1(alpha)
        hyp["saturated"] = saturate(alpha).was_saturated
    if x.n > 3:
        hyp["transversality"] = transversality_guaranteed(x, l)
    failures = [k for k, v in hyp.items() if not v]
    if failures:
        return RoundTripReport(False, False, None, hyp, None, failures)
    outcome = extend_codim1(x, alpha)
    recovered = outcome.kind == UNIQUE_INTEGRABLE and outcome.candidate.form == alpha.form
    return RoundTripReport(True, recovered, outcome.kernel.dim, hyp, outcome, [] if recovered else ["not recovered"])
