"""Command implementations returning deterministic JSON-ready dictionaries.

Every report carries ``"schema": 1`` and a ``"verdict"`` entry, which is what
``--assert`` and the corpus compare against.  Arguments are plain strings so
the CLI and the corpus share one code path.
"""
from __future__ import annotations

import inspect
import re
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from . import catalog
from . import extension as ext
from . import morse
from .grammar import parse_form, parse_poly, parse_section
from .pfaff import (
    TwistedSection,
    decomposability_witness,
    foliation_degree,
    integrability_witness,
    is_foliation,
    is_integrable_codim1,
    make_section,
    saturate,
)
from .restriction import (
    Hypersurface,
    h0_bott,
    h0_direct,
    is_invariant,
    injectivity_expected,
    make_hypersurface,
    poincare_bound_check,
    reassemble,
    restriction_kernel,
    restriction_vanishes,
)

SCHEMA = 1


class UsageError(ValueError):
    """Bad arguments; the CLI maps this to exit code 2."""


# ---------------------------------------------------------------------------
# argument decoding


def rational_text(x: Fraction) -> Any:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def hypersurface_from_spec(spec: str, n: Optional[int] = None) -> Hypersurface:
    """``fermat:<n>:<d>``, ``quadric:<n>`` or an inline homogeneous polynomial."""
    m = re.fullmatch(r"fermat:(\d+):(\d+)", spec.strip())
    if m:
        return catalog.fermat(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"quadric:(\d+)", spec.strip())
    if m:
        return catalog.quadric(int(m.group(1)))
    f = parse_poly(spec, None if n is None else n + 1, homogeneous=True)
    if f.is_zero():
        raise UsageError("hypersurface polynomial is zero")
    return make_hypersurface(f)


def _named_section(name: str, n: int, x: Optional[Hypersurface]) -> Optional[TwistedSection]:
    if name == "pencil":
        return catalog.pencil(n)
    if name == "contact":
        return catalog.contact(n)
    if name in ("dist", "distribution"):
        return catalog.distribution_example(n)
    if name == "decomposable":
        return catalog.decomposable_example(n)
    if name.startswith("pencil:"):
        _, p, q = name.split(":")
        return make_section(catalog.pencil_form(parse_poly(p, n + 1), parse_poly(q, n + 1)), n)
    if name.startswith("omega_fg:"):
        if x is None:
            raise UsageError("omega_fg needs a hypersurface")
        return catalog.omega_fg(x.f, parse_poly(name.split(":", 1)[1], n + 1))
    if name.startswith("log:"):
        _, gs, ls = name.split(":")
        return catalog.log_form([parse_poly(g, n + 1) for g in gs.split("|")], [int(v) for v in ls.split(",")])
    return None


def section_from_spec(spec: str, n: Optional[int], x: Optional[Hypersurface] = None) -> TwistedSection:
    """A catalog name or a form in the text grammar (optionally with header)."""
    text = spec.strip()
    if n is not None:
        named = _named_section(text, n, x)
        if named is not None:
            return named
    if re.match(r"^\s*n\s*=", text):
        return parse_section(text, n)
    if n is None:
        raise UsageError("--n is required for an inline form without a header")
    return make_section(parse_form(text, n + 1), n)


def point_from_spec(spec: str) -> Tuple[Fraction, ...]:
    try:
        return tuple(Fraction(v.strip()) for v in spec.replace(":", ",").strip("[]() ").split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad point {spec!r}: {exc}") from None


def _hyp_info(x: Hypersurface) -> Dict[str, Any]:
    return {"n": x.n, "d": x.d, "f": x.f.to_str(), "smoothness": x.smoothness_evidence}


def _section_info(s: TwistedSection) -> Dict[str, Any]:
    return {"n": s.n, "q": s.q, "k": s.k, "form": s.form.to_str()}


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _report(verdict: Any, **fields) -> Dict[str, Any]:
    out = {"schema": SCHEMA, "verdict": verdict}
    out.update(fields)
    return out


# ---------------------------------------------------------------------------
# commands


def dims(n: str, q: str, k: str) -> Dict[str, Any]:
    n_, q_, k_ = int(n), int(q), int(k)
    b, d = h0_bott(n_, q_, k_), h0_direct(n_, q_, k_)
    return _report("agree" if b == d else "disagree", n=n_, q=q_, k=k_, bott=b, direct=d)


def kernel(f: str, q: str, k: str, n: Optional[str] = None, basis: bool = False) -> Dict[str, Any]:
    x = hypersurface_from_spec(f, None if n is None else int(n))
    K = restriction_kernel(x, int(q), int(k))
    out = _report(
        "injective" if K.injective else "not-injective",
        n=x.n, d=x.d, q=K.q, k=K.k, kernel_dim=K.dim, ambient_dim=K.ambient_dim,
        injective=K.injective, injectivity_bound=injectivity_expected(x, K.q, K.k),
    )
    if basis:
        out["basis"] = [b.form.to_str() for b in K.basis]
    return out


def invariant(f: str, omega: str, n: Optional[str] = None) -> Dict[str, Any]:
    x = hypersurface_from_spec(f, None if n is None else int(n))
    s = section_from_spec(omega, x.n, x)
    inv = is_invariant(x, s)
    return _report(_bool(inv), invariant=inv, hypersurface=_hyp_info(x), section=_section_info(s))


def restrict_zero(f: str, omega: str, n: Optional[str] = None) -> Dict[str, Any]:
    x = hypersurface_from_spec(f, None if n is None else int(n))
    try:
        w = section_from_spec(omega, x.n, x).form
    except ValueError:
        # any homogeneous form is allowed here, sections or not
        w = parse_form(omega, x.n + 1)
    v = restriction_vanishes(x, w)
    out = _report(_bool(v.vanishes), vanishes=v.vanishes, reason=v.reason, q=w.q)
    if v.beta is not None:
        out["beta"] = v.beta.to_str()
        out["gamma"] = v.gamma.to_str()
        out["reassembles"] = reassemble(x, v.beta, v.gamma) == w
    return out


def saturate_cmd(omega: str, n: Optional[str] = None) -> Dict[str, Any]:
    s = section_from_spec(omega, None if n is None else int(n))
    r = saturate(s)
    return _report(
        "saturated" if r.was_saturated else "divisor-removed",
        removed_divisor=r.removed_divisor.to_str(), twist_drop=r.twist_drop,
        section=_section_info(r.saturated), degree=foliation_degree(r.saturated),
    )


def integrable(omega: str, n: Optional[str] = None) -> Dict[str, Any]:
    s = section_from_spec(omega, None if n is None else int(n))
    w = integrability_witness(s)
    v = is_foliation(s)
    return _report(
        _bool(w.is_zero()), integrable=w.is_zero(), witness=w.to_str(), degree=foliation_degree(s),
        saturated=v.saturated, is_foliation=v.is_foliation, failed=v.failed,
    )


def decomposable(omega: str, n: Optional[str] = None, check_integrability: bool = False) -> Dict[str, Any]:
    s = section_from_spec(omega, None if n is None else int(n))
    w = decomposability_witness(s)
    v = is_foliation(s, check_integrability)
    return _report(
        _bool(w.is_zero()), decomposable=w.is_zero(), witness=w.to_str(), integrable=v.integrable,
        saturated=v.saturated, is_foliation=v.is_foliation, failed=v.failed, notes=v.notes,
    )


def _outcome(o: ext.ExtensionOutcome, x: Hypersurface) -> Dict[str, Any]:
    out = _report(
        o.kind, kernel_dim=o.kernel.dim, witness=o.witness.to_str(), assumptions=list(o.assumptions),
        hypotheses=dict(o.hypotheses), candidate=_section_info(o.candidate), hypersurface=_hyp_info(x),
        candidate_integrable=o.candidate_integrable, notes=list(o.notes),
        degree=foliation_degree(o.candidate),
    )
    if o.certificate is not None:
        out["certificate_verified"] = o.certificate.verify()
    if o.kernel.dim:
        out["kernel_basis"] = [b.form.to_str() for b in o.kernel.basis]
    return out


def extend(f: str, beta: str, n: Optional[str] = None) -> Dict[str, Any]:
    x = hypersurface_from_spec(f, None if n is None else int(n))
    return _outcome(ext.extend_codim1(x, section_from_spec(beta, x.n, x)), x)


def extend_dist(f: str, beta: str, n: Optional[str] = None) -> Dict[str, Any]:
    x = hypersurface_from_spec(f, None if n is None else int(n))
    return _outcome(ext.extend_distribution_codim2(x, section_from_spec(beta, x.n, x)), x)


def certify_nonextension(f: str, beta: str, n: Optional[str] = None) -> Dict[str, Any]:
    x = hypersurface_from_spec(f, None if n is None else int(n))
    s = section_from_spec(beta, x.n, x)
    o = ext.extend_codim1(x, s) if s.q == 1 else ext.extend_distribution_codim2(x, s)
    cert = o.certificate
    ok = cert is not None and cert.verify()
    out = _report("certified" if ok else "no-certificate", certified=ok, kind=o.kind, kernel_dim=o.kernel.dim)
    if cert is not None:
        out["witness"] = cert.witness.to_str()
        out["witness_restricts_to_zero"] = cert.restriction.vanishes
        out["restriction_reason"] = cert.restriction.reason
    out["assumptions"] = list(o.assumptions)
    return out


def trivial_extend(omega: str, n: Optional[str] = None) -> Dict[str, Any]:
    s = section_from_spec(omega, None if n is None else int(n))
    t = ext.trivial_extension(s)
    back = ext.restrict_to_last_hyperplane(t)
    out = _report("extended", section=_section_info(t), restriction_recovers_input=back.form == s.form)
    if s.q == 1:
        out["integrable_in"] = is_integrable_codim1(s)
        out["integrable_out"] = is_integrable_codim1(t)
    return out


def roundtrip(f: str, alpha: str, n: Optional[str] = None) -> Dict[str, Any]:
    x = hypersurface_from_spec(f, None if n is None else int(n))
    s = section_from_spec(alpha, x.n, x)
    r = ext.restriction_roundtrip(x, s)
    verdict = "recovered" if r.recovered else ("not-recovered" if r.checked else "hypotheses-fail")
    return _report(
        verdict, checked=r.checked, recovered=r.recovered, kernel_dim=r.kernel_dim,
        hypotheses=dict(r.hypotheses), failures=list(r.failures), degree=foliation_degree(s),
    )


def poincare(f: str, omega: str, n: Optional[str] = None) -> Dict[str, Any]:
    x = hypersurface_from_spec(f, None if n is None else int(n))
    s = section_from_spec(omega, x.n, x)
    v = poincare_bound_check(x, s)
    return _report(
        "consistent" if v.consistent else "inconsistent", invariant=v.invariant, d=v.d, bound=v.bound,
        assumptions=list(v.assumptions),
    )


def gauss(f: str, point: str, n: Optional[str] = None) -> Dict[str, Any]:
    x = hypersurface_from_spec(f, None if n is None else int(n))
    g = morse.gauss_map_value(x, point_from_spec(point))
    return _report(list(g), value=list(g))


def sff_rank(f: str, point: str, n: Optional[str] = None) -> Dict[str, Any]:
    x = hypersurface_from_spec(f, None if n is None else int(n))
    r = morse.second_fundamental_rank(x, point_from_spec(point))
    return _report(r, rank=r, maximal=r == x.n - 1)


def _matrix(m) -> List[List[Any]]:
    return [[rational_text(v) for v in row] for row in m]


def morse_cmd(
    f: str, g: str, point: str, chart: str = "0", n: Optional[str] = None, denominator: Optional[str] = None,
    lambda_family: Optional[str] = None, lambda_check: Optional[str] = None,
) -> Dict[str, Any]:
    x = hypersurface_from_spec(f, None if n is None else int(n))
    c = int(chart)
    pt = point_from_spec(point)
    if len(pt) == x.n + 1:
        if pt[c] == 0:
            raise UsageError(f"point lies outside the chart x{c} != 0")
        pt = tuple(v / pt[c] for i, v in enumerate(pt) if i != c)
    p = morse.make_probe_point(x, c, pt)
    gp = parse_poly(g, x.n + 1)
    den = parse_poly(denominator, x.n + 1) if denominator else None
    r = morse.morse_classify(x, gp, p, den)
    out = _report(
        r.verdict, critical=r.critical,
        multiplier=None if r.multiplier is None else rational_text(r.multiplier),
        hessian=None if r.restricted_hessian is None else _matrix(r.restricted_hessian),
        det=None if r.determinant is None else rational_text(r.determinant),
        tangent_basis=_matrix(r.tangent_basis), chart=c, point=[rational_text(v) for v in pt],
    )
    if lambda_family is not None:
        if den is not None:
            raise UsageError("--lambda-family works with polynomial first integrals only")
        k = int(lambda_family)
        fam = morse.lambda_family(x, gp, p, k)
        out["lambda_poly"] = fam.det_poly.to_str(["lam"])
        out["lambda_degree"] = fam.degree
        out["lambda_leading"] = rational_text(fam.leading_coefficient)
        out["bad_lambdas"] = [rational_text(v) for v in fam.bad_lambdas]
        out["lambda_invertible"] = fam.invertible
        if lambda_check:
            checks = []
            for v in point_from_spec(lambda_check):
                direct = morse.morse_classify(x, morse.specialized_first_integral(x, gp, p, k, v), p)
                checks.append({
                    "lambda": rational_text(v), "family": rational_text(fam(v)),
                    "direct": None if direct.determinant is None else rational_text(direct.determinant),
                    "agree": direct.determinant == fam(v),
                })
            out["lambda_check"] = checks
    return out


COMMANDS: Dict[str, Callable[..., Dict[str, Any]]] = {
    "dims": dims,
    "kernel": kernel,
    "invariant": invariant,
    "restrict-zero": restrict_zero,
    "saturate": saturate_cmd,
    "integrable": integrable,
    "decomposable": decomposable,
    "extend": extend,
    "extend-dist": extend_dist,
    "certify-nonextension": certify_nonextension,
    "trivial-extend": trivial_extend,
    "roundtrip": roundtrip,
    "poincare": poincare,
    "gauss": gauss,
    "sff-rank": sff_rank,
    "morse": morse_cmd,
}


def run(command: str, args: Dict[str, Any]) -> Dict[str, Any]:
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    fn = COMMANDS[command]
    try:
        inspect.signature(fn).bind(**args)
    except TypeError as exc:
        raise UsageError(f"{command}: {exc}") from None
    return fn(**args)


def verdict_text(v: Any) -> str:
    if isinstance(v, bool):
        return _bool(v)
    if isinstance(v, (list, tuple)):
        return ",".join(str(a) for a in v)
    return str(v)
