import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import homogeneous_polys
from folex import catalog
from folex import extension as ext
from folex.forms import DiffForm, radial_contraction, wedge
from folex.grammar import parse_form, parse_poly, parse_section
from folex.pfaff import is_integrable_codim1, make_section
from folex.poly import Poly
from folex.restriction import restriction_vanishes

WITNESS = radial_contraction(DiffForm.dx(4, 0, 1, 2, 3)) * 2


def test_extension_degree_condition():
    assert ext.extension_degree_condition(catalog.fermat(4, 4), 0)
    assert not ext.extension_degree_condition(catalog.quadric(4), 1)
    assert not ext.extension_degree_condition(catalog.fermat(4, 3), 1)


def test_transversality():
    assert ext.transversality_guaranteed(catalog.quadric(4), 0)
    assert not ext.transversality_guaranteed(catalog.quadric(4), 1)
    assert ext.transversality_guaranteed(catalog.fermat(4, 4), 0)
    with pytest.raises(ValueError):
        ext.transversality_guaranteed(catalog.quadric(3), 0)


def test_extend_pencil_on_quartic():
    o = ext.extend_codim1(catalog.fermat(4, 4), catalog.pencil(4))
    assert o.kind == ext.UNIQUE_INTEGRABLE and o.kernel.dim == 0
    assert o.candidate.form == catalog.pencil(4).form
    assert o.hypotheses["degree_condition"] and o.hypotheses["transversality"]
    assert ext.REPRESENTATIVE_ASSUMPTION in o.assumptions


@pytest.mark.parametrize("d", [2, 3])
def test_contact_does_not_extend(d):
    x = catalog.fermat(3, d)
    o = ext.extend_codim1(x, catalog.contact(3))
    assert o.kind == ext.UNIQUE_NON_INTEGRABLE and o.kernel.dim == 0
    assert o.witness == WITNESS
    assert o.certificate is not None and o.certificate.verify()
    assert o.hypotheses["surface_injectivity"]


def test_distribution_non_extension():
    o = ext.extend_distribution_codim2(catalog.fermat(4, 3), catalog.distribution_example(4))
    assert o.kind == ext.UNIQUE_NON_INTEGRABLE and o.kernel.dim == 0
    assert not o.witness.is_zero() and o.certificate.verify()
    assert o.hypotheses["n4_nonextension_regime"]


def test_distribution_extends_on_quintic_p5():
    o = ext.extend_distribution_codim2(catalog.fermat(5, 5), catalog.decomposable_example(5))
    assert o.kind == ext.UNIQUE_INTEGRABLE and o.kernel.dim == 0
    assert o.hypotheses["distribution_degree_condition"]


def test_distribution_needs_n4():
    with pytest.raises(ValueError):
        ext.extend_distribution_codim2(catalog.quadric(3), catalog.decomposable_example(3))


def test_wrong_q_rejected():
    with pytest.raises(ValueError):
        ext.extend_codim1(catalog.fermat(4, 3), catalog.distribution_example(4))


def test_restricted_non_integrable_input_rejected():
    eta = make_section(parse_form("x0*dx1 - x1*dx0 + x2*dx3 - x3*dx2", 5), 4)
    with pytest.raises(ext.RestrictedFormNotIntegrable):
        ext.extend_codim1(catalog.fermat(4, 4), eta)


def test_kernel_coset_reported():
    x = catalog.quadric(3)
    beta = catalog.omega_fg(x.f, Poly.var(4, 0))
    o = ext.extend_codim1(x, beta)
    assert o.kind == ext.KERNEL_COSET and o.kernel.dim > 0
    assert o.certificate is None


def test_certificate_rejects_tampering():
    o = ext.extend_codim1(catalog.quadric(3), catalog.contact(3))
    forged = ext.NonExtensionCertificate(o.certificate.hypersurface, o.certificate.section, 0,
                                         DiffForm.zero(4, 3), o.certificate.restriction)
    assert not forged.verify()


def test_candidate_check():
    x = catalog.fermat(3, 3)
    beta = catalog.pencil(3)
    assert ext.check_candidate(x, beta, beta).extends
    assert not ext.check_candidate(x, beta, catalog.contact(3)).extends


def test_trivial_extension_of_pencil():
    s = parse_section("n=2 q=1 k=2\nx0*dx1 - x1*dx0")
    t = ext.trivial_extension(s, 3)
    assert t.n == 3 and t.form == catalog.pencil(3).form
    assert ext.restrict_to_last_hyperplane(t).form == s.form
    with pytest.raises(ValueError):
        ext.trivial_extension(s, 4)
    assert not is_integrable_codim1(ext.trivial_extension(catalog.contact(3)))


def test_roundtrip_examples():
    r = ext.restriction_roundtrip(catalog.fermat(4, 4), catalog.pencil(4))
    assert r.checked and r.recovered and r.kernel_dim == 0
    p, q = parse_poly("x0^2 + x1*x2", 5), parse_poly("x1^2 + x3*x4", 5)
    alpha = make_section(catalog.pencil_form(p, q))
    r = ext.restriction_roundtrip(catalog.fermat(4, 6), alpha)
    assert r.checked and r.recovered
    r = ext.restriction_roundtrip(catalog.fermat(4, 5), alpha)
    assert not r.checked and "degree_bound" in r.failures


@given(st.data())
def test_trivial_extension_properties(data):
    p = data.draw(homogeneous_polys(n_vars=3, degree=data.draw(st.integers(1, 2)), allow_zero=False))
    q = data.draw(homogeneous_polys(n_vars=3, degree=p.degree, allow_zero=False))
    w = catalog.pencil_form(p, q)
    if w.is_zero():
        return
    s = make_section(w, 2)
    t = ext.trivial_extension(s)
    assert ext.restrict_to_last_hyperplane(t).form == s.form
    assert is_integrable_codim1(t) == is_integrable_codim1(s)
    assert radial_contraction(t.form).is_zero()


def test_certificate_ingredients_independent():
    o = ext.extend_codim1(catalog.fermat(3, 3), catalog.contact(3))
    w = wedge(o.candidate.form, o.candidate.form.d())
    assert w == o.witness and restriction_vanishes(catalog.fermat(3, 3), w).vanishes
