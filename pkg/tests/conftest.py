from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from folex.forms import DiffForm, form_basis, monomials
from folex.poly import Poly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_int = st.integers(min_value=-5, max_value=5)
rational = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
sparse_rational = st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), rational)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(sparse_rational) for _ in range(c)] for _ in range(r)]


@st.composite
def homogeneous_polys(draw, n_vars=None, degree=None, max_degree=3, allow_zero=True):
    n = draw(st.integers(1, 4)) if n_vars is None else n_vars
    d = draw(st.integers(0, max_degree)) if degree is None else degree
    mons = monomials(n, d)
    picked = draw(st.lists(st.sampled_from(mons), max_size=5, unique=True)) if mons else []
    terms = {m: draw(st.integers(-4, 4)) for m in picked}
    p = Poly(n, terms)
    if not allow_zero and p.is_zero():
        p = Poly(n, {mons[0]: 1})
    return p


@st.composite
def polys(draw, n_vars, max_degree=3):
    """Possibly inhomogeneous."""
    parts = [draw(homogeneous_polys(n_vars=n_vars, degree=d)) for d in range(max_degree + 1)]
    out = Poly.zero(n_vars)
    for p in parts:
        out = out + p
    return out


@st.composite
def forms(draw, n_vars, q=None, e=None, max_e=2, max_terms=4):
    q = draw(st.integers(0, n_vars)) if q is None else q
    e = draw(st.integers(0, max_e)) if e is None else e
    basis = form_basis(n_vars, q, e)
    picked = draw(st.lists(st.sampled_from(basis), max_size=max_terms, unique=True)) if basis else []
    w = DiffForm.zero(n_vars, q)
    for idx, m in picked:
        c = draw(st.integers(-3, 3))
        if c:
            w = w + DiffForm(n_vars, q, {idx: Poly(n_vars, {m: c})})
    return w
