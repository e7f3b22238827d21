"""Pointwise second-order data on hypersurfaces: Gauss map, second
fundamental form rank, constrained Hessians and the lambda family.

Everything is evaluated at explicit rational points, so no field extensions
are needed: the second fundamental form is handled as the Hessian of f
restricted to ker df(p), and Morse classification uses the Hessian of
g - c*f restricted to the tangent space, where c is the Lagrange multiplier.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from . import exactlinalg as la
from .poly import Poly, dehomogenize, substitute_linear
from .restriction import Hypersurface

MORSE = "Morse"
DEGENERATE = "Degenerate"
NOT_CRITICAL = "NotCritical"


class SingularPoint(ValueError):
    """The gradient of f vanishes at the point."""


class ZeroLinearPart(ValueError):
    pass


class NotAdapted(ValueError):
    """The tangent hyperplane at the probe point is not {last affine coordinate = const}."""


def _point(p: Sequence) -> Tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in p)


def _on_x(x: Hypersurface, p: Sequence) -> Tuple[Fraction, ...]:
    p = _point(p)
    if len(p) != x.n + 1:
        raise ValueError(f"point needs {x.n + 1} homogeneous coordinates")
    if not any(p):
        raise ValueError("the zero vector is not a projective point")
    if x.f.evaluate(p) != 0:
        raise ValueError(f"point {p} is not on X")
    return p


def primitive_integer_vector(v: Sequence[Fraction]) -> Tuple[int, ...]:
    """Scale to coprime integers with the first nonzero entry positive."""
    den = 1
    for a in v:
        den = lcm(den, Fraction(a).denominator)
    ints = [int(Fraction(a) * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    first = next(a for a in ints if a)
    g = g if first > 0 else -g
    return tuple(a // g for a in ints)


def gauss_map_value(x: Hypersurface, p: Sequence) -> Tuple[int, ...]:
    p = _on_x(x, p)
    grad = [g.evaluate(p) for g in x.gradient]
    if not any(grad):
        raise SingularPoint(f"gradient vanishes at {p}")
    return primitive_integer_vector(grad)


def hessian_at(f: Poly, p: Sequence) -> List[List[Fraction]]:
    return [[f.partial(i).partial(j).evaluate(p) for j in range(f.n_vars)] for i in range(f.n_vars)]


def _gram(h: Sequence[Sequence[Fraction]], basis: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    m = len(h)
    hb = [[sum(h[i][k] * b[k] for k in range(m)) for i in range(m)] for b in basis]
    return [[sum(u[i] * hv[i] for i in range(m)) for hv in hb] for u in basis]


def second_fundamental_rank(x: Hypersurface, p: Sequence) -> int:
    """Rank of Hess f(p) on ker df(p); the radial direction lies in its radical."""
    p = _on_x(x, p)
    grad = [g.evaluate(p) for g in x.gradient]
    if not any(grad):
        raise SingularPoint(f"gradient vanishes at {p}")
    h = hessian_at(x.f, p)
    kernel = la.nullspace(la.RatMatrix.from_rows([grad]))
    # Euler: Hess f(p) p = (d-1) grad f(p), which pairs to zero with ker df(p)
    hp = [sum(h[i][j] * p[j] for j in range(len(p))) for i in range(len(p))]
    for v in kernel:
        if sum(a * b for a, b in zip(hp, v)) != 0:
            raise AssertionError("Euler identity violated on ker df(p)")
    return la.rank(la.RatMatrix.from_rows(_gram(h, kernel))) if kernel else 0


# ---------------------------------------------------------------------------
# Morse classification in an affine chart


@dataclass(frozen=True)
class ProbePoint:
    chart: int
    coords: Tuple[Fraction, ...]
    on_x: bool = True

    def homogeneous(self) -> Tuple[Fraction, ...]:
        c = list(self.coords)
        c.insert(self.chart, Fraction(1))
        return tuple(c)


def make_probe_point(x: Hypersurface, chart: int, coords: Sequence) -> ProbePoint:
    if not 0 <= chart <= x.n:
        raise ValueError(f"chart x{chart} outside P^{x.n}")
    coords = _point(coords)
    if len(coords) != x.n:
        raise ValueError(f"affine point needs {x.n} coordinates")
    fh = dehomogenize(x.f, chart)
    if fh.evaluate(coords) != 0:
        raise ValueError(f"point {coords} is not on X in chart x{chart}")
    if not any(g.evaluate(coords) for g in fh.gradient()):
        raise SingularPoint(f"affine gradient vanishes at {coords}")
    return ProbePoint(chart, coords)


def chart_poly(g: Poly, x: Hypersurface, chart: int) -> Poly:
    """Accept g either in the n affine variables or in n+1 variables (dehomogenized)."""
    if g.n_vars == x.n:
        return g
    if g.n_vars == x.n + 1:
        return dehomogenize(g, chart)
    raise ValueError(f"first integral has {g.n_vars} variables; expected {x.n} or {x.n + 1}")


@dataclass(frozen=True)
class MorseReport:
    critical: bool
    multiplier: Optional[Fraction]
    restricted_hessian: Optional[Tuple[Tuple[Fraction, ...], ...]]
    determinant: Optional[Fraction]
    verdict: str
    tangent_basis: Tuple[Tuple[Fraction, ...], ...]


def morse_classify(x: Hypersurface, g: Poly, p: ProbePoint, denominator: Optional[Poly] = None) -> MorseReport:
    """Classify p as a singularity of the foliation {g = const} restricted to X.

    With ``denominator`` the first integral is g / denominator; it is replaced
    by g - t*denominator, t its value at p, which has the same level set
    through p and a restricted Hessian scaled by denominator(p).
    """
    fh = dehomogenize(x.f, p.chart)
    gh = chart_poly(g, x, p.chart)
    pt = p.coords
    if denominator is not None:
        qh = chart_poly(denominator, x, p.chart)
        qv = qh.evaluate(pt)
        if qv == 0:
            raise ValueError("denominator of the first integral vanishes at p")
        gh = gh - qh.scale(gh.evaluate(pt) / qv)
    gf = [d.evaluate(pt) for d in fh.gradient()]
    if not any(gf):
        raise SingularPoint("X is singular at p")
    gg = [d.evaluate(pt) for d in gh.gradient()]
    j = next(i for i, v in enumerate(gf) if v)
    c = gg[j] / gf[j]
    tangent = tuple(la.nullspace(la.RatMatrix.from_rows([gf])))
    if any(a != c * b for a, b in zip(gg, gf)):
        return MorseReport(False, None, None, None, NOT_CRITICAL, tangent)
    h = hessian_at(gh - fh.scale(c), pt)
    restricted = _gram(h, tangent)
    det = la.determinant(la.RatMatrix.from_rows(restricted)) if restricted else Fraction(1)
    verdict = MORSE if det != 0 else DEGENERATE
    return MorseReport(True, c, tuple(tuple(r) for r in restricted), det, verdict, tangent)


# ---------------------------------------------------------------------------
# the lambda family


@dataclass(frozen=True)
class LambdaFamily:
    det_poly: Poly  # univariate, variable 0 is lambda
    bad_lambdas: Tuple[Fraction, ...]
    degree: int
    pivot: int
    invertible: bool

    @property
    def leading_coefficient(self) -> Fraction:
        if self.det_poly.is_zero():
            return Fraction(0)
        return self.det_poly.coefficient((self.degree,))

    def __call__(self, lam) -> Fraction:
        return self.det_poly.evaluate((lam,))


def _affine_index(chart: int, k: int) -> int:
    if k == chart:
        raise ValueError("pivot cannot be the chart variable")
    return k if k < chart else k - 1


def _linear_part(x: Hypersurface, g: Poly, p: ProbePoint, k: int):
    fh = dehomogenize(x.f, p.chart)
    gh = chart_poly(g, x, p.chart)
    n = x.n
    last = n - 1
    gf = [d.evaluate(p.coords) for d in fh.gradient()]
    if any(gf[i] for i in range(last)) or not gf[last]:
        raise NotAdapted("tangent hyperplane at p must be {last affine coordinate = const}")
    a = [d.evaluate(p.coords) for d in gh.gradient()]
    if not any(a):
        raise ZeroLinearPart("first integral has zero linear part at p")
    ka = _affine_index(p.chart, k)
    if not 0 <= ka < n:
        raise ValueError(f"pivot x{k} outside P^{n}")
    if not a[ka]:
        raise ZeroLinearPart(f"linear coefficient of x{k} vanishes at p")
    return fh, gh, a, ka


def _univariate_det(m: List[List[Poly]]) -> Poly:
    size = len(m)
    if size == 0:
        return Poly.one(1)
    total = Poly.zero(1)
    for perm in permutations(range(size)):
        inv = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = Poly.one(1)
        for i in range(size):
            term = term * m[i][perm[i]]
            if not term:
                break
        total = total + (term if inv % 2 == 0 else -term)
    return total


def lambda_family(x: Hypersurface, g: Poly, p: ProbePoint, k: int) -> LambdaFamily:
    """Restricted-Hessian determinant of g o h_lambda as a polynomial in lambda.

    In coordinates y centered at p, h_lambda fixes y_i (i != k) and sends
    y_k to (-sum_{i != k} a_i y_i + lambda * y_last) / a_k, where a is the
    linear part of g at p; the linear part of g o h_lambda becomes
    lambda * y_last.  The map is invertible only for k = last.
    """
    fh, gh, a, ka = _linear_part(x, g, p, k)
    n = x.n
    last = n - 1
    ring = n + 1  # y_0..y_{n-1}, lambda
    y = [Poly.var(ring, i) for i in range(n)]
    lam = Poly.var(ring, n)
    centered = [y[i] + p.coords[i] for i in range(n)]
    images = list(y) + [lam]
    images[ka] = (sum((y[i].scale(-a[i]) for i in range(n) if i != ka), Poly.zero(ring)) + lam * y[last]).scale(
        1 / a[ka]
    )
    gl = gh.compose(centered).compose(images)
    fc = fh.compose(centered)
    b = fh.gradient()[last].evaluate(p.coords)
    zero_y = {i: 0 for i in range(n)}
    tangent = la.nullspace(la.RatMatrix.from_rows([[fh.gradient()[i].evaluate(p.coords) for i in range(n)]]))

    def to_lambda(poly: Poly) -> Poly:
        s = poly.specialize(zero_y)
        return Poly(1, {(e[n],): c for e, c in s.terms.items()})

    hess = [[to_lambda(gl.partial(i).partial(j)) - to_lambda(fc.partial(i).partial(j)) * to_lambda(lam).scale(1 / b)
             for j in range(n)] for i in range(n)]
    restricted = []
    for u in tangent:
        row = []
        for v in tangent:
            acc = Poly.zero(1)
            for i in range(n):
                if u[i]:
                    for jj in range(n):
                        if v[jj]:
                            acc = acc + hess[i][jj].scale(u[i] * v[jj])
            row.append(acc)
        restricted.append(row)
    det = _univariate_det(restricted)
    return LambdaFamily(det, rational_roots(det), det.degree, k, ka == last)


def specialized_first_integral(x: Hypersurface, g: Poly, p: ProbePoint, k: int, lam) -> Poly:
    """g composed with h_lambda for a concrete lambda, in the original chart.

    Built through the projective linear map that fixes the hyperplane at
    infinity {x_chart = 0}, independently of :func:`lambda_family`.
    """
    _, gh, a, ka = _linear_part(x, g, p, k)
    lam = Fraction(lam)
    n = x.n
    chart = p.chart
    hom = [i for i in range(n + 1) if i != chart]  # affine index -> homogeneous index
    m = [[Fraction(int(i == j)) for j in range(n + 1)] for i in range(n + 1)]
    row = [Fraction(0)] * (n + 1)
    # y_i = X_i - p_i * t, t = X_chart
    for i in range(n):
        if i == ka:
            continue
        row[hom[i]] -= a[i]
        row[chart] += a[i] * p.coords[i]
    row[hom[n - 1]] += lam
    row[chart] -= lam * p.coords[n - 1]
    row = [v / a[ka] for v in row]
    row[chart] += p.coords[ka]
    m[hom[ka]] = row
    big = gh.homogenize(chart)
    return dehomogenize(substitute_linear(big, m), chart)


def rational_roots(p: Poly) -> Tuple[Fraction, ...]:
    """Distinct rational roots of a univariate polynomial, ascending."""
    if p.n_vars != 1:
        raise ValueError("expected a univariate polynomial")
    if p.is_zero() or p.degree <= 0:
        return ()
    q = p.primitive()
    coeffs = [int(q.coefficient((i,))) for i in range(q.degree + 1)]
    roots = set()
    low = next(i for i, c in enumerate(coeffs) if c)
    if low:
        roots.add(Fraction(0))
        coeffs = coeffs[low:]
    if len(coeffs) > 1:
        for num in _divisors(abs(coeffs[0])):
            for den in _divisors(abs(coeffs[-1])):
                for r in (Fraction(num, den), Fraction(-num, den)):
                    if r not in roots and q.evaluate((r,)) == 0:
                        roots.add(r)
    return tuple(sorted(roots))


def _divisors(m: int) -> List[int]:
    small, large = [], []
    i = 1
    while i * i <= m:
        if m % i == 0:
            small.append(i)
            if i * i != m:
                large.append(m // i)
        i += 1
    return small + large[::-1]
