"""Projective degrees of lifted orbit closures.

Three independent routes are offered:

* ``degree_asymptotic``: the top homogeneous part of the Weyl dimension
  product is integrated exactly over the dominant part of the simplex.
  With D = deg P + (number of variables) the degree is
  ``D! / (n! m!) * integral over the simplex of P``.
* ``degree_hilbert_fit``: finite differences of the Hilbert function.
* ``degree_paper_literal``: the published closed expression, evaluated as
  displayed, kept for side-by-side reporting.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .combinatorics import DualPair
from .errors import NonPositiveKappa, NotHomogeneous, NotStabilized, UsageError
from .polynomial import DEFAULT_MONOMIAL_CAP, ExactPolynomial, difference_product, monomial
from .repdecomp import HilbertSeries, decompose_regular_hol_lift, decompose_trivial_lift
from .rootdata import RootSystem, inner, orthogonal_root_system, phi_plus_subset, rho, rho_product_prefactor

ORBITS = ("trivial", "regular_hol")


def normalize_orbit(name: str) -> str:
    key = name.replace("-", "_").lower()
    if key in ("regular", "regular_holomorphic"):
        key = "regular_hol"
    if key not in ORBITS:
        raise UsageError(f"orbit must be one of {ORBITS}, got {name!r}")
    return key


# ---------------------------------------------------------------------------
# simplex integrals

@lru_cache(maxsize=None)
def _fact(k: int) -> int:
    return math.factorial(k)


def dirichlet_integral(exponents) -> Fraction:
    """Integral of prod x_i^a_i over the standard simplex of dimension n."""
    exps = [int(a) for a in exponents]
    if any(a < 0 for a in exps):
        raise UsageError("exponents must be nonnegative")
    num = 1
    for a in exps:
        num *= _fact(a)
    return Fraction(num, _fact(len(exps) + sum(exps)))


def integrate_simplex(poly: ExactPolynomial) -> Fraction:
    return sum((c * dirichlet_integral(e) for e, c in poly.terms.items()), Fraction(0))


def integrate_simplex_product(poly: ExactPolynomial, split: int) -> Fraction:
    """Integral over Omega_split x Omega_rest (variables split after ``split``)."""
    total = Fraction(0)
    for e, c in poly.terms.items():
        total += c * dirichlet_integral(e[:split]) * dirichlet_integral(e[split:])
    return total


def _xvars(n: int) -> tuple:
    return tuple(f"x{i + 1}" for i in range(n))


def selberg_integrand(n: int, kappa: int) -> ExactPolynomial:
    """D_n(x^2) D_n(x) prod x_i^(kappa-1)."""
    v = _xvars(n)
    mono = monomial(v, [kappa - 1] * n)
    return difference_product(v, range(n), 2) * difference_product(v, list(range(n))) * mono


def _check_integer_kappa(kappa) -> int:
    if Fraction(kappa) <= 0:
        raise NonPositiveKappa(f"kappa must be positive, got {kappa}")
    if Fraction(kappa).denominator != 1:
        raise UsageError("the exact route needs an integer kappa")
    return int(kappa)


def selberg_lhs_exact(n: int, kappa: int) -> Fraction:
    """(1/n!) * integral of D_n(x^2) D_n(x) prod x^(kappa-1) over the simplex."""
    kappa = _check_integer_kappa(kappa)
    return integrate_simplex(selberg_integrand(n, kappa)) / _fact(n)


def selberg_closed_form(n: int, kappa):
    """Gamma-quotient value of the same integral.

    Exact ``Fraction`` for integer kappa; a float for other positive kappa.
    """
    k = Fraction(kappa)
    if k <= 0:
        raise NonPositiveKappa(f"kappa must be positive, got {kappa}")
    if k.denominator == 1:
        k = int(k)
        num = 2 ** (n * (n - 1) // 2)
        for i in range(n):
            num *= _fact(i) * _fact(k + 2 * i - 1)
        return Fraction(num, _fact(3 * n * (n - 1) // 2 + n * k))
    kf = float(k)
    log = n * (n - 1) / 2 * math.log(2)
    for i in range(n):
        log += math.lgamma(i + 1) + math.lgamma(kf + 2 * i)
    log -= math.lgamma(3 * n * (n - 1) / 2 + n * kf + 1)
    return math.exp(log)


def pochhammer(c, k: int):
    out = 1
    for j in range(k):
        out *= c + j
    return out


def exact_det(rows) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def dsquared_expansion(n: int, kappa: int) -> Fraction:
    """(1/n!) * integral of D_n(x^2)^2 prod x^(kappa-1), by monomial expansion."""
    kappa = _check_integer_kappa(kappa)
    v = _xvars(n)
    f = difference_product(v, range(n), 2) ** 2 * monomial(v, [kappa - 1] * n)
    return integrate_simplex(f) / _fact(n)


def dsquared_closed_form(n: int, kappa: int) -> Fraction:
    """Gamma quotient times the Pochhammer determinant det((kappa+2i-2)_{2j-2})."""
    kappa = _check_integer_kappa(kappa)
    num = 1
    for i in range(n):
        num *= _fact(kappa + 2 * i - 1)
    det = exact_det([[pochhammer(kappa + 2 * i - 2, 2 * j - 2) for j in range(1, n + 1)]
                     for i in range(1, n + 1)])
    return Fraction(num, _fact(2 * n * (n - 1) + n * kappa)) * det


def laplace_identity_check(n: int, f: ExactPolynomial) -> bool:
    """Gamma(a+1) * simplex integral == integral against exp(-sum y), per monomial.

    ``f`` must be homogeneous of degree a - n.
    """
    if len(f.variables) != n:
        raise UsageError("f must have exactly n variables")
    if not f.is_homogeneous():
        raise NotHomogeneous("f is not homogeneous")
    if f.is_zero():
        return True
    a = f.degree() + n
    for e, c in f.terms.items():
        lhs = _fact(a) * dirichlet_integral(e)
        rhs = 1
        for x in e:
            rhs *= _fact(x)  # Gamma(x+1) = int_0^inf y^x e^-y dy
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# leading forms

@dataclass
class LeadingForm:
    """Top homogeneous part of the dimension product of an orbit closure."""

    polynomial: ExactPolynomial      # prefactor folded in
    prefactor: Fraction
    x_count: int
    y_count: int
    roots: list = field(default_factory=list)  # (root system, roots used) per factor

    @property
    def nvars(self) -> int:
        return self.x_count + self.y_count

    @property
    def degree(self) -> int:
        return self.polynomial.degree()

    @property
    def d_projective(self) -> int:
        return self.degree + self.nvars - 1


def _factor_specs(pair: DualPair, orbit: str):
    """(root system, weight as a list of coefficient vectors, subset mode) per factor."""
    p, q, n = pair.p, pair.q, pair.n
    if pair.kind == "UU":
        m = pair.m
        nv = m + n

        def x(i):
            v = [0] * nv
            v[i] = 1
            return v

        def y(j):
            v = [0] * nv
            v[m + j] = -1
            return v

        zero = [0] * nv

        def mixed(r):
            # (x_1..x_m, 0.., -y_n..-y_1)
            return [x(i) for i in range(m)] + [zero] * (r - m - n) + [y(n - 1 - t) for t in range(n)]

        def plain(r, first, count):
            return [first(i) for i in range(count)] + [zero] * (r - count)

        if orbit == "trivial":
            return [(RootSystem("A", p - 1), mixed(p), ("block", m, n)),
                    (RootSystem("A", q - 1), mixed(q), ("block", m, n))]
        def ypos(j):
            return [-c for c in y(j)]

        return [(RootSystem("A", p - 1), plain(p, x, m), ("first", m)),
                (RootSystem("A", p - 1), plain(p, ypos, n), ("first", n)),
                (RootSystem("A", q - 1), mixed(q), ("block", m, n))]

    def lam(r):
        return [[1 if j == i else 0 for j in range(n)] for i in range(n)] + [[0] * n] * (r - n)

    if pair.kind == "OSp":
        plus = orthogonal_root_system(p)
        minus = orthogonal_root_system(q)
        if orbit == "trivial":
            return [(plus, lam(plus.dim), ("first", n)), (minus, lam(minus.dim), ("first", n))]
        return [(RootSystem("A", p - 1), lam(p), ("first", n)), (minus, lam(minus.dim), ("first", n))]
    plus, minus = RootSystem("C", p), RootSystem("C", q)
    if orbit == "trivial":
        return [(plus, lam(p), ("first", n)), (minus, lam(q), ("first", n))]
    return [(RootSystem("A", 2 * p - 1), lam(2 * p), ("first", n)), (minus, lam(q), ("first", n))]


def _structural_form(pair: DualPair, orbit: str, variables) -> ExactPolynomial:
    """The same leading form assembled from difference products, without prefactors."""
    p, q, n = pair.p, pair.q, pair.n
    if pair.kind == "UU":
        m = pair.m
        xs, ys = list(range(m)), list(range(m, m + n))
        base = difference_product(variables, xs) ** 2 * difference_product(variables, ys) ** 2
        cross = ExactPolynomial.constant(variables, 1)
        for i in xs:
            for j in ys:
                cross = cross * (ExactPolynomial.variable(variables, i) + ExactPolynomial.variable(variables, j))
        if orbit == "trivial":
            e = p + q - 2 * (m + n)
            return base * cross ** 2 * monomial(variables, [e] * m + [e] * n)
        return base * cross * monomial(variables, [p + q - 2 * m - n] * m + [p + q - m - 2 * n] * n)
    idx = list(range(n))
    d1 = difference_product(variables, idx)
    d2 = difference_product(variables, idx, 2)
    if pair.kind == "OSp":
        if orbit == "trivial":
            return d2 ** 2 * monomial(variables, [p + q - 4 * n] * n)
        return d1 * d2 * monomial(variables, [p + q - 3 * n] * n)
    if orbit == "trivial":
        return d2 ** 2 * monomial(variables, [2 * (p + q) - 4 * n + 2] * n) * 2 ** (2 * n)
    return d1 * d2 * monomial(variables, [2 * (p + q) - 3 * n + 1] * n) * 2 ** n


def leading_degree_form(pair: DualPair, orbit: str, cap: int = DEFAULT_MONOMIAL_CAP) -> LeadingForm:
    """Top homogeneous part of the Weyl dimension product along the labels.

    For each factor the roots pairing nontrivially with the weight are
    collected; they must be exactly the Phi^+ subset for that factor.  The
    result is also matched against the difference-product assembly.
    """
    orbit = normalize_orbit(orbit)
    if pair.kind == "UU":
        if orbit == "regular_hol" and pair.m < pair.n:
            raise UsageError("the regular holomorphic lift is tabulated for m >= n")
        xc, yc = pair.m, pair.n
        variables = _xvars(xc) + tuple(f"y{j + 1}" for j in range(yc))
    else:
        xc, yc = pair.n, 0
        variables = _xvars(xc)
    poly = ExactPolynomial.constant(variables, 1)
    poly.cap = cap
    prefactor = Fraction(1)
    used = []
    for rs, weight, mode in _factor_specs(pair, orbit):
        r = rho(rs)
        roots = []
        for a in rs.positive_roots:
            form = [sum(a[i] * weight[i][k] for i in range(rs.dim)) for k in range(len(variables))]
            if any(form):
                roots.append(a)
                poly = poly * ExactPolynomial.linear(variables, form)
                prefactor /= inner(r, a)
        if mode[0] == "block":
            expected = phi_plus_subset(rs, mode[2], "block", m=mode[1])
        else:
            expected = phi_plus_subset(rs, mode[1])
        if set(roots) != set(expected):
            raise AssertionError(f"roots seen by the weight differ from Phi^+ for {rs}")
        used.append((rs, tuple(roots)))
    if poly != _structural_form(pair, orbit, variables):
        raise AssertionError(f"leading form of {pair} {orbit} does not factor as expected")
    return LeadingForm(poly * prefactor, prefactor, xc, yc, used)


def degree_asymptotic(pair: DualPair, orbit: str, cap: int = DEFAULT_MONOMIAL_CAP) -> Fraction:
    lf = leading_degree_form(pair, orbit, cap)
    blocks = [range(lf.x_count), range(lf.x_count, lf.nvars)]
    for b in blocks:
        if not lf.polynomial.is_symmetric_in(b):
            raise AssertionError("leading form is not symmetric; the chamber reduction fails")
    chamber = Fraction(1, _fact(lf.x_count) * _fact(lf.y_count))
    total_degree = lf.degree + lf.nvars
    return _fact(total_degree) * chamber * integrate_simplex(lf.polynomial)


def degree_paper_literal(pair: DualPair, orbit: str, integral: bool = True) -> Fraction:
    """The published closed expression, evaluated as displayed.

    With ``integral=False`` only the constant in front of the integral is
    returned.
    """
    orbit = normalize_orbit(orbit)
    p, q, n = pair.p, pair.q, pair.n

    def pre(rs, subset):
        return rho_product_prefactor(rs, subset)

    if pair.kind == "UU":
        m = pair.m
        variables = _xvars(m) + tuple(f"y{j + 1}" for j in range(n))
        xs, ys = list(range(m)), list(range(m, m + n))
        base = difference_product(variables, xs) ** 2 * difference_product(variables, ys) ** 2
        cross = ExactPolynomial.constant(variables, 1)
        for i in xs:
            for j in ys:
                cross = cross * (ExactPolynomial.variable(variables, i) + ExactPolynomial.variable(variables, j))
        a_p, a_q = RootSystem("A", p - 1), RootSystem("A", q - 1)
        const = Fraction(1, _fact(m) * _fact(n)) * pre(a_p, phi_plus_subset(a_p, n, "block", m=m))
        if orbit == "trivial":
            const *= pre(a_q, phi_plus_subset(a_q, n, "block", m=m))
            e = p + q - 2 * (m + n)
            f = base * cross ** 2 * monomial(variables, [e] * (m + n))
        else:
            const *= pre(a_q, phi_plus_subset(a_q, m)) * pre(a_q, phi_plus_subset(a_q, n))
            f = base * cross * monomial(variables, [p + q - 2 * m - n] * m + [p + q - m - 2 * n] * n)
        return const * integrate_simplex_product(f, m) if integral else const

    variables = _xvars(n)
    idx = list(range(n))
    d1 = difference_product(variables, idx)
    d2 = difference_product(variables, idx, 2)
    if pair.kind == "OSp":
        x_rs = orthogonal_root_system(p)
        const = Fraction(1, _fact(n)) * pre(x_rs, phi_plus_subset(x_rs, n))
        if orbit == "trivial":
            y_rs = orthogonal_root_system(q)
            const *= pre(y_rs, phi_plus_subset(y_rs, n))
            f = d2 ** 2 * monomial(variables, [p + q - 2 * n] * n)
        else:
            a_q = RootSystem("A", q - 1)
            const *= pre(a_q, phi_plus_subset(a_q, n))
            f = d2 * d1 * monomial(variables, [p + q - 3 * n] * n)
    else:
        c_p = RootSystem("C", p)
        if orbit == "trivial":
            c_q = RootSystem("C", q)
            const = Fraction(2 ** (2 * n), _fact(n)) * pre(c_p, phi_plus_subset(c_p, n)) \
                * pre(c_q, phi_plus_subset(c_q, n))
            f = d2 ** 2 * monomial(variables, [2 * (p + q) - 4 * n + 2] * n)
        else:
            a_2q = RootSystem("A", 2 * q - 1)
            const = Fraction(2 ** n, _fact(n)) * pre(c_p, phi_plus_subset(c_p, n)) \
                * pre(a_2q, phi_plus_subset(a_2q, n))
            f = d2 * d1 * monomial(variables, [2 * (p + q) - 3 * n + 1] * n)
    return const * integrate_simplex(f) if integral else const


# ---------------------------------------------------------------------------
# Hilbert-function route

def degree_hilbert_fit(series, tail: int = 3) -> tuple:
    """(d, e): the top order with a constant nonzero tail of finite differences.

    The last ``tail`` entries of the d-th difference must agree, so the
    series needs at least d + tail entries.
    """
    coeffs = list(series.coefficients if isinstance(series, HilbertSeries) else series)
    diffs = [coeffs]
    while len(diffs[-1]) > 1:
        s = diffs[-1]
        diffs.append([b - a for a, b in zip(s, s[1:])])
    for d in range(len(diffs) - 1, -1, -1):
        s = diffs[d]
        if len(s) < tail:
            continue
        last = s[-tail:]
        if last[0] != 0 and all(v == last[0] for v in last):
            return d, last[0]
    raise NotStabilized(f"no stable top difference in {len(coeffs)} coefficients; extend the series")


def hilbert_series(pair: DualPair, orbit: str, K: int) -> HilbertSeries:
    orbit = normalize_orbit(orbit)
    if orbit == "trivial":
        return decompose_trivial_lift(pair, K).hilbert_series()
    return decompose_regular_hol_lift(pair, K).hilbert_series()


# ---------------------------------------------------------------------------
# reports

def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class DegreeReport:
    pair: DualPair
    orbit: str
    degree_asymptotic: Fraction
    degree_hilbert_fit: int
    d_projective: int
    d_fit: int
    degree_paper_literal: Fraction | None = None

    @property
    def agree(self) -> dict:
        flags = {"asym_fit": self.degree_asymptotic == self.degree_hilbert_fit
                 and self.d_projective == self.d_fit}
        if self.degree_paper_literal is not None:
            flags["literal_asym"] = self.degree_paper_literal == self.degree_asymptotic
        return flags

    @property
    def passing(self) -> bool:
        return self.agree["asym_fit"] and self.degree_hilbert_fit >= 1

    def to_json(self) -> dict:
        out = {
            "pair": self.pair.label(),
            "orbit": self.orbit,
            "d": self.d_projective,
            "asymptotic": _frac_str(self.degree_asymptotic),
            "hilbert_fit": str(self.degree_hilbert_fit),
        }
        if self.degree_paper_literal is not None:
            out["literal"] = _frac_str(self.degree_paper_literal)
        out["agree"] = self.agree
        return out


def degree_report(pair: DualPair, orbit: str, literal: bool = True, extra_terms: int = 6,
                  cap: int = DEFAULT_MONOMIAL_CAP) -> DegreeReport:
    orbit = normalize_orbit(orbit)
    lf = leading_degree_form(pair, orbit, cap)
    K = lf.d_projective + extra_terms
    d_fit, e_fit = degree_hilbert_fit(hilbert_series(pair, orbit, K))
    return DegreeReport(
        pair=pair,
        orbit=orbit,
        degree_asymptotic=degree_asymptotic(pair, orbit, cap),
        degree_hilbert_fit=e_fit,
        d_projective=lf.d_projective,
        d_fit=d_fit,
        degree_paper_literal=degree_paper_literal(pair, orbit) if literal else None,
    )


def monte_carlo_check(pair: DualPair, orbit: str, samples: int = 20000, seed: int = 0) -> dict:
    """Sampling estimate of the simplex integral of the leading form.

    Points are uniform on the simplex (normalized exponentials with a slack
    coordinate).  Reports the estimate, its standard error and whether the
    exact value lies within three standard errors.
    """
    lf = leading_degree_form(pair, orbit)
    poly = lf.polynomial
    rng = random.Random(seed)
    nv = lf.nvars
    terms = [(tuple(e), float(c)) for e, c in poly.terms.items()]
    vol = 1.0 / math.factorial(nv)
    vals = []
    for _ in range(samples):
        g = [rng.expovariate(1.0) for _ in range(nv + 1)]
        s = sum(g)
        pt = [x / s for x in g[:nv]]
        v = 0.0
        for e, c in terms:
            t = c
            for xi, a in zip(pt, e):
                t *= xi ** a
            v += t
        vals.append(v * vol)
    mean = sum(vals) / samples
    var = sum((v - mean) ** 2 for v in vals) / (samples - 1)
    se = math.sqrt(var / samples)
    exact = float(integrate_simplex(poly))
    return {"estimate": mean, "stderr": se, "exact": exact, "ok": abs(mean - exact) <= 3 * se}
