"""One test per acceptance criterion.

Run under pytest for a PASS/FAIL summary section, or directly with
``python3 tests/test_acceptance.py`` for one line per criterion.
"""

import time
from fractions import Fraction
from itertools import product

import sympy

from thetaorbit.combinatorics import (DualPair, enumerate_orbits, partitions_of, pad,
                                      regular_holomorphic_orbit, regular_lift_closed_form,
                                      theta_lift_diagram, trivial_lift_closed_form, zero_orbit)
from thetaorbit.degree import (degree_asymptotic, degree_hilbert_fit, degree_report, dsquared_closed_form,
                               dsquared_expansion, hilbert_series, leading_degree_form,
                               selberg_closed_form, selberg_lhs_exact)
from thetaorbit.geometry import verify_lift
from thetaorbit.lr import tensor_multiplicity_gl
from thetaorbit.repdecomp import (decompose_general_lift, decompose_regular_hol_lift,
                                  decompose_trivial_lift, flat_space_input, harmonics_series,
                                  nullcone_hilbert_check, trivial_input)
from thetaorbit.rootdata import dim_gl

GRID = [DualPair.osp(3, 3, 1), DualPair.osp(5, 5, 2), DualPair.uu(2, 2, 1, 1), DualPair.uu(3, 3, 1, 1),
        DualPair.spostar(2, 2, 1), DualPair.spostar(3, 3, 2)]
DEGREE_GRID = [DualPair.osp(3, 3, 1), DualPair.osp(5, 5, 1), DualPair.osp(5, 5, 2), DualPair.uu(2, 2, 1, 1),
               DualPair.uu(3, 3, 1, 1), DualPair.spostar(2, 2, 1)]
LIFT_GRID = [DualPair.osp(3, 3, 1), DualPair.osp(5, 5, 2), DualPair.uu(2, 2, 1, 1), DualPair.spostar(2, 2, 1),
             DualPair.spostar(3, 3, 2)]


class _Clock:
    def __init__(self, budget):
        self.budget = budget

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert elapsed < self.budget, f"took {elapsed:.1f}s, budget {self.budget}s"


def test_criterion_1_selberg_closed_form():
    with _Clock(5):
        for n, kappa in product((1, 2, 3), range(1, 7)):
            assert selberg_lhs_exact(n, kappa) == selberg_closed_form(n, kappa), (n, kappa)


def test_criterion_2_dsquared_identity():
    with _Clock(5):
        for n, kappa in product((1, 2, 3), range(1, 6)):
            assert dsquared_expansion(n, kappa) == dsquared_closed_form(n, kappa), (n, kappa)


def test_criterion_3_nullcone_hilbert_series():
    with _Clock(30):
        for pair in GRID:
            for side in ("plus", "minus"):
                assert nullcone_hilbert_check(pair, side, 12), (pair.label(), side)


def test_criterion_4_multiplicity_free():
    with _Clock(60):
        for pair in GRID:
            decs = [decompose_trivial_lift(pair, 10), decompose_regular_hol_lift(pair, 10),
                    harmonics_series(pair, "plus", 10), harmonics_series(pair, "minus", 10)]
            for dec in decs:
                assert dec.max_multiplicity() <= 1, pair.label()
                assert dec.labels_distinct(), pair.label()


def test_criterion_5_general_lift_consistency():
    with _Clock(120):
        for pair in GRID:
            assert decompose_general_lift(pair, trivial_input(pair), 8) == decompose_trivial_lift(pair, 8)
            if pair.kind in ("OSp", "SpOstar"):
                flat = decompose_general_lift(pair, flat_space_input(pair, 8), 8)
                assert flat.hilbert_series() == decompose_regular_hol_lift(pair, 8).hilbert_series()


def test_criterion_6_degree_cross_validation():
    with _Clock(120):
        for pair in DEGREE_GRID:
            for orbit in ("trivial", "regular_hol"):
                asym = degree_asymptotic(pair, orbit)
                d = leading_degree_form(pair, orbit).d_projective
                fit_d, fit_e = degree_hilbert_fit(hilbert_series(pair, orbit, d + 6))
                assert fit_d == d
                assert asym == fit_e and asym.denominator == 1 and asym > 0, (pair.label(), orbit)
        # hand-computed degrees of the cones over Q x Q and P^2 x Q
        assert degree_asymptotic(DualPair.osp(3, 3, 1), "trivial") == 8
        assert degree_asymptotic(DualPair.osp(3, 3, 1), "regular_hol") == 6


def test_criterion_7_lift_rule():
    with _Clock(60):
        for pair in LIFT_GRID:
            for d in enumerate_orbits(pair.small_group()):
                assert verify_lift(pair, d), (pair.label(), d.text())
            group = pair.small_group()
            assert theta_lift_diagram(pair, zero_orbit(group)) == trivial_lift_closed_form(pair)
            assert theta_lift_diagram(pair, regular_holomorphic_orbit(group)) == regular_lift_closed_form(pair)


def _schur(lam, xs):
    n = len(xs)
    lam = pad(lam, n)
    num = sympy.Matrix(n, n, lambda i, j: xs[j] ** (lam[i] + n - 1 - i))
    den = sympy.Matrix(n, n, lambda i, j: xs[j] ** (n - 1 - i))
    return sympy.cancel(num.det() / den.det())


def test_criterion_8_lr_engine():
    with _Clock(30):
        shapes = [mu for k in range(5) for mu in partitions_of(k, 3)]
        for mu, nu in product(shapes, shapes):
            total = 0
            for k in range(sum(mu) + sum(nu) + 1):
                for lam in partitions_of(k, 3):
                    c = tensor_multiplicity_gl(3, pad(lam, 3), pad(mu, 3), pad(nu, 3))
                    total += c * dim_gl(3, pad(lam, 3))
            assert total == dim_gl(3, pad(mu, 3)) * dim_gl(3, pad(nu, 3)), (mu, nu)
        # Schur-polynomial oracle on a sample of products
        xs = sympy.symbols("x0:3")
        for mu, nu in [((1,), (1,)), ((2, 1), (1,)), ((2, 1), (2, 1)), ((2,), (1, 1)), ((3, 1), (2,))]:
            lhs = sympy.expand(_schur(mu, xs) * _schur(nu, xs))
            rhs = 0
            for lam in partitions_of(sum(mu) + sum(nu), 3):
                c = tensor_multiplicity_gl(3, pad(lam, 3), pad(mu, 3), pad(nu, 3))
                if c:
                    rhs += c * _schur(lam, xs)
            assert sympy.expand(lhs - rhs) == 0, (mu, nu)


def test_criterion_9_literal_display_mismatch_reported():
    rep = degree_report(DualPair.osp(3, 3, 1), "trivial")
    out = rep.to_json()
    assert out["literal"] == "4/5" and out["asymptotic"] == "8"
    assert rep.degree_paper_literal == Fraction(4, 5) != rep.degree_asymptotic
    assert out["agree"]["literal_asym"] is False
    assert out["agree"]["asym_fit"] is True


if __name__ == "__main__":
    import sys

    failures = 0
    for name, fn in sorted(((k, v) for k, v in dict(globals()).items() if k.startswith("test_criterion_")),
                           key=lambda kv: int(kv[0].split("_")[2])):
        try:
            fn()
            print(f"PASS  {name}")
        except Exception as exc:  # noqa: BLE001
            failures += 1
            print(f"FAIL  {name}: {exc!r}")
    sys.exit(1 if failures else 0)
