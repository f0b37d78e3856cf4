import math

import numpy as np
import pytest

from bohrlab import extremal as ex
from bohrlab import functionals as fn
from bohrlab.errors import DomainError
from bohrlab.series import TruncatedSeries
from bohrlab.weights import WeightSequence, phi, plain_monomials, strided_sum

GEO = WeightSequence.geometric()
HARM = WeightSequence.harmonic()


def realized(spec, r):
    return ex.realize(spec, r)


def mphi_closed(a, r):
    return 1 + (1 - a) / (1 - a * r) * (r * (1 + 2 * a) - 1)


# series_stats --------------------------------------------------------------------------

def test_majorant_phi_boundary():
    s = fn.series_stats(realized(ex.phi(0.5), 0.5), 0.5)
    assert abs(s.M_f - 1.0) <= s.tail_budget + 1e-12
    assert s.M_f == pytest.approx(mphi_closed(0.5, 0.5), abs=1e-9)


@pytest.mark.parametrize("a", [0.0, 0.2, 0.7, 0.9])
@pytest.mark.parametrize("r", [0.1, 1 / 3, 0.6])
def test_majorant_phi_closed_form(a, r):
    s = fn.series_stats(realized(ex.phi(a), r), r)
    assert abs(s.M_f - mphi_closed(a, r)) <= s.majorant_tail + 1e-12


def test_area_ratio_psi():
    s = fn.series_stats(realized(ex.psi(0.5), 0.4), 0.4)
    assert s.area_ratio == pytest.approx(4 * 0.25 * 0.16 / 0.84 ** 2, abs=1e-12)
    assert s.area_ratio == pytest.approx(0.226757, abs=1e-6)


def test_stats_at_zero():
    f = ex.sample_class("B", 4, 3, r_max=0.5)
    s = fn.series_stats(f, 0.0)
    a0 = abs(f.coeffs[0])
    assert s.M_f == pytest.approx(a0) and s.A_f == pytest.approx(a0)
    assert s.norm_sq == pytest.approx(a0 * a0) and s.area_ratio == 0.0


def test_alternating_psi():
    s = fn.series_stats(realized(ex.psi(0.5), 0.5), 0.5)
    assert abs(s.A_f0 - (-1 / 3)) <= s.majorant_tail + 1e-12


def test_stats_vectorized():
    f = realized(ex.phi(0.4), 0.8)
    r = np.array([0.0, 0.3, 0.8])
    s = fn.series_stats(f, r)
    assert s.M_f.shape == (3,)
    np.testing.assert_allclose(s.M_f, [mphi_closed(0.4, x) for x in r], atol=1e-11)


def test_radius_validation():
    f = TruncatedSeries([0.5, 0.5])
    for bad in (1.0, -0.1, np.nan):
        with pytest.raises(DomainError):
            fn.series_stats(f, bad)


# weighted sums ---------------------------------------------------------------------------

def test_weighted_sum_geometric_is_majorant():
    f = ex.sample_class("B", 2, 5, r_max=0.7)
    assert float(fn.weighted_sum(f, GEO, 0, 0.7)) == pytest.approx(float(fn.series_stats(f, 0.7).M_f), rel=1e-13)


def test_weighted_sum_odd_only_bound():
    a, r = 0.4, 0.5
    f = realized(ex.phi(a), r)
    est = fn.weighted_sum(f, WeightSequence.odd_only(), 1, r)
    direct = sum(abs(c) * r ** n for n, c in enumerate(f.coeffs) if n % 2 == 1)
    assert float(est) == pytest.approx(direct, rel=1e-13)
    norm = float(fn.series_stats(f, r).norm_sq)
    assert float(est) <= r * (1 - norm) / (1 - r * r) + est.budget + 1e-12


def test_weighted_sum_lacunary():
    f = ex.sample_class("B", 6, 4, r_max=0.6)
    est = fn.weighted_sum(f, WeightSequence.lacunary(3), 0, 0.6)
    direct = sum(abs(c) * 0.6 ** n for n, c in enumerate(f.coeffs) if n % 3 == 0)
    assert float(est) == pytest.approx(direct, rel=1e-13)


# refinement G ------------------------------------------------------------------------

def test_refinement_geometric_reduction():
    f = ex.sample_class("B", 9, 3, r_max=0.4)
    r = 0.4
    st = fn.series_stats(f, r)
    a0 = abs(f.coeffs[0])
    assert float(fn.refinement_G(f, GEO, r)) == pytest.approx((r / (1 - r) + 1 / (1 + a0)) * st.norm0_sq, rel=1e-12)


def test_refinement_zero_for_constant():
    assert float(fn.refinement_G(TruncatedSeries([0.3]), GEO, 0.5)) == 0.0


def test_refinement_brute_force_phi():
    a, r = 0.5, 0.2
    f = realized(ex.phi(a), r)
    total = 0.0
    for n in range(1, f.order + 1):
        odd_tail = sum(r ** k for k in range(2 * n + 1, 2 * n + 400))
        total += abs(f.coeffs[n]) ** 2 * (r ** (2 * n) / (1 + a) + odd_tail)
    assert float(fn.refinement_G(f, GEO, r)) == pytest.approx(total, abs=1e-10)


@pytest.mark.parametrize("w", [GEO, HARM, WeightSequence.odd_only()], ids=lambda w: w.label())
@pytest.mark.parametrize("p", [0.5, 1.0, 2.0])
def test_lemmaG_equality_for_phi(w, p):
    for a in (0.1, 0.5, 0.8):
        s = fn.lemmaG_sides(realized(ex.phi(a), 0.5), w, p, 0.5)
        assert abs(s.lhs - s.rhs) <= s.budget + 1e-12


def test_lemmaG_constant_and_sample():
    s = fn.lemmaG_sides(TruncatedSeries([0.6]), GEO, 1.0, 0.3)
    assert s.lhs == pytest.approx(0.6) and s.lhs <= s.rhs
    for seed in range(10):
        f = ex.sample_class("B", seed, 1 + seed % 8, r_max=0.3)
        s = fn.lemmaG_sides(f, GEO, 1.0, 0.3)
        assert s.lhs <= s.rhs + s.budget + 1e-9


# Bohr power and Rogosinski-type E -------------------------------------------------------

@pytest.mark.parametrize("p", [0.5, 1.0, 3.0])
def test_bohr_power_psi_closed_form(p):
    a, r = 0.4, 0.3
    for w in (GEO, HARM):
        z0 = float(w.values(0, r))
        expected = z0 + 2 * (1 - a) * (phi(w, 1, r) - (1 - a ** p) / (2 * (1 - a)) * z0)
        est = fn.bohr_power(realized(ex.psi(a), r), w, p, r)
        assert abs(float(est) - expected) <= est.budget + 1e-12


def test_bohr_power_trivial_cases():
    f = ex.sample_class("P", 3, 2, r_max=0.5)
    assert float(fn.bohr_power(f, GEO, 1.0, 0.5)) == pytest.approx(float(fn.series_stats(f, 0.5).M_f), rel=1e-13)
    assert float(fn.bohr_power(TruncatedSeries([0.3]), HARM, 2.0, 0.5)) == pytest.approx(0.09)
    with pytest.raises(DomainError):
        fn.bohr_power(TruncatedSeries([-0.3]), GEO, 1.0, 0.5)


def test_rogosinski_E_psi_real_axis():
    a, r, m, q = 0.5, 0.4, 2, 2.0
    f = realized(ex.psi(a), r)
    dev = fn.circle_deviation_power(f, m, q, r)
    closed = (2 * (1 - a) * r ** m / (1 - r ** m)) ** q
    assert abs(float(dev) - closed) <= dev.budget + 1e-12
    assert dev.theta == pytest.approx(0.0)


def test_rogosinski_E_zero_radius_and_large_m():
    f = realized(ex.psi(0.3), 0.5)
    assert float(fn.rogosinski_E(f, GEO, 2.0, 1.0, 1, 0.0)) == pytest.approx(0.09)
    base = float(fn.bohr_power(f, GEO, 2.0, 0.5))
    assert float(fn.rogosinski_E(f, GEO, 2.0, 1.0, 60, 0.5)) == pytest.approx(base, abs=1e-15)


# D_lambda -------------------------------------------------------------------------------

def test_d_lambda_remark5_boundary():
    f = realized(ex.psi(0.47431), 0.24683)
    est = fn.d_lambda(f, 0.0, 0.24683)
    assert float(est) <= 1 + est.budget + 1e-9


def test_d_lambda_constant():
    for lam in (0.0, 0.5, 2.0):
        assert float(fn.d_lambda(TruncatedSeries([0.4]), lam, 0.6)) == pytest.approx(0.4)


def test_d_lambda_theorem4_excess():
    a, lam = 0.999999, 0.9
    rho = 1 / (5 - 2 * a)
    f = ex.realize(ex.with_order(ex.psi(a), 80), rho)
    e = fn.d_lambda_excess(f, lam, rho)
    assert float(e) > float(e.budget)


# lacunary functionals -------------------------------------------------------------------

@pytest.mark.parametrize("p,m", [(1, 0), (2, 1), (3, 2)])
def test_lemma2_A_mobius(p, m):
    a, r = 0.6, 0.5
    A = fn.lemma2_A(realized(ex.lacunary_mobius(a, p, m, "+"), r), p, m, r)
    x = r ** (2 * p)
    assert abs(float(A) - (1 - a * a) * x / (1 - x)) <= A.budget + 1e-12


def test_lemma2_lhs_simple_cases():
    assert float(fn.lemma2_lhs(ex.realize(ex.monomial(1)), 1, 0, 0.0)) == 0.0
    assert float(fn.lemma2_lhs(TruncatedSeries([0.4, 0.0]), 1, 0, 0.0)) == pytest.approx(0.4)
    r = 0.3
    A = (1 + r * r / (1 - r * r)) * r * r
    assert float(fn.lemma2_lhs(ex.realize(ex.monomial(1)), 1, 0, r)) == pytest.approx(r + A, abs=1e-15)


@pytest.mark.parametrize("p,m", [(1, 0), (2, 1), (3, 3)])
def test_lemma4_equalities_for_mobius_minus(p, m):
    for w in (GEO, HARM):
        for a in (0.2, 0.7):
            s = fn.lemma4_sides(realized(ex.lacunary_mobius(a, p, m, "-"), 0.6), w, p, m, 0.6)
            assert abs(s.lhs_even - s.rhs_even) <= s.budget + 1e-12
            assert abs(s.lhs_all - s.rhs_all) <= s.budget + 1e-12


def test_lemma4_single_coefficient():
    f = TruncatedSeries([0.0, 0.0, 0.5])
    s = fn.lemma4_sides(f, GEO, 2, 2, 0.5)
    assert s.lhs_even == pytest.approx(0.5)
    assert s.lhs_all == 0.0


def test_lemma4_additivity():
    # adding the even and odd parts leaves b0 zeta_0 + b0^2 sum_k zeta_{2k+1} on top of the combined inequality
    for w in (GEO, HARM):
        for seed in range(20):
            r, p, m = 0.7, 2, 1
            f = ex.realize(ex.lacunary(ex.sample_spec("B", seed, 1 + seed % 8), p, m), r)
            s = fn.lemma4_sides(f, w, p, m, r)
            x = r ** p
            b0 = abs(f.coeffs[m])
            shift = b0 * float(w.values(0, x)) + b0 ** 2 * strided_sum(w, x, 1, 2)
            assert s.lhs_even + s.lhs_odd - shift == pytest.approx(s.lhs_all, abs=1e-12)
            assert s.rhs_even + s.rhs_odd - shift == pytest.approx(s.rhs_all, abs=1e-12)


def test_alt_refined_case_I_monomial():
    w = plain_monomials(64)
    p, m, r = 1, 0, 0.5
    f = ex.realize(ex.monomial(p + m))
    a = fn.alt_refined(f, w, p, m, r)
    x = r ** p
    assert a.case == "I"
    assert abs(a.C_star) == pytest.approx(r ** m * x / (1 - x * x), rel=1e-13)


@pytest.mark.parametrize("p,m", [(2, 0), (2, 1), (4, 2)])
def test_alt_refined_case_II_monomial(p, m):
    w = plain_monomials(256)
    r = 0.6
    a = fn.alt_refined(ex.realize(ex.monomial(p + m)), w, p, m, r)
    x = r ** p
    assert a.case == "II"
    assert abs(a.D_star) == pytest.approx(r ** m * x / (1 - x), rel=1e-13)


def test_alt_refined_zero_radius():
    a = fn.alt_refined(ex.realize(ex.monomial(3)), plain_monomials(16), 2, 1, 0.0)
    assert a.A_star == 0 and a.B_star == 0 and a.C_star == 0 and a.D_star == 0


def test_theorem6_fixed_term_sharp():
    p, m = 1, 0
    r = (math.sqrt(5) - 1) / 2
    f = ex.realize(ex.monomial(2 * p + m))
    assert float(fn.theorem6_lhs(f, p, m, r, variant="fixed_term")) == pytest.approx(1.0, abs=1e-12)


def test_theorem6_constant_and_sample():
    assert float(fn.theorem6_lhs(TruncatedSeries([0.3]), 1, 0, 0.4)) == pytest.approx(0.3)
    r = math.sqrt(2) - 1
    for seed in range(10):
        f = ex.sample_class("B", seed, 1 + seed % 8, r_max=r)
        est = fn.theorem6_lhs(f, 1, 0, r)
        assert float(est) <= 1 + est.budget + 1e-9


def test_theorem6_parameter_checks():
    f = ex.realize(ex.monomial(2))
    with pytest.raises(DomainError):
        fn.theorem6_lhs(f, 2, 0, 0.3)
    with pytest.raises(DomainError):
        fn.theorem6_lhs(f, 1, 0, 0.3, variant="other")
