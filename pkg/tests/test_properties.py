"""Randomized invariants, 1000 seeded trials each."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrlab import extremal as ex
from bohrlab import functionals as fn
from bohrlab.errors import ParityError
from bohrlab.series import TruncatedSeries, compose_lacunary, evaluate, tail_error
from bohrlab.weights import (WeightSequence, degree_parity, parity_case, phi, plain_monomials,
                             strided_sum, zeta)

TRIALS = settings(max_examples=1000, deadline=None)

WEIGHTS = [WeightSequence.geometric(), WeightSequence.harmonic(), WeightSequence.even_only(),
           WeightSequence.odd_only(), WeightSequence.lacunary(2), WeightSequence.lacunary(3),
           plain_monomials()]

seeds = st.integers(0, 2 ** 31 - 1)
degrees = st.integers(1, 8)
radius = st.floats(0.0, 0.95)
BOUNDARY = 0.95 * np.exp(2j * np.pi * np.arange(64) / 64)


@TRIALS
@given(seeds, degrees)
def test_class_B_bounds(seed, deg):
    s = ex.sample_class("B", seed, deg, r_max=0.95)
    budget = tail_error(s, 0.95)
    assert np.all(np.abs(evaluate(s, BOUNDARY)) < 1 + budget)
    a0 = abs(s.a0)
    assert np.all(np.abs(s.coeffs[1:]) <= 1 - a0 * a0 + 1e-12)


@TRIALS
@given(seeds, degrees)
def test_class_P_bounds(seed, deg):
    s = ex.sample_class("P", seed, deg, r_max=0.95)
    budget = tail_error(s, 0.95)
    assert np.all(evaluate(s, BOUNDARY).real < 1 + budget)
    a0 = s.a0.real
    assert np.all(np.abs(s.coeffs[1:]) <= 2 * (1 - a0) + 1e-12)


@TRIALS
@given(st.sampled_from(WEIGHTS), st.integers(0, 400), st.floats(0.0, 0.99))
def test_phi_telescopes(w, N, r):
    assert abs(phi(w, N, r) - phi(w, N + 1, r) - zeta(w, N, r)) <= 1e-14


@TRIALS
@given(st.sampled_from(WEIGHTS), st.integers(0, 400), st.floats(0.0, 0.98), st.floats(0.0, 0.01))
def test_phi_monotone(w, N, r, dr):
    assert phi(w, N, r + dr) >= phi(w, N, r)
    assert phi(w, N + 1, r) <= phi(w, N, r)


@TRIALS
@given(st.sampled_from(["B", "P"]), seeds, degrees, st.lists(st.floats(0.0, 0.95), min_size=2, max_size=20))
def test_tail_error_monotone(cls, seed, deg, grid):
    s = ex.sample_class(cls, seed, deg, r_max=0.95)
    grid = np.sort(grid)
    assert np.all(np.diff(tail_error(s, grid)) >= 0)


@TRIALS
@given(seeds, degrees, radius, st.floats(0.0, 0.04), st.floats(0.0, 2.0), st.floats(0.0, 1.0))
def test_d_lambda_monotone(seed, deg, r, dr, lam, dlam):
    g = ex.sample_class("B", seed, deg, r_max=0.99)
    # rotate so that a_0 is real and nonnegative
    f = TruncatedSeries(g.coeffs * np.exp(-1j * np.angle(g.a0)), g.tail)
    base = fn.d_lambda(f, lam, r).value
    assert fn.d_lambda(f, lam, r + dr).value >= base
    assert fn.d_lambda(f, lam + dlam, r).value >= base


@TRIALS
@given(st.lists(st.integers(1, 4), min_size=3, max_size=12), st.integers(1, 4), st.data())
def test_parity_dispatch_matches_degree_parities(gaps, p, data):
    tau = np.concatenate([[0], np.cumsum(gaps)])
    w = WeightSequence.monomial(np.ones(tau.size), tau)
    m = data.draw(st.integers(0, tau.size - 1))
    par = [degree_parity(w, p, m, n) for n in range(1, tau.size)]
    odd_n, even_n = set(par[0::2]), set(par[1::2])
    if len(odd_n) > 1 or len(even_n) > 1:
        with pytest.raises(ParityError):
            parity_case(w, p, m)
        return
    sign = {"even": 1, "odd": -1}
    res = parity_case(w, p, m)
    assert res.odd_sign == sign[odd_n.pop()]
    if even_n:
        assert res.even_sign == sign[even_n.pop()]
    assert res.case == ("II" if res.odd_sign == res.even_sign else "I")


@TRIALS
@given(seeds, degrees, st.integers(1, 4), st.data(), st.floats(0.05, 0.9),
       st.sampled_from(WEIGHTS[:6]))
def test_lemma4_additivity(seed, deg, p, data, r, w):
    m = data.draw(st.integers(0, p))
    f = ex.realize(ex.lacunary(ex.sample_spec("B", seed, deg), p, m), r)
    s = fn.lemma4_sides(f, w, p, m, r)
    x = r ** p
    b0 = abs(f.coeffs[m])
    shift = b0 * float(zeta(w, 0, x)) + b0 ** 2 * strided_sum(w, x, 1, 2)
    assert s.lhs_even + s.lhs_odd - shift == pytest.approx(s.lhs_all, abs=1e-12)
    assert s.rhs_even + s.rhs_odd - shift == pytest.approx(s.rhs_all, abs=1e-12)


@TRIALS
@given(seeds, degrees, st.integers(1, 5), st.integers(0, 5), st.floats(0.0, 0.95), st.floats(0.0, 2 * np.pi))
def test_compose_lacunary_evaluation(seed, deg, p, m, r, theta):
    g = ex.sample_class("B", seed, deg, r_max=0.95)
    z = r * np.exp(1j * theta)
    h = compose_lacunary(g, p, m)
    assert abs(evaluate(h, z) - z ** m * evaluate(g, z ** p)) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 0.99), st.integers(1, 4), st.integers(0, 4), st.sampled_from("+-"))
def test_lacunary_mobius_closed_form(a, p, m, sign):
    spec = ex.lacunary_mobius(a, p, m, sign)
    s = ex.realize(spec, 0.9)
    rng = np.random.default_rng(int(a * 1e6) + 31 * p + m)
    z = 0.9 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
    e = 1 if sign == "+" else -1
    exact = z ** m * (a + e * z ** p) / (1 + e * a * z ** p)
    assert np.all(np.abs(evaluate(s, z) - exact) <= tail_error(s, np.abs(z)) + 1e-12)
