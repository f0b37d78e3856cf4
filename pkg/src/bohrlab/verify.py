"""Theorem-checking harness.

Every claim in the registry pairs a left side with a bound, a radius below
which the bound should hold, a default corpus family and (where one exists)
an extremal schedule used to show that the radius or constant cannot be
improved.  Violations are always measured net of the truncation budget.
"""
from __future__ import annotations

import functools
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Callable, NamedTuple

import numpy as np

from bohrlab import extremal as ex
from bohrlab.errors import DomainError
from bohrlab.extremal import FunctionSpec
from bohrlab.functionals import (DEFAULT_THETA_SAMPLES, alt_refined, bohr_power, circle_deviation_power,
                                 circle_values, d_lambda, d_lambda_excess, lemma2_A, lemma2_lhs,
                                 lemma4_sides, lemmaG_sides, refinement_G, rogosinski_E, series_stats,
                                 theorem6_lhs, weighted_sum)
from bohrlab.radii import radius_value, theorem4_L
from bohrlab.series import TruncatedSeries, extract_lacunary, square_tail_error, tail_error
from bohrlab.weights import WeightSequence, parse_weights, tabulate
from bohrlab.weights import phi as tail_sum

DEFAULT_TOL = 1e-9
DEFAULT_MARGIN = 1e-6
DEFAULT_R_POINTS = 50
DEFAULT_SAMPLES = 200
DEFAULT_SEED = 0
WITNESS_GAP = 1e-6
FREE_RADIUS = 0.9          # upper end of the r-grid for claims valid on all of [0, 1)
R_CAP = 0.999
A_GRID = tuple(round(0.05 * i, 2) for i in range(20))

THIRD = 1.0 / 3.0


# evaluation records ----------------------------------------------------------

class Evaluation(NamedTuple):
    """Claim sides on an r-grid; ``excess`` is lhs - rhs computed stably."""

    lhs: np.ndarray
    rhs: np.ndarray
    budget: np.ndarray
    excess: np.ndarray
    theta: np.ndarray


def _evaluation(lhs, rhs, budget, excess=None, theta=None, n=None) -> Evaluation:
    lhs = np.atleast_1d(np.asarray(lhs, dtype=float))
    size = lhs.size if n is None else n
    lhs = np.broadcast_to(lhs, (size,)).astype(float)
    rhs = np.broadcast_to(np.asarray(rhs, dtype=float), (size,)).astype(float)
    budget = np.broadcast_to(np.asarray(budget, dtype=float), (size,)).astype(float)
    excess = lhs - rhs if excess is None else np.broadcast_to(np.asarray(excess, dtype=float), (size,)).astype(float)
    theta = np.zeros(size) if theta is None else np.broadcast_to(np.asarray(theta, dtype=float), (size,)).astype(float)
    return Evaluation(lhs, rhs, budget, excess, theta)


def _abs_a0(f: TruncatedSeries) -> float:
    return float(abs(f.coeffs[0]))


def _real_a0(f: TruncatedSeries) -> float:
    return float(f.coeffs[0].real)


@functools.lru_cache(maxsize=None)
def _weights(text: str) -> WeightSequence:
    return parse_weights(text)


def _zeta0(w: WeightSequence, r: np.ndarray) -> np.ndarray:
    return np.asarray(w.values(0, r), dtype=float) * np.ones_like(r)


# claim evaluators: (f, params, r, theta_samples) -> Evaluation ---------------

def _ev_theoremA(f, P, r, T):
    st = series_stats(f, r)
    return _evaluation(st.M_f, 1.0, st.majorant_tail, st.M_f - 1.0)


def _ev_theoremB_area(f, P, r, T):
    st = series_stats(f, r)
    lhs = st.M_f + 16.0 / 9.0 * st.area_ratio
    return _evaluation(lhs, 1.0, st.majorant_tail + 16.0 / 9.0 * st.area_tail)


def _ev_theoremB_sq(f, P, r, T):
    st = series_stats(f, r)
    dev = circle_deviation_power(f, 1, 2.0, r, T)
    return _evaluation(st.M_f + dev.value, 1.0, st.majorant_tail + dev.budget, theta=dev.theta)


def _ev_theoremC(f, P, r, T):
    w = _weights(P["weights"])
    z0 = _zeta0(w, r)
    b1 = weighted_sum(f, w, 1, r)
    lhs = _abs_a0(f) ** P["p"] * z0 + b1.value
    return _evaluation(lhs, z0, b1.budget)


def _ev_theoremD(f, P, r, T):
    d = d_lambda(f, 0.0, r)
    return _evaluation(d.value, 1.0, d.budget, d_lambda_excess(f, 0.0, r).value)


def _ev_theoremE(f, P, r, T):
    st = series_stats(f, r)
    mods = np.abs(circle_values(f, r, T))
    vals = np.abs(mods + st.A_f0[:, None])
    j = np.argmax(vals, axis=1)
    lhs = vals[np.arange(r.size), j]
    budget = 2.0 * np.asarray(tail_error(f, r))
    return _evaluation(lhs, 1.0, budget, theta=2 * np.pi * j / T)


def _ev_lemmaG(f, P, r, T):
    s = lemmaG_sides(f, _weights(P["weights"]), P["p"], r)
    return _evaluation(s.lhs, s.rhs, s.budget, s.excess)


def _ev_lemma1(f, P, r, T):
    st = series_stats(f, r)
    a0 = _real_a0(f)
    rhs = 4.0 * (1.0 - a0) ** 2 * r ** 2 / (1.0 - r ** 2) ** 2
    return _evaluation(st.area_ratio, rhs, st.area_tail)


def _ev_lemma2(f, P, r, T):
    e = lemma2_lhs(f, P["p"], P["m"], r, T)
    return _evaluation(e.value, 1.0, e.budget, theta=e.theta)


def _ev_lemma4(f, P, r, T):
    s = lemma4_sides(f, _weights(P["weights"]), P["p"], P["m"], r)
    e41 = np.asarray(s.lhs_even - s.rhs_even)
    e42 = np.asarray(s.lhs_odd - s.rhs_odd)
    first = e41 >= e42
    lhs = np.where(first, s.lhs_even, s.lhs_odd)
    rhs = np.where(first, s.rhs_even, s.rhs_odd)
    return _evaluation(lhs, rhs, s.budget, np.maximum(e41, e42))


def _ev_corollary4(f, P, r, T):
    s = lemma4_sides(f, _weights(P["weights"]), P["p"], P["m"], r)
    return _evaluation(s.lhs_all, s.rhs_all, s.budget)


def _ev_remark2_i(f, P, r, T):
    k = P["k"]
    w = WeightSequence.lacunary(k)
    st = series_stats(f, r)
    a0 = _abs_a0(f)
    lac = weighted_sum(f, w, 0, r)
    rk = r ** k
    coef = 1.0 / (1.0 + a0) + rk / (1.0 - rk)
    lhs = lac.value + coef * st.norm0_sq
    rhs = a0 + (1.0 - a0 * a0) * rk / (1.0 - rk)
    return _evaluation(lhs, rhs, lac.budget + coef * st.square_tail)


def _ev_remark2_ii(f, P, r, T):
    st = series_stats(f, r)
    odd = weighted_sum(f, WeightSequence.odd_only(), 1, r)
    c = r / (1.0 - r * r)
    return _evaluation(odd.value, c * (1.0 - st.norm_sq), odd.budget + c * st.square_tail)


def _ev_remark2_iii(f, P, r, T):
    st = series_stats(f, r)
    a0 = _abs_a0(f)
    t = r / (1.0 - r)
    coef = 1.0 / (1.0 + a0) + t
    lhs = st.M_f0 + coef * st.norm0_sq
    return _evaluation(lhs, (1.0 - a0 * a0) * t, st.majorant_tail + coef * st.square_tail)


def _ev_bohr_power(f, P, r, T):
    w = _weights(P["weights"])
    b = bohr_power(f, w, P["p"], r)
    return _evaluation(b.value, _zeta0(w, r), b.budget)


def _ev_corollary1(f, P, r, T):
    w = _weights(P["weights"])
    b = bohr_power(f, w, 1.0, r)
    g = refinement_G(f, w, r)
    return _evaluation(b.value + g.value, _zeta0(w, r), b.budget + g.budget)


def _ev_theorem2(f, P, r, T):
    w = _weights(P["weights"])
    e = rogosinski_E(f, w, P["p"], P["q"], P["m"], r, T)
    return _evaluation(e.value, _zeta0(w, r), e.budget, theta=e.theta)


def _ev_corollary2(f, P, r, T):
    e = rogosinski_E(f, WeightSequence.geometric(), 1.0, 2.0, 1, r, T)
    return _evaluation(e.value, 1.0, e.budget, theta=e.theta)


def _ev_corollary2b(f, P, r, T):
    e = rogosinski_E(f, WeightSequence.geometric(), 2.0, 2.0, 1, r, T)
    return _evaluation(e.value, 1.0, e.budget, theta=e.theta)


def _ev_theorem3(f, P, r, T):
    w = _weights(P["weights"])
    b = bohr_power(f, w, 2.0, r)
    st = series_stats(f, r)
    lam = P["lambda"]
    return _evaluation(b.value + lam * st.area_ratio, _zeta0(w, r), b.budget + lam * st.area_tail)


def _ev_corollary3(f, P, r, T):
    a0 = _real_a0(f)
    b = bohr_power(f, WeightSequence.geometric(), 2.0, r)
    st = series_stats(f, r)
    lam = 16.0 * a0 / (9.0 * (1.0 - a0))
    return _evaluation(b.value + lam * st.area_ratio, 1.0, b.budget + lam * st.area_tail)


def _ev_theorem4(f, P, r, T):
    d = d_lambda(f, P["lambda"], r)
    return _evaluation(d.value, 1.0, d.budget, d_lambda_excess(f, P["lambda"], r).value)


def _ev_theorem5_I(f, P, r, T):
    a = alt_refined(f, _weights(P["weights"]), P["p"], P["m"], r)
    return _evaluation(np.abs(a.C_star), 1.0, a.budget)


def _ev_theorem5_II(f, P, r, T):
    a = alt_refined(f, _weights(P["weights"]), P["p"], P["m"], r)
    return _evaluation(np.abs(a.D_star), 1.0, a.budget)


def _ev_corollary5(f, P, r, T):
    a = alt_refined(f, _weights(P["weights"]), P["p"], P["m"], r)
    return _evaluation(np.abs(a.F_star), 1.0, a.budget)


def _ev_example1_1(f, P, r, T):
    st = series_stats(f, r)
    c = r / (1.0 - r * r)
    lhs = np.abs(st.A_f0 - c * st.norm_sq)
    return _evaluation(lhs, 1.0, st.majorant_tail + c * st.square_tail)


def _ev_example1_2(f, P, r, T):
    k = P["k"]
    g = extract_lacunary(f, k, 0)
    x = r ** k
    st = series_stats(g, x)
    coef = 1.0 / (1.0 + _abs_a0(g)) + x / (1.0 - x)
    lhs = np.abs(st.M_f0 + coef * st.norm0_sq)
    return _evaluation(lhs, 1.0, st.majorant_tail + coef * st.square_tail)


def _ev_example1_3(f, P, r, T):
    n = f.order
    mod = np.abs(f.coeffs)
    w = _weights("monomial:harmonic")
    tab = tabulate(w, r, 2 * n + 2)
    idx = np.arange(1, n + 1)
    sign = np.where(idx % 2 == 1, 1.0, -1.0)
    alt = (sign * mod[1:]) @ tab.zeta[1:n + 1]
    # (1/r) int_0^r t^{2n+1}/(1-t^2) dt = sum_{k>=n} r^{2k+1}/(2k+2)
    integrals = tab.suffix(2)[2 * idx + 1]
    lhs = np.abs(alt + (mod[1:] ** 2) @ integrals)
    budget = np.asarray(tail_error(f, r)) + r / (1.0 - r * r) * np.asarray(square_tail_error(f, r))
    return _evaluation(lhs, 1.0, budget)


def _ev_example2_i(f, P, r, T):
    g = extract_lacunary(f, 2, 0)
    x = r * r
    st = series_stats(g, x)
    b0 = _abs_a0(g)
    coef = 1.0 / (1.0 + b0) + x / (1.0 - x)
    return _evaluation(st.M_f + coef * st.norm0_sq, 1.0, st.majorant_tail + coef * st.square_tail)


def _ev_example2_ii(f, P, r, T):
    g = extract_lacunary(f, 2, 1)
    x = r * r
    st = series_stats(g, x)
    b0 = _abs_a0(g)
    coef = r / (1.0 + b0) + r ** 3 / (1.0 - x)
    lhs = r * st.M_f + coef * st.norm0_sq
    return _evaluation(lhs, 1.0, r * st.majorant_tail + coef * st.square_tail)


def _ev_theorem6(f, P, r, T):
    e = theorem6_lhs(f, P["p"], P["m"], r, T, "abs_f")
    return _evaluation(e.value, 1.0, e.budget, theta=e.theta)


def _ev_corollary6(f, P, r, T):
    e = theorem6_lhs(f, 1, 0, r, T, "abs_f")
    return _evaluation(e.value, 1.0, e.budget, theta=e.theta)


def _ev_corollary7(f, P, r, T):
    e = theorem6_lhs(f, P["p"], P["m"], r, T, "fixed_term")
    return _evaluation(e.value, 1.0, e.budget)


# radii per claim: (params, a0) -> radius or None (valid on [0, 1)) ---------------

def _fixed(value):
    return lambda P, a0: value


def _rad(id_, *keys, with_a0=False, weights=True, **fixed):
    def radius_of(P, a0):
        kw = {k: P[k] for k in keys}
        kw.update(fixed)
        if weights and "weights" in P:
            kw["weights"] = _weights(P["weights"])
        if with_a0:
            kw["a0"] = a0
        return _radius_cached(id_, tuple(sorted((k, v) for k, v in kw.items())))
    return radius_of


@functools.lru_cache(maxsize=4096)
def _radius_cached(id_: str, items: tuple) -> float:
    return radius_value(id_, **dict(items))


# extremal schedules ------------------------------------------------------------

def _a_to_one(schedule):
    return schedule or (0.9, 0.99, 0.999, 0.9999)


def _a_to_zero(schedule):
    return schedule or (0.1, 0.01, 0.001, 0.0)


def _at_radius(make, claim_radius, default):
    """Probe points (spec, r) at the claim radius of each extremal function, plus delta."""
    def build(P, schedule, delta):
        out = []
        for a in (schedule or default):
            spec = make(a, P)
            R = claim_radius(P, a)
            out.append((spec, R + delta))
        return out
    return build


def _tighten_points(make, default, r_values=(0.3, 0.5)):
    def build(P, schedule, delta):
        return [(make(a, P), r) for a in (schedule or default) for r in r_values]
    return build


def _mono_points(degree):
    """f = z^degree at the claim radius + delta; the schedule is ignored."""
    def build_with(claim_radius):
        def build(P, schedule, delta):
            return [(ex.monomial(degree(P)), claim_radius(P, 0.0) + delta)]
        return build
    return build_with


def _mobius_minus_points(claim_radius, s_of_r):
    """z^m (a - z^p)/(1 - a z^p) with a near 1/(2 S(r)) just past the radius."""
    def build(P, schedule, delta):
        r = claim_radius(P, 0.0) + delta
        S = s_of_r(P, r)
        best = min(max(1.0 / (2.0 * S), 0.0), 0.999)
        alist = tuple(schedule) if schedule else (best, 0.5, 0.7, 0.9)
        return [(ex.lacunary_mobius(a, P["p"], P["m"], "-"), r) for a in alist]
    return build


def _plain_S(P, r):
    return r ** P["p"] / (1.0 - r ** P["p"])


@dataclass(frozen=True)
class Sharpness:
    """How to exhibit that a claim cannot be improved.

    mode "radius": the bound fails just past the radius.  mode "tighten": the
    claim holds with equality, so shrinking the bound by (1 - delta) fails.
    """

    build: Callable
    mode: str = "radius"
    param_sets: tuple[dict, ...] | None = None
    informational: bool = False
    note: str = ""


@dataclass(frozen=True)
class Claim:
    id: str
    family: str                       # "B", "P" or "lacunary"
    evaluate: Callable
    radius: Callable                  # (params, a0) -> float | None
    param_sets: tuple[dict, ...] = ({},)
    sharp: Sharpness | None = None
    precondition: Callable | None = None
    statement: str = ""


def _P(**kw) -> dict:
    return dict(kw)


def _needs_positive_a0(spec, f):
    return None if _real_a0(f) > 0.0 else "needs a0 in (0, 1)"


def _needs_half(spec, f):
    return None if _real_a0(f) >= 0.5 else "needs a0 in [1/2, 1)"


_phi = lambda a, P: ex.phi(a)
_psi = lambda a, P: ex.psi(a)
_mobius_plus = lambda a, P: ex.lacunary_mobius(a, P["p"], P["m"], "+")
_mobius_minus = lambda a, P: ex.lacunary_mobius(a, P["p"], P["m"], "-")
_phi_zk = lambda a, P: ex.lacunary(ex.phi(a), P["k"], 0)

_THIRD = _fixed(THIRD)
_FREE = _fixed(None)

_R_theoremC = _rad("theoremC_R", "p")
_R_theoremD = _rad("theoremD_r0", with_a0=True, weights=False)
_R_theorem1_i = _rad("theorem1_R1", "p")
_R_theorem1_ii = _rad("theorem1_Rp", "p", with_a0=True)
_R_corollary1 = _rad("corollary1_r1")
_R_theorem2_i = _rad("theorem2_Rpmq", "p", "q", "m")
_R_theorem2_ii = _rad("theorem2_Rpmq", "q", "m", with_a0=True, p=2)
_R_theorem3 = _rad("theorem3_Rlambda2", "lambda", with_a0=True)
_R_theorem4 = _rad("theorem4_rho", with_a0=True, weights=False)
_R_lemma2 = _rad("lemma2_rpm", "p", "m", weights=False)
_R_theorem5_I = _rad("theorem5_rstar", "p", "m")
_R_theorem5_II = _rad("theorem5_Rstar", "p", "m")
_R_corollary5 = _rad("corollary5_rtilde", "p", "m")
_R_corollary7 = _rad("corollary7_Rpm", "p", "m", weights=False)
_R_example1_1 = lambda P, a0: _R_theorem5_I(dict(weights="monomial:plain", p=1, m=0), a0)
_R_example1_2 = lambda P, a0: _R_theorem5_II(dict(weights="monomial:plain", p=P["k"], m=0), a0)
_R_example1_3 = lambda P, a0: _R_theorem5_I(dict(weights="monomial:harmonic", p=1, m=0), a0)
_R_example2_i = lambda P, a0: _R_corollary5(dict(weights="monomial:plain", p=2, m=0), a0)
_R_example2_ii = lambda P, a0: _R_corollary5(dict(weights="monomial:plain", p=2, m=1), a0)
_SQRT2_1 = _fixed(math.sqrt(2.0) - 1.0)
_SQRT5_2 = _fixed(math.sqrt(5.0) - 2.0)


def _monomial_S(P, r):
    w = _weights(P["weights"])
    return float(tail_sum(w, 1, r ** P["p"]))


_GEOM_C = (_P(weights="geometric", p=1.0), _P(weights="geometric", p=2.0), _P(weights="geometric", p=0.5),
           _P(weights="harmonic", p=1.0))
_LEMMA_G = (_P(weights="geometric", p=1.0), _P(weights="geometric", p=2.0), _P(weights="geometric", p=0.5),
            _P(weights="harmonic", p=1.0), _P(weights="even_only", p=1.0), _P(weights="odd_only", p=1.0),
            _P(weights="lacunary:3", p=1.0))
_LEMMA4 = (_P(weights="geometric", p=1, m=0), _P(weights="geometric", p=2, m=1), _P(weights="geometric", p=2, m=2),
           _P(weights="harmonic", p=3, m=1))
_T5_I = (_P(weights="monomial:plain", p=1, m=0), _P(weights="monomial:plain", p=1, m=1),
         _P(weights="monomial:plain", p=3, m=0), _P(weights="monomial:plain", p=3, m=2),
         _P(weights="monomial:harmonic", p=1, m=0))
_T5_II = (_P(weights="monomial:plain", p=2, m=0), _P(weights="monomial:plain", p=2, m=1),
          _P(weights="monomial:plain", p=2, m=2), _P(weights="monomial:plain", p=4, m=0))
_C5 = (_P(weights="monomial:plain", p=2, m=0), _P(weights="monomial:plain", p=2, m=1),
       _P(weights="monomial:plain", p=4, m=1))
_T6 = (_P(p=1, m=0), _P(p=3, m=0), _P(p=3, m=2), _P(p=5, m=4))
_C7 = (_P(p=1, m=0), _P(p=3, m=0), _P(p=3, m=2), _P(p=1, m=2))
_LEMMA2 = (_P(p=1, m=0), _P(p=2, m=0), _P(p=2, m=1), _P(p=3, m=0), _P(p=3, m=2))


def _build_registry() -> dict[str, Claim]:
    claims = [
        Claim("theoremA", "B", _ev_theoremA, _THIRD,
              sharp=Sharpness(_at_radius(_phi, _THIRD, _a_to_one(None))),
              statement="M_f(r) <= 1 for r <= 1/3"),
        Claim("theoremB_area", "B", _ev_theoremB_area, _THIRD,
              sharp=Sharpness(_at_radius(_phi, _THIRD, _a_to_one(None))),
              statement="M_f(r) + (16/9) S_r/pi <= 1 for r <= 1/3"),
        Claim("theoremB_sq", "B", _ev_theoremB_sq, _THIRD,
              sharp=Sharpness(_at_radius(_phi, _THIRD, _a_to_one(None))),
              statement="M_f(r) + |f(z) - a0|^2 <= 1 for r <= 1/3"),
        Claim("theoremC", "B", _ev_theoremC, _R_theoremC, _GEOM_C,
              sharp=Sharpness(_at_radius(_phi, _R_theoremC, _a_to_one(None))),
              statement="|a0|^p zeta_0 + B_1 <= zeta_0 for r <= R"),
        Claim("theoremD", "P", _ev_theoremD, _R_theoremD,
              sharp=Sharpness(_at_radius(_psi, _R_theoremD, (0.0, 0.25, 0.5, 0.75))),
              statement="M_f + (1/(1+a0) + r/(1-r)) ||f_0||^2 <= 1 for r <= r_0(a0)"),
        Claim("theoremE", "B", _ev_theoremE, _SQRT2_1,
              statement="||f(z)| + A_f0(r)| <= 1 for r <= sqrt(2) - 1"),
        Claim("lemmaG", "B", _ev_lemmaG, _FREE, _LEMMA_G,
              sharp=Sharpness(_tighten_points(_phi, (0.3, 0.5, 0.8)), mode="tighten"),
              statement="weighted refined inequality, equality for phi_a"),
        Claim("lemma1", "P", _ev_lemma1, _FREE,
              sharp=Sharpness(_tighten_points(_psi, (0.0, 0.5, 0.8)), mode="tighten"),
              statement="S_r/pi <= 4(1-a0)^2 r^2/(1-r^2)^2"),
        Claim("lemma2", "lacunary", _ev_lemma2, _R_lemma2, _LEMMA2,
              sharp=Sharpness(_at_radius(_mobius_plus, _R_lemma2, (0.5, 0.7, 0.9, 0.95, 0.99)),
                              param_sets=(_P(p=1, m=0), _P(p=2, m=0), _P(p=3, m=0)),
                              note="sharpness exhibited for m = 0"),
              statement="|f(z)| + r^m A(r) <= 1 for r <= r_{p,m}"),
        Claim("lemma4", "lacunary", _ev_lemma4, _FREE, _LEMMA4,
              sharp=Sharpness(_tighten_points(_mobius_minus, (0.3, 0.6)), mode="tighten"),
              statement="even-part and odd-part refined bounds"),
        Claim("remark2_i", "B", _ev_remark2_i, _FREE, (_P(k=1), _P(k=2)),
              sharp=Sharpness(_tighten_points(_phi_zk, (0.3, 0.6)), mode="tighten"),
              statement="k-lacunary refined bound, equality for phi_a(z^k)"),
        Claim("remark2_ii", "B", _ev_remark2_ii, _FREE,
              sharp=Sharpness(_tighten_points(_phi, (0.3, 0.6)), mode="tighten"),
              statement="sum |a_{2n-1}| r^{2n-1} <= r (1 - ||f||^2)/(1 - r^2)"),
        Claim("remark2_iii", "B", _ev_remark2_iii, _FREE,
              sharp=Sharpness(_tighten_points(_phi, (0.3, 0.6)), mode="tighten"),
              statement="M_f0 + (1/(1+|a0|) + r/(1-r)) ||f_0||^2 <= (1 - |a0|^2) r/(1-r)"),
        Claim("theorem1_i", "P", _ev_bohr_power, _R_theorem1_i,
              (_P(weights="geometric", p=1.0), _P(weights="geometric", p=0.5), _P(weights="harmonic", p=1.0)),
              sharp=Sharpness(_at_radius(_psi, _R_theorem1_i, _a_to_one(None))),
              statement="a0^p zeta_0 + B_1 <= zeta_0 for r <= R_1"),
        Claim("theorem1_ii", "P", _ev_bohr_power, _R_theorem1_ii,
              (_P(weights="geometric", p=2), _P(weights="geometric", p=3), _P(weights="harmonic", p=2)),
              sharp=Sharpness(_at_radius(_psi, _R_theorem1_ii, (0.0, 0.3, 0.6, 0.9))),
              statement="a0^p zeta_0 + B_1 <= zeta_0 for r <= R_p(a0)"),
        Claim("corollary1", "P", _ev_corollary1, _R_corollary1,
              (_P(weights="geometric"), _P(weights="harmonic")),
              sharp=Sharpness(_at_radius(_psi, _R_corollary1, _a_to_zero(None))),
              statement="a0 zeta_0 + B_1 + G <= zeta_0 for r < r_1"),
        Claim("theorem2_i", "P", _ev_theorem2, _R_theorem2_i,
              (_P(weights="geometric", p=1.0, q=1.0, m=1), _P(weights="geometric", p=1.0, q=2.0, m=1),
               _P(weights="geometric", p=1.0, q=2.0, m=3), _P(weights="geometric", p=0.5, q=1.0, m=1),
               _P(weights="geometric", p=0.5, q=1.0, m=2), _P(weights="harmonic", p=1.0, q=1.5, m=2)),
              sharp=Sharpness(_theorem2_points, param_sets=(
                  _P(weights="geometric", p=1.0, q=1.0, m=1), _P(weights="geometric", p=1.0, q=2.0, m=1),
                  _P(weights="geometric", p=1.0, q=2.0, m=3), _P(weights="geometric", p=0.5, q=1.0, m=1),
                  _P(weights="geometric", p=0.5, q=1.0, m=2))),
              statement="E_f(zeta, p, r) <= zeta_0 for r <= R^p_{m,q}"),
        Claim("theorem2_ii", "P", _ev_theorem2_p2, _R_theorem2_ii,
              (_P(weights="geometric", q=1.0, m=1), _P(weights="geometric", q=2.0, m=1),
               _P(weights="geometric", q=2.0, m=2)),
              sharp=Sharpness(_at_radius(_psi, _R_theorem2_ii, (0.0, 0.3, 0.6, 0.9))),
              statement="E_f(zeta, 2, r) <= zeta_0 for r <= R^2_{m,q}(a0)"),
        Claim("corollary2", "P", _ev_corollary2, _SQRT5_2,
              sharp=Sharpness(_at_radius(_psi, _SQRT5_2, _a_to_zero(None))),
              statement="a0 + M_f0 + |f - a0|^2 <= 1 for r <= sqrt(5) - 2"),
        Claim("corollary2b", "P", _ev_corollary2b, _THIRD, precondition=_needs_half,
              sharp=Sharpness(_at_radius(_psi, _THIRD, (0.5, 0.6, 0.75))),
              statement="a0^2 + M_f0 + |f - a0|^2 <= 1 for r <= 1/3 when a0 >= 1/2"),
        Claim("theorem3", "P", _ev_theorem3, _R_theorem3,
              (_P(weights="geometric", **{"lambda": 0.5}), _P(weights="geometric", **{"lambda": 1.0}),
               _P(weights="harmonic", **{"lambda": 1.0})),
              sharp=Sharpness(_at_radius(_psi, _R_theorem3, (0.0, 0.3, 0.6, 0.9))),
              statement="a0^2 zeta_0 + B_1 + lambda S_r/pi <= zeta_0 for r <= R_{lambda,2}"),
        Claim("corollary3", "P", _ev_corollary3, _THIRD, precondition=_needs_positive_a0,
              sharp=Sharpness(_at_radius(_psi, _THIRD, (0.3, 0.5, 0.7))),
              statement="a0^2 + M_f0 + 16 a0/(9(1-a0)) S_r/pi <= 1 for r <= 1/3"),
        Claim("theorem4", "P", _ev_theorem4, _R_theorem4,
              (_P(**{"lambda": 8.0 / 9.0}), _P(**{"lambda": 0.5}), _P(**{"lambda": 0.0})),
              sharp=Sharpness(_at_radius(_psi, _R_theorem4, _a_to_one(None)),
                              param_sets=(_P(**{"lambda": 8.0 / 9.0}),)),
              statement="D_lambda(r) <= 1 for r <= 1/(5 - 2 a0), lambda <= 8/9"),
        Claim("corollary4", "lacunary", _ev_corollary4, _FREE, _LEMMA4,
              sharp=Sharpness(_tighten_points(_mobius_minus, (0.3, 0.6)), mode="tighten"),
              statement="combined lacunary refined bound, equality for z^m (a - z^p)/(1 - a z^p)"),
        Claim("theorem5_I", "lacunary", _ev_theorem5_I, _R_theorem5_I, _T5_I,
              sharp=Sharpness(_mono_points(lambda P: P["p"] + P["m"])(_R_theorem5_I)),
              statement="|C*| <= 1 for r <= r_*"),
        Claim("theorem5_II", "lacunary", _ev_theorem5_II, _R_theorem5_II, _T5_II,
              sharp=Sharpness(_mono_points(lambda P: P["p"] + P["m"])(_R_theorem5_II)),
              statement="|D*| <= 1 for r <= R_*"),
        Claim("corollary5", "lacunary", _ev_corollary5, _R_corollary5, _C5,
              sharp=Sharpness(_mobius_minus_points(_R_corollary5, _monomial_S)),
              statement="|A*_f + refinement| <= 1 for r <= r~"),
        Claim("example1_1", "B", _ev_example1_1, _R_example1_1,
              sharp=Sharpness(_mono_points(lambda P: 1)(_R_example1_1)),
              statement="|A_f0 - r ||f||^2/(1 - r^2)| <= 1 for r <= (sqrt(5) - 1)/2"),
        Claim("example1_2", "lacunary", _ev_example1_2, _R_example1_2, (_P(k=2, p=2, m=0), _P(k=4, p=4, m=0)),
              sharp=Sharpness(_mono_points(lambda P: P["k"])(_R_example1_2)),
              statement="even-lacunary refined majorant <= 1 for r <= 2^(-1/k)"),
        Claim("example1_3", "B", _ev_example1_3, _R_example1_3,
              sharp=Sharpness(_mono_points(lambda P: 1)(_R_example1_3)),
              statement="harmonic-weight alternating bound for r up to the root of -log(1-r^2) = 2r"),
        Claim("example2_i", "lacunary", _ev_example2_i, _R_example2_i, (_P(p=2, m=0),),
              sharp=Sharpness(_mobius_minus_points(_R_example2_i, _plain_S)),
              statement="even-part refined majorant <= 1 for r <= 1/sqrt(3)"),
        Claim("example2_ii", "lacunary", _ev_example2_ii, _R_example2_ii, (_P(p=2, m=1),),
              sharp=Sharpness(_mobius_minus_points(_R_example2_ii, _plain_S)),
              statement="odd-part refined majorant <= 1 for r <= 0.731348"),
        Claim("theorem6", "lacunary", _ev_theorem6, _R_lemma2, _T6,
              sharp=Sharpness(_at_radius(_mobius_plus, _R_lemma2, (0.0, 0.5, 0.9, 0.99)),
                              informational=True,
                              note="no optimality claim; probe outcome is recorded only"),
              statement="||f(z)| + E_{f_m}(r)| <= 1 for r <= r_{p,m}"),
        Claim("corollary6", "B", _ev_corollary6, _SQRT2_1,
              sharp=Sharpness(_at_radius(_phi, _SQRT2_1, (0.0, 0.5, 0.9, 0.99)), informational=True,
                              note="no optimality claim; probe outcome is recorded only"),
              statement="||f| + A_f0 + (1/(1+|a0|) + r^2/(1-r^2)) ||f_0||^2| <= 1 for r <= sqrt(2) - 1"),
        Claim("corollary7", "lacunary", _ev_corollary7, _R_corollary7, _C7,
              sharp=Sharpness(_mono_points(lambda P: 2 * P["p"] + P["m"])(_R_corollary7)),
              statement="fixed-term refined alternating bound <= 1 for r <= R_{p,m}"),
    ]
    return {c.id: c for c in claims}


def _ev_theorem2_p2(f, P, r, T):
    return _ev_theorem2(f, dict(P, p=2.0), r, T)


def _theorem2_points(P, schedule, delta):
    # p = 1: psi_a with a -> 0+; q = 1 (any p): psi_a with a -> 1-
    default = _a_to_zero(None) if P["p"] == 1 else _a_to_one(None)
    return _at_radius(_psi, _R_theorem2_i, default)(P, schedule, delta)


CLAIMS: dict[str, Claim] = {}


def claims() -> dict[str, Claim]:
    if not CLAIMS:
        CLAIMS.update(_build_registry())
    return CLAIMS


def claim(theorem_id: str) -> Claim:
    table = claims()
    if theorem_id not in table:
        raise DomainError(f"unknown theorem id {theorem_id!r}")
    return table[theorem_id]


# corpora -----------------------------------------------------------------------

def standard_corpus(family: str, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                    p: int = 1, m: int = 0) -> list[FunctionSpec]:
    """Extremal a-grid (step 0.05) plus ``samples`` seeded class members.

    Sample i uses seed ``seed + i`` and complexity 1 + (i mod 8).
    """
    if family == "B":
        specs = [ex.phi(a) for a in A_GRID]
        specs += [ex.sample_spec("B", seed + i, 1 + i % 8) for i in range(samples)]
    elif family == "P":
        specs = [ex.psi(a) for a in A_GRID]
        specs += [ex.sample_spec("P", seed + i, 1 + i % 8) for i in range(samples)]
    elif family == "lacunary":
        specs = [ex.lacunary_mobius(a, p, m, s) for s in "+-" for a in A_GRID]
        specs += [ex.monomial(n * p + m) for n in range(4)]
        specs += [ex.lacunary(ex.sample_spec("B", seed + i, 1 + i % 8), p, m) for i in range(samples)]
    else:
        raise DomainError(f"unknown corpus family {family!r}")
    return specs


def _spec_a0(spec: FunctionSpec) -> float:
    return float(np.real(ex.closed_form(spec, np.array([0.0]))[0]))


@functools.lru_cache(maxsize=8192)
def _realized(spec: FunctionSpec, r_max: float) -> TruncatedSeries:
    return ex.realize(spec, r_max)


def _threads() -> int:
    raw = os.environ.get("BOHRLAB_THREADS", "").strip()
    if not raw:
        return min(4, os.cpu_count() or 1)
    try:
        return max(int(raw), 0)
    except ValueError:
        return 0


def _pmap(fn, items: list) -> list:
    n = _threads()
    if n <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# reports -----------------------------------------------------------------------

@dataclass
class VerificationReport:
    """Flat record of one check_theorem run (JSON-serializable via ``to_dict``)."""

    theorem_id: str
    statement: str
    param_sets: list
    functions_checked: int
    skipped: list
    r_points: int
    r_grid: str
    margin: float
    theta_samples: int
    tol: float
    max_violation: float
    max_excess: float
    max_budget: float
    passed: bool
    witness_function: str | None = None
    witness_params: dict | None = None
    witness_r: float | None = None
    witness_theta: float | None = None
    witness_lhs: float | None = None
    witness_rhs: float | None = None
    witness_budget: float | None = None
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)

    def comparable(self) -> dict:
        """All fields except timing, for determinism comparisons."""
        d = self.to_dict()
        d.pop("elapsed")
        return d


def _grid(R: float | None, r_points: int, margin: float) -> np.ndarray:
    top = FREE_RADIUS if R is None else min(R - margin, R_CAP)
    return np.linspace(0.0, max(top, 0.0), r_points)


def _check_one(cl: Claim, P: dict, spec: FunctionSpec, index: int, r_points: int, theta_samples: int,
               margin: float):
    """Worst point for one function: (violation, excess, budget, index, r, theta, lhs, rhs) or a skip note."""
    a0 = _spec_a0(spec)
    R = cl.radius(P, a0)
    r = _grid(R, r_points, margin)
    f = _realized(spec, float(r[-1]) if r[-1] > 0 else 0.5)
    if cl.precondition is not None:
        note = cl.precondition(spec, f)
        if note:
            return f"{spec.label}: {note}"
    ev = cl.evaluate(f, P, r, theta_samples)
    viol = ev.excess - ev.budget
    j = int(np.argmax(viol))
    return (float(viol[j]), float(np.max(ev.excess)), float(np.max(ev.budget)), index,
            float(r[j]), float(ev.theta[j]), float(ev.lhs[j]), float(ev.rhs[j]), float(ev.budget[j]))


def _resolve_param_sets(cl: Claim, params: dict | None) -> list[dict]:
    if params is None:
        sets = [dict(p) for p in cl.param_sets]
    else:
        base = dict(cl.param_sets[0])
        base.update(params)
        sets = [base]
    return [_normalize_params(cl, P) for P in sets]


def _normalize_params(cl: Claim, P: dict) -> dict:
    out = dict(P)
    if "lam" in out:
        out["lambda"] = out.pop("lam")
    for key in ("m", "k"):
        if key in out:
            out[key] = int(out[key])
    if "p" in out and cl.family == "lacunary":
        out["p"] = int(out["p"])
    for key in ("q", "lambda"):
        if key in out:
            out[key] = float(out[key])
    return out


def _corpus_for(cl: Claim, P: dict, samples: int, seed: int) -> list[FunctionSpec]:
    if cl.family == "lacunary":
        p = P.get("p", P.get("k", 1))
        return standard_corpus("lacunary", samples, seed, p=int(p), m=int(P.get("m", 0)))
    return standard_corpus(cl.family, samples, seed)


def check_theorem(theorem_id: str, corpus: list[FunctionSpec] | None = None, r_points: int = DEFAULT_R_POINTS,
                  theta_samples: int = DEFAULT_THETA_SAMPLES, tol: float = DEFAULT_TOL,
                  params: dict | None = None, margin: float = DEFAULT_MARGIN,
                  samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Sweep the claim over (function, r, theta) below its radius.

    With ``params`` omitted every default parameter set of the claim is
    checked and the report carries the worst point over all of them.
    """
    cl = claim(theorem_id)
    if corpus is not None and len(corpus) == 0:
        raise DomainError("empty corpus")
    if r_points < 2:
        raise DomainError("r_points must be >= 2")
    start = time.perf_counter()
    param_sets = _resolve_param_sets(cl, params)
    best = None
    skipped: list[str] = []
    checked = 0
    max_excess = -math.inf
    max_budget = 0.0
    for P in param_sets:
        specs = list(corpus) if corpus is not None else _corpus_for(cl, P, samples, seed)
        results = _pmap(lambda item: _check_one(cl, P, item[1], item[0], r_points, theta_samples, margin),
                        list(enumerate(specs)))
        for res in results:
            if isinstance(res, str):
                skipped.append(res)
                continue
            checked += 1
            max_excess = max(max_excess, res[1])
            max_budget = max(max_budget, res[2])
            # strict comparison keeps the first of equal maxima (param set, function index, r)
            if best is None or res[0] > best[0][0]:
                best = (res, P, specs[res[3]])
    if best is None:
        raise DomainError(f"{theorem_id}: no corpus member satisfies the preconditions")
    (viol, _, _, _, r, th, lhs, rhs, bud), P_w, spec_w = best
    report = VerificationReport(
        theorem_id=theorem_id, statement=cl.statement, param_sets=[_jsonable(P) for P in param_sets],
        functions_checked=checked, skipped=skipped, r_points=r_points,
        r_grid=f"linspace(0, radius - {margin:g}, {r_points})", margin=margin,
        theta_samples=theta_samples, tol=tol, max_violation=viol, max_excess=max_excess,
        max_budget=max_budget, passed=bool(viol <= tol))
    if viol > 0:
        report.witness_function = spec_w.label
        report.witness_params = _jsonable(P_w)
        report.witness_r = r
        report.witness_theta = th
        report.witness_lhs = lhs
        report.witness_rhs = rhs
        report.witness_budget = bud
    report.elapsed = time.perf_counter() - start
    return report


def _jsonable(P: dict) -> dict:
    return {k: (v if isinstance(v, (int, float, str)) else str(v)) for k, v in P.items()}


# sharpness -------------------------------------------------------------------------

@dataclass
class SharpnessResult:
    theorem_id: str
    mode: str
    delta: float
    found: bool
    informational: bool
    witnesses: list = field(default_factory=list)
    missing: list = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _probe_point(cl: Claim, P: dict, spec: FunctionSpec, r: float, delta: float, mode: str,
                 theta_samples: int) -> dict:
    r = min(r, R_CAP)
    f = _realized(spec, r)
    ev = cl.evaluate(f, P, np.array([r]), theta_samples)
    lhs, rhs, budget = float(ev.lhs[0]), float(ev.rhs[0]), float(ev.budget[0])
    if mode == "tighten":
        bound = (1.0 - delta) * rhs
        gap = lhs - bound - budget
    else:
        bound = rhs
        gap = float(ev.excess[0]) - budget
    return {"function": spec.label, "a": spec.a, "r": r, "lhs": lhs, "bound": bound, "budget": budget,
            "gap": gap, "params": _jsonable(P)}


def sharpness_probe(theorem_id: str, delta: float = 0.01, extremal_schedule=None,
                    theta_samples: int = DEFAULT_THETA_SAMPLES, params: dict | None = None) -> SharpnessResult:
    """Look for an extremal function beating the bound just past the radius.

    For each parameter set the schedule is walked in order and the first
    point with lhs > bound + budget + 1e-6 is kept.  ``found`` requires a
    witness for every parameter set.
    """
    if delta <= 0:
        raise DomainError("delta must be positive")
    cl = claim(theorem_id)
    sh = cl.sharp
    if sh is None:
        return SharpnessResult(theorem_id, "none", delta, False, True, note="no sharpness clause")
    if params is not None:
        sets = _resolve_param_sets(cl, params)
    else:
        sets = [_normalize_params(cl, P) for P in (sh.param_sets or cl.param_sets)]
    schedule = tuple(extremal_schedule) if extremal_schedule else None
    result = SharpnessResult(theorem_id, sh.mode, delta, True, sh.informational, note=sh.note)
    for P in sets:
        hit = None
        last = None
        for spec, r in sh.build(P, schedule, delta):
            point = _probe_point(cl, P, spec, r, delta, sh.mode, theta_samples)
            last = point
            if point["gap"] > WITNESS_GAP:
                hit = point
                break
        if hit is None:
            result.found = False
            result.missing.append(last if last is not None else {"params": _jsonable(P)})
        else:
            result.witnesses.append(hit)
    return result


def has_sharpness_clause(theorem_id: str) -> bool:
    sh = claim(theorem_id).sharp
    return sh is not None and not sh.informational


# equality cases -------------------------------------------------------------------------

class EqualityResult(NamedTuple):
    residual: float
    budget: float
    lhs: float
    rhs: float

    @property
    def ok(self) -> bool:
        return self.residual <= self.budget + DEFAULT_TOL

    def __float__(self):
        return self.residual


EQUALITY_CASES = ("lemmaG_phi", "lemma1_psi", "lemma2_A_closed_form", "corollary4_mobius",
                  "remark2i_phi_zk", "psi_bohr_power")


def _scalar_eval(cl_id: str, spec: FunctionSpec, P: dict, r: float) -> Evaluation:
    cl = claim(cl_id)
    return cl.evaluate(_realized(spec, r), _normalize_params(cl, P), np.array([r]), DEFAULT_THETA_SAMPLES)


def equality_check(case_id: str, params: dict) -> EqualityResult:
    """|lhs - rhs| for one of the documented equality cases."""
    a = float(params.get("a", 0.5))
    r = float(params["r"])
    if not 0.0 <= r < 1.0:
        raise DomainError("r must lie in [0, 1)")
    if case_id == "lemmaG_phi":
        P = {"weights": params.get("weights", "geometric"), "p": float(params.get("p", 1.0))}
        ev = _scalar_eval("lemmaG", ex.phi(a), P, r)
    elif case_id == "lemma1_psi":
        ev = _scalar_eval("lemma1", ex.psi(a), {}, r)
    elif case_id == "lemma2_A_closed_form":
        p, m = int(params.get("p", 1)), int(params.get("m", 0))
        f = _realized(ex.lacunary_mobius(a, p, m, "+"), r)
        A = lemma2_A(f, p, m, r)
        x = r ** (2 * p)
        closed = (1.0 - a * a) * x / (1.0 - x)
        return EqualityResult(abs(float(A.value) - closed), float(A.budget), float(A.value), closed)
    elif case_id == "corollary4_mobius":
        P = {"weights": params.get("weights", "geometric"), "p": int(params.get("p", 1)),
             "m": int(params.get("m", 0))}
        ev = _scalar_eval("corollary4", ex.lacunary_mobius(a, P["p"], P["m"], "-"), P, r)
    elif case_id == "remark2i_phi_zk":
        k = int(params.get("k", 1))
        ev = _scalar_eval("remark2_i", ex.lacunary(ex.phi(a), k, 0), {"k": k}, r)
    elif case_id == "psi_bohr_power":
        w = _weights(params.get("weights", "geometric"))
        p = float(params.get("p", 1.0))
        f = _realized(ex.psi(a), r)
        b = bohr_power(f, w, p, r)
        z0 = float(w.values(0, r))
        phi1 = float(tail_sum(w, 1, r))
        ratio = float(ex._ratio_T(a, p))
        closed = z0 + 2.0 * (1.0 - a) * (phi1 - ratio / 2.0 * z0)
        return EqualityResult(abs(float(b.value) - closed), float(b.budget), float(b.value), closed)
    else:
        raise DomainError(f"unknown equality case {case_id!r}")
    return EqualityResult(abs(float(ev.excess[0])), float(ev.budget[0]), float(ev.lhs[0]), float(ev.rhs[0]))


def equality_grid(case_id: str) -> list[dict]:
    """Ten (a, r) points (plus case-specific parameters) for ``case_id``."""
    a_values = np.linspace(0.0, 0.9, 10)
    r_values = np.linspace(0.05, 0.8, 10)
    extra = {
        "lemmaG_phi": [{"weights": w, "p": p} for w, p in
                       (("geometric", 1.0), ("harmonic", 2.0), ("odd_only", 0.5), ("lacunary:2", 1.0),
                        ("even_only", 1.5))],
        "lemma1_psi": [{}],
        "lemma2_A_closed_form": [{"p": 1, "m": 0}, {"p": 2, "m": 1}, {"p": 3, "m": 0}],
        "corollary4_mobius": [{"p": 1, "m": 0, "weights": "geometric"}, {"p": 2, "m": 1, "weights": "harmonic"},
                              {"p": 2, "m": 2, "weights": "geometric"}],
        "remark2i_phi_zk": [{"k": 1}, {"k": 2}, {"k": 3}],
        "psi_bohr_power": [{"p": 1.0, "weights": "geometric"}, {"p": 0.5, "weights": "harmonic"},
                     {"p": 3.0, "weights": "geometric"}],
    }
    if case_id not in extra:
        raise DomainError(f"unknown equality case {case_id!r}")
    choices = extra[case_id]
    return [dict(choices[i % len(choices)], a=float(a), r=float(r))
            for i, (a, r) in enumerate(zip(a_values, r_values))]


# targeted checks --------------------------------------------------------------------------

def corollary2_biconditional(samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED, r: float = THIRD,
                             low_a0: float = 0.4, theta_samples: int = DEFAULT_THETA_SAMPLES) -> dict:
    """The a0^2-variant at r = 1/3: holds for a0 in [1/2, 1), fails for a0 = low_a0.

    Class samples are moved into the admissible range by a0 -> (1 + a0)/2.
    """
    cl = claim("corollary2b")
    specs = [ex.psi(a) for a in A_GRID if a >= 0.5]
    for i in range(samples):
        base = ex.sample_spec("P", seed + i, 1 + i % 8)
        specs.append(replace(base, a0=0.5 + 0.5 * base.a0, tag=base.tag + "[a0 shifted]"))
    grid = np.array([r])
    worst = -math.inf
    for spec in specs:
        ev = cl.evaluate(_realized(spec, r), {}, grid, theta_samples)
        worst = max(worst, float(ev.excess[0] - ev.budget[0]))
    low = cl.evaluate(_realized(ex.psi(low_a0), r), {}, grid, theta_samples)
    low_gap = float(low.excess[0] - low.budget[0])
    return {"r": r, "functions": len(specs), "max_violation_admissible": worst,
            "holds_admissible": worst <= DEFAULT_TOL, "low_a0": low_a0, "low_violation": low_gap,
            "low_lhs": float(low.lhs[0]), "fails_low": low_gap > WITNESS_GAP}


def theorem4_lambda_check(lam: float = 0.9, a: float = 0.999999) -> dict:
    """D_lambda at r = 1/(5 - 2a) for psi_a, evaluated with a negligible tail."""
    rho = 1.0 / (5.0 - 2.0 * a)
    f = ex.realize(ex.with_order(ex.psi(a), 80), rho)
    e = d_lambda_excess(f, lam, rho)
    L = float(theorem4_L(lam, a))
    predicted = (1.0 - a) * L / (4.0 * (2.0 - a) ** 2 * (3.0 - a) ** 2 * (1.0 + a))
    return {"lambda": lam, "a": a, "rho": rho, "excess": float(e.value), "budget": float(e.budget),
            "L": L, "predicted_excess": predicted, "exceeds": float(e.value) > float(e.budget)}


def theorem4_grid_check(lam: float = 8.0 / 9.0, a_values=None) -> dict:
    """max over the a0-grid of D_lambda(rho(a0)) - 1 for psi_a0 (should be <= 0)."""
    a_values = A_GRID if a_values is None else tuple(a_values)
    worst = -math.inf
    for a in a_values:
        rho = 1.0 / (5.0 - 2.0 * a)
        f = ex.realize(ex.with_order(ex.psi(a), 80), rho)
        e = d_lambda_excess(f, lam, rho)
        worst = max(worst, float(e.value) - float(e.budget))
    return {"lambda": lam, "max_violation": worst, "holds": worst <= DEFAULT_TOL}


def problem2_probe(samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED, r_from: float | None = None,
                   r_to: float = 0.6, step: float = 0.005, theta_samples: int = DEFAULT_THETA_SAMPLES) -> dict:
    """Largest grid radius up to which the refined alternating bound held on the corpus.

    Informational only; nothing is asserted about the true optimal radius.
    """
    start = math.sqrt(2.0) - 1.0 if r_from is None else r_from
    grid = np.arange(start, r_to + 1e-12, step)
    specs = standard_corpus("B", samples, seed)
    cl = claim("corollary6")
    first_fail = None
    for spec in specs:
        ev = cl.evaluate(_realized(spec, float(grid[-1])), {}, grid, theta_samples)
        bad = np.nonzero(ev.excess - ev.budget > DEFAULT_TOL)[0]
        if bad.size:
            idx = int(bad[0])
            first_fail = idx if first_fail is None else min(first_fail, idx)
    if first_fail is None:
        largest = float(grid[-1])
    elif first_fail == 0:
        largest = None
    else:
        largest = float(grid[first_fail - 1])
    return {"normative": False, "grid": [float(grid[0]), float(grid[-1]), step],
            "largest_holding_r": largest, "functions": len(specs)}
