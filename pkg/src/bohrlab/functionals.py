"""Bohr-type functionals of truncated series, each with a truncation budget.

All functions accept a scalar radius or a 1-D array of radii and return
values of the same shape.  ``budget`` bounds the difference between the
computed partial value and the value for the full (untruncated) series.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from bohrlab import _kernels
from bohrlab.errors import DomainError
from bohrlab.series import (TruncatedSeries, area_tail_error, extract_lacunary,
                            square_tail_error, tail_error)
from bohrlab.weights import WeightSequence, parity_case, tabulate

DEFAULT_THETA_SAMPLES = 256


class Estimate(NamedTuple):
    """A computed value with its truncation budget (and maximizing angle)."""

    value: float | np.ndarray
    budget: float | np.ndarray
    theta: float | np.ndarray | None = None

    def __float__(self):
        return float(self.value)


class Sides(NamedTuple):
    lhs: float | np.ndarray
    rhs: float | np.ndarray
    budget: float | np.ndarray
    excess: float | np.ndarray


@dataclass(frozen=True)
class SeriesStats:
    M_f: float | np.ndarray
    M_f0: float | np.ndarray
    A_f: float | np.ndarray
    A_f0: float | np.ndarray
    norm_sq: float | np.ndarray
    norm0_sq: float | np.ndarray
    area_ratio: float | np.ndarray
    tail_budget: float | np.ndarray
    majorant_tail: float | np.ndarray
    square_tail: float | np.ndarray
    area_tail: float | np.ndarray


@dataclass(frozen=True)
class LacunaryParts:
    lhs_even: float | np.ndarray
    rhs_even: float | np.ndarray
    lhs_odd: float | np.ndarray
    rhs_odd: float | np.ndarray
    lhs_all: float | np.ndarray
    rhs_all: float | np.ndarray
    budget: float | np.ndarray


@dataclass(frozen=True)
class AltRefined:
    """Sign-refined alternating functionals for monomial weights.

    ``D_star`` and ``F_star`` exist only when all degrees share one parity.
    """

    A_star: float | np.ndarray
    B_star: float | np.ndarray
    C_star: float | np.ndarray
    D_star: float | np.ndarray | None
    F_star: float | np.ndarray | None
    case: str
    budget: float | np.ndarray


# helpers -------------------------------------------------------------------

def _radius(r) -> tuple[np.ndarray, bool]:
    arr = np.asarray(r, dtype=float)
    if arr.ndim > 1:
        raise DomainError("radius must be a scalar or a 1-D array")
    if np.any(np.isnan(arr)) or np.any((arr < 0.0) | (arr >= 1.0)):
        raise DomainError("radius must lie in [0, 1)")
    return np.atleast_1d(arr), arr.ndim == 0


def _shape(x, scalar: bool):
    if x is None:
        return None
    x = np.asarray(x, dtype=float)
    return float(x.reshape(-1)[0]) if scalar else x


def _powers(x: np.ndarray, n: int) -> np.ndarray:
    """x_i^k on the grid (n+1, len(x))."""
    return x[None, :] ** np.arange(n + 1)[:, None]


def _real_a0(f: TruncatedSeries) -> float:
    a0 = f.coeffs[0]
    if abs(a0.imag) > 1e-14 or a0.real < 0.0 or a0.real >= 1.0:
        raise DomainError(f"a_0 must be real in [0, 1), got {a0}")
    return float(a0.real)


def circle_values(f: TruncatedSeries, radii: np.ndarray, theta_samples: int) -> np.ndarray:
    """f(r e^{i theta}) on equispaced angles starting at theta = 0."""
    if theta_samples < 1:
        raise DomainError("theta_samples must be positive")
    return _kernels.circle_values(f.coeffs, np.ascontiguousarray(radii, dtype=float), int(theta_samples))


def _argmax_rows(vals: np.ndarray, theta_samples: int) -> tuple[np.ndarray, np.ndarray]:
    j = np.argmax(vals, axis=1)
    return vals[np.arange(vals.shape[0]), j], 2.0 * np.pi * j / theta_samples


# basic statistics ----------------------------------------------------------

def series_stats(f: TruncatedSeries, r) -> SeriesStats:
    """Majorant, alternating, norm and area sums at radius r."""
    r1, scalar = _radius(r)
    mod = np.abs(f.coeffs)
    n = f.order
    P = _powers(r1, n)
    P2 = _powers(r1 * r1, n)
    idx = np.arange(n + 1)
    sign = np.where(idx % 2 == 0, 1.0, -1.0)
    a0 = mod[0]
    M_f0 = mod[1:] @ P[1:]
    A_f0 = (sign[1:] * mod[1:]) @ P[1:]
    norm0 = (mod[1:] ** 2) @ P2[1:]
    area = (idx[1:] * mod[1:] ** 2) @ P2[1:]
    mt, st, at = tail_error(f, r1), square_tail_error(f, r1), area_tail_error(f, r1)
    s = lambda x: _shape(x, scalar)
    return SeriesStats(M_f=s(a0 + M_f0), M_f0=s(M_f0), A_f=s(a0 + A_f0), A_f0=s(A_f0),
                       norm_sq=s(a0 * a0 + norm0), norm0_sq=s(norm0), area_ratio=s(area),
                       tail_budget=s(np.maximum(np.maximum(mt, st), at)),
                       majorant_tail=s(mt), square_tail=s(st), area_tail=s(at))


def weighted_sum(f: TruncatedSeries, w: WeightSequence, N_start: int, r) -> Estimate:
    """B_N(f, zeta, r) = sum_{n >= N} |a_n| zeta_n(r)."""
    if N_start < 0:
        raise DomainError("N_start must be >= 0")
    r1, scalar = _radius(r)
    n = f.order
    mod = np.abs(f.coeffs)
    value = np.zeros_like(r1)
    if N_start <= n:
        tab = tabulate(w, r1, n)
        value = mod[N_start:] @ tab.zeta[N_start:]
    budget = w.sup_coefficient * np.asarray(tail_error(f, r1))
    return Estimate(_shape(value, scalar), _shape(budget, scalar))


def _g_parts(f: TruncatedSeries, w: WeightSequence, r1: np.ndarray):
    """(B_1, G, Phi_1, budget of B_1 + G) on the grid r1."""
    n = f.order
    mod = np.abs(f.coeffs)
    tab = tabulate(w, r1, 2 * n + 2)
    b1 = mod[1:] @ tab.zeta[1:n + 1]
    ev = tab.zeta[2:2 * n + 1:2]             # zeta_{2k}, k = 1..n
    tail_odd = tab.suffix(1)[3:2 * n + 2:2]   # Phi_{2k+1}, k = 1..n
    sq = mod[1:] ** 2
    g = sq @ (ev / (1.0 + mod[0])) + sq @ tail_odd
    k = w.sup_coefficient
    budget = k * np.asarray(tail_error(f, r1)) + k * np.asarray(square_tail_error(f, r1)) / (1.0 - r1)
    return b1, g, tab.phi(1), budget


def refinement_G(f: TruncatedSeries, w: WeightSequence, r) -> Estimate:
    """G(f_0, zeta, r) = sum_{n>=1} |a_n|^2 (zeta_2n/(1+|a_0|) + Phi_{2n+1})."""
    r1, scalar = _radius(r)
    _, g, _, _ = _g_parts(f, w, r1)
    k = w.sup_coefficient
    budget = k * np.asarray(square_tail_error(f, r1)) / (1.0 - r1)
    return Estimate(_shape(g, scalar), _shape(budget, scalar))


def lemmaG_sides(f: TruncatedSeries, w: WeightSequence, p: float, r) -> Sides:
    """|a0|^p zeta_0 + B_1 + G  versus  |a0|^p zeta_0 + (1 - |a0|^2) Phi_1."""
    if not 0.0 < p <= 2.0:
        raise DomainError("p must lie in (0, 2]")
    r1, scalar = _radius(r)
    a0 = abs(f.coeffs[0])
    b1, g, phi1, budget = _g_parts(f, w, r1)
    z0 = tabulate(w, r1, 2 * f.order + 2).zeta[0]
    common = a0 ** p * z0
    excess = (b1 + g) - (1.0 - a0 * a0) * phi1
    s = lambda x: _shape(x, scalar)
    return Sides(s(common + b1 + g), s(common + (1.0 - a0 * a0) * phi1), s(budget), s(excess))


def bohr_power(f: TruncatedSeries, w: WeightSequence, p: float, r) -> Estimate:
    """a_0^p zeta_0(r) + B_1(f, zeta, r) for real a_0 in [0, 1)."""
    if p <= 0:
        raise DomainError("p must be positive")
    a0 = _real_a0(f)
    r1, scalar = _radius(r)
    b1 = weighted_sum(f, w, 1, r1)
    z0 = tabulate(w, r1, f.order).zeta[0]
    return Estimate(_shape(a0 ** p * z0 + b1.value, scalar), _shape(b1.budget, scalar))


def circle_deviation_power(f: TruncatedSeries, m: int, q: float, r, theta_samples: int = DEFAULT_THETA_SAMPLES) -> Estimate:
    """max over the theta grid of |f((r e^{i theta})^m) - a_0|^q."""
    r1, scalar = _radius(r)
    rm = r1 ** m
    vals = np.abs(circle_values(f, rm, theta_samples) - f.coeffs[0])
    top, ang = _argmax_rows(vals, theta_samples)
    e = np.asarray(tail_error(f, rm))
    budget = (top + e) ** q - top ** q
    return Estimate(_shape(top ** q, scalar), _shape(budget, scalar), _shape(ang / m, scalar))


def rogosinski_E(f: TruncatedSeries, w: WeightSequence, p: float, q: float, m: int, r,
                 theta_samples: int = DEFAULT_THETA_SAMPLES) -> Estimate:
    """a_0^p zeta_0 + B_1 + sup_theta |f(z^m) - a_0|^q."""
    if q < 1 or m < 1:
        raise DomainError("need q >= 1 and m >= 1")
    base = bohr_power(f, w, p, r)
    dev = circle_deviation_power(f, m, q, r, theta_samples)
    return Estimate(base.value + dev.value, base.budget + dev.budget, dev.theta)


def _d_lambda_parts(f: TruncatedSeries, lam: float, r1: np.ndarray):
    a0 = _real_a0(f)
    st = series_stats(f, r1)
    coef = 1.0 / (1.0 + a0) + r1 / (1.0 - r1)
    rest = st.M_f0 + coef * st.norm0_sq + lam * st.area_ratio
    budget = st.majorant_tail + coef * st.square_tail + lam * st.area_tail
    return a0, rest, budget


def d_lambda(f: TruncatedSeries, lam: float, r) -> Estimate:
    """a_0 + M_f0 + (1/(1+a_0) + r/(1-r)) ||f_0||^2 + lam * area ratio."""
    if lam < 0:
        raise DomainError("lambda must be >= 0")
    r1, scalar = _radius(r)
    a0, rest, budget = _d_lambda_parts(f, lam, r1)
    return Estimate(_shape(a0 + rest, scalar), _shape(budget, scalar))


def d_lambda_excess(f: TruncatedSeries, lam: float, r) -> Estimate:
    """D_lambda(r) - 1 evaluated as (a_0 - 1) + rest to avoid cancellation."""
    r1, scalar = _radius(r)
    a0, rest, budget = _d_lambda_parts(f, lam, r1)
    return Estimate(_shape((a0 - 1.0) + rest, scalar), _shape(budget, scalar))


# lacunary functionals -------------------------------------------------------

def lemma2_A(f: TruncatedSeries, p: int, m: int, r) -> Estimate:
    """sum |a_{2np+m}| r^{2np} + (1/(1+|a_m|) + r^2p/(1-r^2p)) sum |a_{np+m}|^2 r^{2np}."""
    r1, scalar = _radius(r)
    g = extract_lacunary(f, p, m)
    b = np.abs(g.coeffs)
    x = r1 ** p
    P = _powers(x, g.order)
    P2 = _powers(x * x, g.order)
    even = b[2::2] @ P[2::2]
    coef = 1.0 / (1.0 + b[0]) + x * x / (1.0 - x * x)
    value = even + coef * ((b[1:] ** 2) @ P2[1:])
    budget = np.asarray(tail_error(g, x)) + coef * np.asarray(square_tail_error(g, x))
    return Estimate(_shape(value, scalar), _shape(budget, scalar))


def lemma2_lhs(f: TruncatedSeries, p: int, m: int, r, theta_samples: int = DEFAULT_THETA_SAMPLES) -> Estimate:
    """max_theta |f(r e^{i theta})| + r^m A(r)."""
    if p < 1 or m < 0:
        raise DomainError("need p >= 1 and m >= 0")
    r1, scalar = _radius(r)
    A = lemma2_A(f, p, m, r1)
    top, ang = _argmax_rows(np.abs(circle_values(f, r1, theta_samples)), theta_samples)
    value = top + r1 ** m * A.value
    budget = np.asarray(tail_error(f, r1)) + r1 ** m * A.budget
    return Estimate(_shape(value, scalar), _shape(budget, scalar), _shape(ang, scalar))


def _lacunary_budget(g: TruncatedSeries, w: WeightSequence, x: np.ndarray) -> np.ndarray:
    k = w.sup_coefficient
    return k * np.asarray(tail_error(g, x)) + k * np.asarray(square_tail_error(g, x)) / (1.0 - x)


def lemma4_sides(f: TruncatedSeries, w: WeightSequence, p: int, m: int, r) -> LacunaryParts:
    """Even part, odd part and their combination for f = z^m g(z^p)."""
    if p < 1 or not 0 <= m <= p:
        raise DomainError("need p >= 1 and 0 <= m <= p")
    r1, scalar = _radius(r)
    g = extract_lacunary(f, p, m)
    b = np.abs(g.coeffs)
    n = g.order
    x = r1 ** p
    tab = tabulate(w, x, 2 * n + 2)
    Z = tab.zeta
    S1 = tab.suffix(1)
    S2 = tab.suffix(2)
    sq = b ** 2
    k = np.arange(n + 1)
    lhs_even = b[0::2] @ Z[0:n + 1:2] + sq[1:] @ (Z[2 * k[1:]] / (1.0 + b[0]) + S2[2 * k[1:] + 2])
    rhs_even = b[0] * Z[0] + (1.0 - b[0] ** 2) * S2[2]
    lhs_odd = b[1::2] @ Z[1:n + 1:2] + sq @ S2[2 * k + 1]
    rhs_odd = S2[1]
    lhs_all = b[1:] @ Z[1:n + 1] + sq[1:] @ (Z[2 * k[1:]] / (1.0 + b[0]) + S1[2 * k[1:] + 1])
    rhs_all = (1.0 - b[0] ** 2) * S1[1]
    s = lambda v: _shape(v, scalar)
    return LacunaryParts(s(lhs_even), s(rhs_even), s(lhs_odd), s(rhs_odd), s(lhs_all), s(rhs_all),
                       s(_lacunary_budget(g, w, x)))


def alt_refined(f: TruncatedSeries, w: WeightSequence, p: int, m: int, r) -> AltRefined:
    """Sign-refined alternating sums for monomial weights.

    Signs follow the parity of deg(zeta*_m(r) zeta*_n(r^p)); within each parity
    case the factor in front of the square sums is the constant sign of that
    case (odd-indexed degrees for C*, the common parity for D*).
    """
    if p < 1 or not 0 <= m <= p:
        raise DomainError("need p >= 1 and 0 <= m <= p")
    pc = parity_case(w, p, m)
    r1, scalar = _radius(r)
    g = extract_lacunary(f, p, m)
    b = np.abs(g.coeffs)
    n = g.order
    x = r1 ** p
    tab = tabulate(w, x, 2 * n + 2)
    Z = tab.zeta
    S1 = tab.suffix(1)
    S2 = tab.suffix(2)
    zm = w.values(m, r1)
    idx = np.arange(1, n + 1)
    deg = (w.degrees[m] + p * w._tau[idx]) % 2
    sign = np.where(deg == 0, 1.0, -1.0)
    B = (sign * b[1:]) @ Z[1:n + 1]
    sq = b ** 2
    k = np.arange(n + 1)
    C = zm * (B + pc.odd_sign * (sq @ S2[2 * k + 1]))
    D = F = None
    if pc.case == "II":
        D = zm * (B + pc.common_sign * (sq[1:] @ (Z[2 * idx] / (1.0 + b[0]) + S1[2 * idx + 1])))
        lead = -1.0 if w.degrees[m] % 2 else 1.0
        F = lead * zm * b[0] + D
    budget = zm * _lacunary_budget(g, w, x)
    s = lambda v: _shape(v, scalar)
    return AltRefined(s(zm * B), s(B), s(C), s(D), s(F), pc.case, s(budget))


def alternating_lacunary(f: TruncatedSeries, p: int, m: int, r) -> Estimate:
    """A_{f_m}(r) = sum_{n>=1} (-1)^{np+m} |a_{np+m}| r^{np+m}."""
    r1, scalar = _radius(r)
    g = extract_lacunary(f, p, m)
    b = np.abs(g.coeffs)
    idx = np.arange(1, g.order + 1)
    sign = np.where((idx * p + m) % 2 == 0, 1.0, -1.0)
    x = r1 ** p
    value = r1 ** m * ((sign * b[1:]) @ _powers(x, g.order)[1:])
    budget = r1 ** m * np.asarray(tail_error(g, x))
    return Estimate(_shape(value, scalar), _shape(budget, scalar))


def theorem6_lhs(f: TruncatedSeries, p: int, m: int, r, theta_samples: int = DEFAULT_THETA_SAMPLES,
                 variant: str = "abs_f") -> Estimate:
    """Refined alternating bound with either |f(z)| or r^{m+p}/(1+r^p) in front."""
    if p < 1 or p % 2 == 0 or m < 0 or m % 2 == 1:
        raise DomainError("need p odd and m even")
    if variant not in ("abs_f", "fixed_term"):
        raise DomainError(f"unknown variant {variant!r}")
    r1, scalar = _radius(r)
    g = extract_lacunary(f, p, m)
    b = np.abs(g.coeffs)
    x = r1 ** p
    alt = alternating_lacunary(f, p, m, r1)
    coef = 1.0 / (1.0 + b[0]) + x * x / (1.0 - x * x)
    quad = r1 ** m * coef * ((b[1:] ** 2) @ _powers(x * x, g.order)[1:])
    E = alt.value + quad   # (-1)^m = 1 for even m
    budget = alt.budget + r1 ** m * coef * np.asarray(square_tail_error(g, x))
    if variant == "fixed_term":
        value = np.abs(r1 ** (m + p) / (1.0 + x) + E)
        return Estimate(_shape(value, scalar), _shape(budget, scalar))
    mods = np.abs(circle_values(f, r1, theta_samples))
    top, ang = _argmax_rows(np.abs(mods + E[:, None]), theta_samples)
    budget = budget + np.asarray(tail_error(f, r1))
    return Estimate(_shape(top, scalar), _shape(budget, scalar), _shape(ang, scalar))
