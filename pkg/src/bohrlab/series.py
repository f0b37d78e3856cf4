"""Truncated power series carrying a rigorous geometric tail bound."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from bohrlab import _kernels
from bohrlab.errors import DomainError, SupportError

DEFAULT_ORDER = 256
MAX_ORDER = 8192

# ratio used when exact (zero-tail) data has to absorb dropped coefficients
_FALLBACK_RATIO = 0.5


@dataclass(frozen=True)
class TailBound:
    """|a_n| <= magnitude * ratio**n for every n past the stored order.

    ``ratio == 1`` is the unit-ratio case used by series with bounded but
    non-decaying coefficients; its tail is finite only for r < 1.
    """

    magnitude: float = 0.0
    ratio: float = 0.0

    def __post_init__(self):
        c, rho = float(self.magnitude), float(self.ratio)
        if not (math.isfinite(c) and c >= 0.0):
            raise DomainError(f"tail magnitude must be finite and >= 0, got {c}")
        if not (0.0 <= rho <= 1.0):
            raise DomainError(f"tail ratio must lie in [0, 1], got {rho}")
        if c == 0.0 or rho == 0.0:
            c, rho = 0.0, 0.0
        object.__setattr__(self, "magnitude", c)
        object.__setattr__(self, "ratio", rho)

    @property
    def is_zero(self) -> bool:
        return self.magnitude == 0.0

    def error(self, order: int, r):
        """C (rho r)^(N+1) / (1 - rho r), vectorized over ``r``."""
        r = np.asarray(r, dtype=float)
        if self.is_zero:
            return np.zeros_like(r)[()] if r.ndim == 0 else np.zeros_like(r)
        x = self.ratio * r
        if np.any(x >= 1.0):
            raise DomainError("tail bound diverges: ratio * r >= 1")
        return self.magnitude * x ** (order + 1) / (1.0 - x)


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients a_0..a_N plus a tail bound for the omitted part."""

    coeffs: np.ndarray
    tail: TailBound = field(default_factory=TailBound)

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if arr.size == 0:
            raise DomainError("a series needs at least one coefficient")
        if not np.all(np.isfinite(arr)):
            raise DomainError("coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def a0(self) -> complex:
        return complex(self.coeffs[0])

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        return (f"TruncatedSeries(order={self.order}, a0={self.a0:.6g}, "
                f"tail=({self.tail.magnitude:.3g}, {self.tail.ratio:.3g}))")


def evaluate(s: TruncatedSeries, z):
    """Partial sum at ``z`` (scalar or array); requires |z| < 1."""
    z_arr = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(z_arr) >= 1.0):
        raise DomainError("evaluation point must satisfy |z| < 1")
    out = _kernels.horner(s.coeffs, z_arr.reshape(-1)).reshape(z_arr.shape)
    return complex(out) if out.ndim == 0 else out


def tail_error(s: TruncatedSeries, r):
    """Bound on both |sum_{n>N} a_n z^n| and sum_{n>N} |a_n| r^n at |z| = r."""
    r_arr = np.asarray(r, dtype=float)
    if np.any((r_arr < 0.0) | (r_arr >= 1.0)):
        raise DomainError("radius must lie in [0, 1)")
    out = s.tail.error(s.order, r_arr)
    return float(out) if np.ndim(out) == 0 else out


def square_tail_error(s: TruncatedSeries, r):
    """Bound on sum_{n>N} |a_n|^2 r^(2n)."""
    r = np.asarray(r, dtype=float)
    if s.tail.is_zero:
        out = np.zeros_like(r)
    else:
        x = (s.tail.ratio * r) ** 2
        out = s.tail.magnitude ** 2 * x ** (s.order + 1) / (1.0 - x)
    return float(out) if out.ndim == 0 else out


def area_tail_error(s: TruncatedSeries, r):
    """Bound on sum_{n>N} n |a_n|^2 r^(2n)."""
    r = np.asarray(r, dtype=float)
    if s.tail.is_zero:
        out = np.zeros_like(r)
    else:
        x = (s.tail.ratio * r) ** 2
        n1 = s.order + 1
        out = s.tail.magnitude ** 2 * (n1 * x ** n1 / (1.0 - x) + x ** (n1 + 1) / (1.0 - x) ** 2)
    return float(out) if out.ndim == 0 else out


def _log_abs(c: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.abs(c))


def _absorb(tail: TailBound, dropped: np.ndarray, first_index: int) -> TailBound:
    """Widen ``tail`` so it also covers explicit coefficients being dropped."""
    nz = np.abs(dropped) > 0
    if not np.any(nz):
        return tail
    rho = tail.ratio if tail.ratio > 0 else _FALLBACK_RATIO
    idx = first_index + np.arange(dropped.size)
    logs = _log_abs(dropped[nz]) - idx[nz] * math.log(rho)
    log_c = float(np.max(logs))
    if tail.magnitude > 0:
        log_c = max(log_c, math.log(tail.magnitude))
    if log_c > 700:
        raise OverflowError("tail bound overflows; increase the output order")
    return TailBound(math.exp(log_c) * (1 + 1e-12), rho)


def _fit(coeffs: np.ndarray, tail: TailBound, n_out: int) -> TruncatedSeries:
    if n_out < 0:
        raise DomainError("output order must be >= 0")
    if coeffs.size > n_out + 1:
        tail = _absorb(tail, coeffs[n_out + 1:], n_out + 1)
        coeffs = coeffs[: n_out + 1]
    elif coeffs.size < n_out + 1:
        # coefficients between the old and new order are only known through
        # the tail bound, so padding with zeros would lose information
        n_out = coeffs.size - 1
    return TruncatedSeries(coeffs, tail)


def _known_order(*parts: TruncatedSeries, exact_order: int) -> int:
    """Highest index whose coefficient is exactly known for every part."""
    tailed = [s.order for s in parts if not s.tail.is_zero]
    return min(tailed) if tailed else exact_order


def _padded(c: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros(size, dtype=np.complex128)
    out[: min(size, c.size)] = c[:size]
    return out


def add(a: TruncatedSeries, b: TruncatedSeries, n_out: int | None = None) -> TruncatedSeries:
    """Coefficientwise sum, exact up to the shorter order of the tailed inputs."""
    n = _known_order(a, b, exact_order=max(a.order, b.order))
    if n_out is None:
        n_out = n
    coeffs = _padded(a.coeffs, n + 1) + _padded(b.coeffs, n + 1)
    # past min order, the longer series' explicit entries are covered by
    # folding them into its own tail first
    ta = _absorb(a.tail, a.coeffs[n + 1:], n + 1)
    tb = _absorb(b.tail, b.coeffs[n + 1:], n + 1)
    if ta.is_zero:
        tail = tb
    elif tb.is_zero:
        tail = ta
    else:
        rho = max(ta.ratio, tb.ratio)
        tail = TailBound(ta.magnitude + tb.magnitude, rho)
    return _fit(coeffs, tail, n_out)


def scale(a: TruncatedSeries, c: complex) -> TruncatedSeries:
    return TruncatedSeries(a.coeffs * c, TailBound(a.tail.magnitude * abs(c), a.tail.ratio))


def _log_weighted_sum(s: TruncatedSeries, rho: float) -> float:
    """log of sum_n alpha_n rho^-n, alpha the explicit-or-tail majorant of s."""
    idx = np.arange(s.coeffs.size)
    logs = _log_abs(s.coeffs) - idx * math.log(rho)
    terms = logs[np.isfinite(logs)]
    if not s.tail.is_zero:
        q = s.tail.ratio / rho
        tail_log = math.log(s.tail.magnitude) + (s.order + 1) * math.log(q) - math.log1p(-q)
        terms = np.append(terms, tail_log)
    if terms.size == 0:
        return -math.inf
    top = float(np.max(terms))
    return top + math.log(float(np.sum(np.exp(terms - top))))


def _log_weighted_max(s: TruncatedSeries, rho: float) -> float:
    """log of sup_n beta_n rho^-n; requires tail ratio <= rho."""
    idx = np.arange(s.coeffs.size)
    logs = _log_abs(s.coeffs) - idx * math.log(rho)
    top = float(np.max(logs))
    if not s.tail.is_zero:
        q = s.tail.ratio / rho
        top = max(top, math.log(s.tail.magnitude) + (s.order + 1) * math.log(q))
    return top


def cauchy_product(a: TruncatedSeries, b: TruncatedSeries, n_out: int | None = None) -> TruncatedSeries:
    """Product series truncated at ``n_out`` (default: the last exact index).

    Tail bound: with rho at least the larger input ratio, every product
    coefficient obeys |c_n| <= (sum_k alpha_k rho^-k)(sup_j beta_j rho^-j) rho^n
    where alpha, beta majorize the factors; the summed factor must decay
    strictly faster than rho.
    """
    n_known = _known_order(a, b, exact_order=a.order + b.order)
    if n_out is None:
        n_out = n_known
    full = np.convolve(a.coeffs, b.coeffs)
    if a.tail.is_zero and b.tail.is_zero:
        return _fit(full, TailBound(), n_out)
    if n_out > n_known:
        n_out = n_known
    summed, bounded = (a, b) if (a.tail.is_zero or (not b.tail.is_zero and a.tail.ratio < b.tail.ratio)) else (b, a)
    rho = max(a.tail.ratio, b.tail.ratio)
    if not summed.tail.is_zero and summed.tail.ratio >= rho:
        if rho >= 1.0:
            raise DomainError("product of two unit-ratio series has no geometric tail bound")
        rho = math.sqrt(rho)
    log_c = _log_weighted_sum(summed, rho) + _log_weighted_max(bounded, rho)
    if log_c > 700:
        raise OverflowError("product tail bound overflows")
    tail = TailBound(math.exp(log_c) * (1 + 1e-12), rho)
    return TruncatedSeries(full[: n_out + 1], tail)


def combine(a: TruncatedSeries, b: TruncatedSeries | None, op: str, n_out: int | None = None,
            factor: complex = 1.0) -> TruncatedSeries:
    """Dispatch to ``add``, ``scale`` or ``cauchy_product`` by name."""
    if op == "add":
        return add(a, b, n_out)
    if op == "scale":
        out = scale(a, factor)
        return out if n_out is None else _fit(out.coeffs, out.tail, n_out)
    if op == "cauchy_product":
        return cauchy_product(a, b, n_out)
    raise DomainError(f"unknown operation {op!r}")


def compose_lacunary(g: TruncatedSeries, p: int, m: int) -> TruncatedSeries:
    """z^m g(z^p) as a series in z."""
    if p < 1 or m < 0:
        raise DomainError("need p >= 1 and m >= 0")
    coeffs = np.zeros(m + p * g.order + 1, dtype=np.complex128)
    coeffs[m::p] = g.coeffs
    if g.tail.is_zero:
        tail = TailBound()
    else:
        # |a_{np+m}| <= C rho^n = C rho^(-m/p) (rho^(1/p))^(np+m)
        rho = g.tail.ratio ** (1.0 / p)
        tail = TailBound(g.tail.magnitude * g.tail.ratio ** (-m / p), rho)
    return TruncatedSeries(coeffs, tail)


def extract_lacunary(f: TruncatedSeries, p: int, m: int, tol: float = 1e-14) -> TruncatedSeries:
    """Inverse of ``compose_lacunary``: the series g with f = z^m g(z^p)."""
    if p < 1 or m < 0:
        raise DomainError("need p >= 1 and m >= 0")
    if m > f.order:
        raise SupportError(f"series order {f.order} is below the offset m={m}")
    mask = np.ones(f.coeffs.size, dtype=bool)
    mask[m::p] = False
    off = np.abs(f.coeffs[mask])
    if off.size and off.max() > tol:
        k = int(np.argmax(np.abs(f.coeffs) * mask))
        raise SupportError(f"coefficient a_{k} = {f.coeffs[k]:.3g} lies outside the pattern np+{m} (p={p})")
    b = f.coeffs[m::p]
    if f.tail.is_zero:
        tail = TailBound()
    else:
        tail = TailBound(f.tail.magnitude * f.tail.ratio ** m, f.tail.ratio ** p)
    return TruncatedSeries(b, tail)


def order_for(magnitude: float, ratio: float, r: float, tol: float = 1e-12,
              minimum: int = 8, maximum: int = MAX_ORDER) -> int:
    """Smallest order whose geometric tail at radius r is below ``tol``."""
    if magnitude == 0.0 or ratio == 0.0:
        return minimum
    x = ratio * r
    if x >= 1.0:
        return maximum
    if x == 0.0:
        return minimum
    need = (math.log(tol * (1.0 - x)) - math.log(magnitude)) / math.log(x) - 1.0
    return int(min(max(math.ceil(need), minimum), maximum))
