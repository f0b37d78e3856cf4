"""Extremal test functions and seeded random members of the classes B and P.

Every producer returns a ``TruncatedSeries`` whose tail bound is valid for
all omitted coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from bohrlab.errors import DomainError
from bohrlab.series import (DEFAULT_ORDER, MAX_ORDER, TailBound, TruncatedSeries,
                            compose_lacunary, order_for)

SPEC_KINDS = ("phi", "psi", "lacunary_mobius", "monomial", "blaschke", "herglotz", "lacunary")
TAIL_TARGET = 1e-12


@dataclass(frozen=True)
class FunctionSpec:
    """Declarative recipe for a test function.

    Only the fields relevant to ``kind`` are used.  ``kind == "lacunary"``
    wraps another spec g and stands for z^m g(z^p).
    """

    kind: str
    a: float = 0.0
    p: int = 1
    m: int = 0
    sign: str = "+"
    k: int = 0
    zeros: tuple[complex, ...] = ()
    rotation: complex = 1.0
    scale: float = 1.0
    a0: float = 0.0
    weights: tuple[float, ...] = ()
    angles: tuple[float, ...] = ()
    inner: "FunctionSpec | None" = None
    order: int | None = None
    tag: str = ""

    def __post_init__(self):
        if self.kind not in SPEC_KINDS:
            raise DomainError(f"unknown function kind {self.kind!r}")
        if self.kind in ("phi", "psi", "lacunary_mobius") and not 0.0 <= self.a < 1.0:
            raise DomainError(f"parameter a must lie in [0, 1), got {self.a}")
        if self.kind in ("lacunary_mobius", "lacunary") and (self.p < 1 or self.m < 0):
            raise DomainError("need p >= 1 and m >= 0")
        if self.kind == "lacunary_mobius" and self.sign not in "+-":
            raise DomainError("sign must be '+' or '-'")
        if self.kind == "monomial" and self.k < 0:
            raise DomainError("monomial degree must be >= 0")
        if self.kind == "blaschke":
            if any(abs(z) >= 1.0 for z in self.zeros):
                raise DomainError("Blaschke zeros must lie strictly inside the unit disk")
            if abs(abs(self.rotation) - 1.0) > 1e-12:
                raise DomainError("rotation must be unimodular")
            if not 0.0 < self.scale <= 1.0:
                raise DomainError("scale must lie in (0, 1]")
        if self.kind == "herglotz":
            if not 0.0 <= self.a0 < 1.0:
                raise DomainError("herglotz a0 must lie in [0, 1)")
            if len(self.weights) != len(self.angles) or not self.weights:
                raise DomainError("herglotz needs matching non-empty weights and angles")
            if min(self.weights) < 0 or abs(sum(self.weights) - 1.0) > 1e-12:
                raise DomainError("herglotz weights must be nonnegative and sum to 1")
        if self.kind == "lacunary" and self.inner is None:
            raise DomainError("lacunary spec needs an inner function")

    @property
    def label(self) -> str:
        if self.tag:
            return self.tag
        if self.kind in ("phi", "psi"):
            return f"{self.kind}:a={self.a:g}"
        if self.kind == "lacunary_mobius":
            return f"lac:a={self.a:g},p={self.p},m={self.m},sign={self.sign}"
        if self.kind == "monomial":
            return f"mono:k={self.k}"
        if self.kind == "blaschke":
            return f"blaschke:deg={len(self.zeros)}"
        if self.kind == "herglotz":
            return f"herglotz:a0={self.a0:g},terms={len(self.weights)}"
        return f"z^{self.m}*({self.inner.label})(z^{self.p})"


def phi(a: float, **kw) -> FunctionSpec:
    """(a - z)/(1 - a z)."""
    return FunctionSpec("phi", a=a, **kw)


def psi(a: float, **kw) -> FunctionSpec:
    """a - 2(1 - a) z/(1 - z)."""
    return FunctionSpec("psi", a=a, **kw)


def lacunary_mobius(a: float, p: int, m: int, sign: str = "+", **kw) -> FunctionSpec:
    """z^m (a + s z^p)/(1 + s a z^p) with s = +1 or -1."""
    return FunctionSpec("lacunary_mobius", a=a, p=p, m=m, sign=sign, **kw)


def monomial(k: int, **kw) -> FunctionSpec:
    return FunctionSpec("monomial", k=k, **kw)


def blaschke(zeros, rotation: complex = 1.0, scale: float = 1.0, **kw) -> FunctionSpec:
    return FunctionSpec("blaschke", zeros=tuple(complex(z) for z in zeros),
                        rotation=complex(rotation), scale=float(scale), **kw)


def herglotz(a0: float, weights, angles, **kw) -> FunctionSpec:
    return FunctionSpec("herglotz", a0=float(a0), weights=tuple(float(w) for w in weights),
                        angles=tuple(float(t) for t in angles), **kw)


def lacunary(inner: FunctionSpec, p: int, m: int, **kw) -> FunctionSpec:
    return FunctionSpec("lacunary", inner=inner, p=p, m=m, **kw)


# realization ------------------------------------------------------------

def _choose_order(spec: FunctionSpec, magnitude: float, ratio: float, r_max: float | None) -> int:
    if spec.order is not None:
        return int(spec.order)
    if r_max is None:
        return DEFAULT_ORDER
    return order_for(magnitude, ratio, r_max, TAIL_TARGET)


def _mobius_tail(a: float) -> TailBound:
    """Tail of the Mobius coefficients (1 - a^2) a^(n-1), valid past index 1.

    For tiny a the magnitude (1 - a^2)/a overflows; a^(n-1) <= sqrt(a)^n
    once n >= 2 gives a finite bound instead.
    """
    if a >= 1e-100:
        return TailBound((1.0 - a * a) / a, a)
    return TailBound(1.0 - a * a, math.sqrt(a))


def _mobius(a: float, n: int) -> np.ndarray:
    """Coefficients of (a - z)/(1 - a z) up to z^n."""
    c = np.empty(n + 1, dtype=np.complex128)
    c[0] = a
    c[1:] = -(1.0 - a * a) * a ** np.arange(n)
    return c


def _realize_blaschke(spec: FunctionSpec, r_max: float | None) -> TruncatedSeries:
    zeros = np.array(spec.zeros, dtype=np.complex128)
    at_origin = int(np.sum(zeros == 0))
    zeros = zeros[zeros != 0]
    factor = spec.rotation * spec.scale * (-1) ** at_origin
    if zeros.size == 0:
        coeffs = np.zeros(at_origin + 1, dtype=np.complex128)
        coeffs[at_origin] = factor
        return TruncatedSeries(coeffs)
    mods = np.abs(zeros)
    big = float(mods.max())
    # Cauchy estimate on |z| = s < 1/max|alpha|: |a_n| <= max_{|z|=s}|B| s^-n,
    # and each factor is bounded there by (|alpha| + s)/(1 - |alpha| s).
    best = None
    r_ref = 0.9 if r_max is None else r_max
    for t in np.linspace(0.02, 0.98, 49):
        s = 1.0 + t * (1.0 / big - 1.0)
        log_c = float(np.sum(np.log((mods + s) / (1.0 - mods * s))))
        if log_c > 700:
            continue
        c = math.exp(log_c) * spec.scale
        n = order_for(c, 1.0 / s, r_ref, TAIL_TARGET)
        key = (n, c)
        if best is None or key < best[0]:
            best = (key, c, 1.0 / s)
    (_, c, rho) = best
    n = spec.order if spec.order is not None else (best[0][0] if r_max is not None else max(best[0][0], DEFAULT_ORDER))
    n = int(min(n, MAX_ORDER))
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    for alpha in zeros:
        # (alpha - z)/(1 - conj(alpha) z) = alpha - (1 - |alpha|^2) sum conj(alpha)^(k-1) z^k
        fac = np.empty(n + 1, dtype=np.complex128)
        fac[0] = alpha
        fac[1:] = -(1.0 - abs(alpha) ** 2) * np.conj(alpha) ** np.arange(n)
        coeffs = np.convolve(coeffs, fac)[: n + 1]
    if at_origin:
        coeffs = np.concatenate([np.zeros(at_origin), coeffs[: n + 1 - at_origin]])
        # the factor z^k contributes s^k to the maximum on |z| = s
        c *= rho ** (-at_origin)
    return TruncatedSeries(coeffs * factor, TailBound(c * (1 + 1e-12), rho))


def realize(spec: FunctionSpec, r_max: float | None = None) -> TruncatedSeries:
    """Build the truncated series for ``spec``.

    With ``r_max`` given (and no explicit order) the order is chosen so the
    tail bound at r_max is below 1e-12 where the order cap allows it.
    """
    kind = spec.kind
    if kind == "phi":
        a = spec.a
        if a == 0.0:
            return TruncatedSeries([0.0, -1.0])
        tail = _mobius_tail(a)
        n = _choose_order(spec, tail.magnitude, tail.ratio, r_max)
        return TruncatedSeries(_mobius(a, n), tail)
    if kind == "psi":
        c = 2.0 * (1.0 - spec.a)
        n = _choose_order(spec, c, 1.0, r_max)
        coeffs = np.full(n + 1, -c, dtype=np.complex128)
        coeffs[0] = spec.a
        return TruncatedSeries(coeffs, TailBound(c, 1.0))
    if kind == "lacunary_mobius":
        a, p, m = spec.a, spec.p, spec.m
        s = 1.0 if spec.sign == "+" else -1.0
        if a == 0.0:
            coeffs = np.zeros(p + m + 1, dtype=np.complex128)
            coeffs[p + m] = s
            return TruncatedSeries(coeffs)
        # g(w) = (a + s w)/(1 + s a w) has b_0 = a, b_n = s^n (1 - a^2)(-1)^(n-1) a^(n-1)
        tail = _mobius_tail(a)
        if spec.order is not None or r_max is None:
            n_g = max((_choose_order(spec, 0.0, 0.0, r_max) - m) // p, 1)
        else:
            # the composed tail at r is at most r^m times the inner tail at r^p
            n_g = min(max(order_for(tail.magnitude, tail.ratio, r_max ** p, TAIL_TARGET), 1),
                      max((MAX_ORDER - m) // p, 1))
        idx = np.arange(1, n_g + 1)
        b = np.empty(n_g + 1, dtype=np.complex128)
        b[0] = a
        b[1:] = s ** idx * (1.0 - a * a) * (-1.0) ** (idx - 1) * a ** (idx - 1)
        return compose_lacunary(TruncatedSeries(b, tail), p, m)
    if kind == "monomial":
        coeffs = np.zeros(spec.k + 1, dtype=np.complex128)
        coeffs[spec.k] = 1.0
        return TruncatedSeries(coeffs)
    if kind == "blaschke":
        return _realize_blaschke(spec, r_max)
    if kind == "herglotz":
        c = 2.0 * (1.0 - spec.a0)
        n = _choose_order(spec, c, 1.0, r_max)
        idx = np.arange(1, n + 1)
        w = np.asarray(spec.weights)
        th = np.asarray(spec.angles)
        coeffs = np.empty(n + 1, dtype=np.complex128)
        coeffs[0] = spec.a0
        coeffs[1:] = -c * (np.exp(1j * np.outer(idx, th)) @ w)
        return TruncatedSeries(coeffs, TailBound(c, 1.0))
    inner_r = None if r_max is None else r_max ** spec.p
    g = realize(spec.inner, inner_r)
    return compose_lacunary(g, spec.p, spec.m)


def closed_form(spec: FunctionSpec, z):
    """Direct evaluation of the function described by ``spec`` (no series)."""
    z = np.asarray(z, dtype=np.complex128)
    kind = spec.kind
    if kind == "phi":
        return (spec.a - z) / (1 - spec.a * z)
    if kind == "psi":
        return spec.a - 2 * (1 - spec.a) * z / (1 - z)
    if kind == "lacunary_mobius":
        s = 1.0 if spec.sign == "+" else -1.0
        w = z ** spec.p
        return z ** spec.m * (spec.a + s * w) / (1 + s * spec.a * w)
    if kind == "monomial":
        return z ** spec.k
    if kind == "blaschke":
        out = np.full(z.shape, spec.rotation * spec.scale, dtype=np.complex128)
        for alpha in spec.zeros:
            out *= (alpha - z) / (1 - np.conj(alpha) * z)
        return out
    if kind == "herglotz":
        u = np.exp(1j * np.asarray(spec.angles))
        kern = (1 + u[None, :] * z.reshape(-1, 1)) / (1 - u[None, :] * z.reshape(-1, 1))
        vals = 1 - (1 - spec.a0) * (kern @ np.asarray(spec.weights))
        return vals.reshape(z.shape)
    return z ** spec.m * closed_form(spec.inner, z ** spec.p)


# sampling ----------------------------------------------------------------

def sample_spec(cls: str, seed: int, complexity: int) -> FunctionSpec:
    """Seeded random member of class "B" (Blaschke) or "P" (Herglotz)."""
    if not 1 <= complexity <= 8:
        raise DomainError("complexity must lie in [1, 8]")
    rng = np.random.default_rng(seed)
    if cls == "B":
        mods = 0.95 * np.sqrt(rng.random(complexity))
        args = rng.uniform(0.0, 2.0 * np.pi, complexity)
        rotation = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        scale = 0.99 if rng.random() < 0.5 else 1.0
        return blaschke(mods * np.exp(1j * args), rotation, scale,
                        tag=f"B[seed={seed},deg={complexity}]")
    if cls == "P":
        a0 = float(rng.random())
        w = rng.dirichlet(np.ones(complexity))
        w = w / w.sum()
        angles = rng.uniform(0.0, 2.0 * np.pi, complexity)
        return herglotz(a0, w, angles, tag=f"P[seed={seed},terms={complexity}]")
    raise DomainError(f"unknown class {cls!r}")


def sample_class(cls: str, seed: int, complexity: int, r_max: float | None = None) -> TruncatedSeries:
    return realize(sample_spec(cls, seed, complexity), r_max)


def with_order(spec: FunctionSpec, order: int) -> FunctionSpec:
    return replace(spec, order=order)


# mini-language -------------------------------------------------------------

def _kv(body: str) -> dict[str, str]:
    out = {}
    for part in filter(None, body.split(",")):
        key, eq, val = part.partition("=")
        if not eq:
            raise DomainError(f"expected key=value, got {part!r}")
        out[key.strip()] = val.strip()
    return out


def parse_function_spec(text: str) -> FunctionSpec:
    """Parse e.g. ``phi:a=0.5``, ``lac:a=0.5,p=2,m=1,sign=+``, ``blaschke:seed=7,deg=4``."""
    name, _, body = text.partition(":")
    kv = _kv(body)

    def take(key, conv, default=None):
        if key in kv:
            try:
                return conv(kv.pop(key))
            except ValueError as exc:
                raise DomainError(f"bad value for {key!r} in {text!r}") from exc
        if default is None:
            raise DomainError(f"missing {key!r} in {text!r}")
        return default

    name = name.strip()
    if name == "phi":
        spec = phi(take("a", float))
    elif name == "psi":
        spec = psi(take("a", float))
    elif name == "lac":
        spec = lacunary_mobius(take("a", float), take("p", int), take("m", int), take("sign", str, "+"))
    elif name == "mono":
        spec = monomial(take("k", int))
    elif name == "blaschke":
        spec = sample_spec("B", take("seed", int), take("deg", int, 1))
    elif name == "herglotz":
        base = sample_spec("P", take("seed", int), take("terms", int, 1))
        spec = replace(base, a0=take("a0", float, base.a0), tag="")
    else:
        raise DomainError(f"unknown function kind {name!r}")
    if "N" in kv:
        spec = with_order(spec, take("N", int))
    if kv:
        raise DomainError(f"unknown keys {sorted(kv)} in {text!r}")
    return spec


def _ratio_T(x, p: float):
    """(1 - x^p)/(1 - x) with the limit value p at x = 1."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(x < 1.0, (1.0 - x ** p) / (1.0 - x), p)
    return out
