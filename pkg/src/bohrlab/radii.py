"""Catalog of radius equations solved as minimal positive roots.

Each catalog entry stores a residual g(r) whose first sign change on (0, 1)
is the radius.  ``g(0+)`` orientation is noted per entry; the solver only
needs the sign to change.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from bohrlab.errors import DomainError, NoSignChangeError
from bohrlab.weights import WeightSequence, phi, phi_even_sum, plain_monomials, strided_sum

DEFAULT_TOL = 1e-13
SCAN_STEP = 1e-3
R_MAX = 0.999
CLOSED_FORM_AGREEMENT = 1e-10
_SCAN_CHUNK = 64


@dataclass(frozen=True)
class RootResult:
    value: float
    residual: float
    bracket: tuple[float, float]
    iterations: int


@dataclass(frozen=True)
class RadiusQuery:
    id: str
    params: dict = field(default_factory=dict)


def _eval(g: Callable, r: np.ndarray, vectorized: bool) -> np.ndarray:
    if vectorized:
        return np.asarray(g(r), dtype=float)
    return np.array([float(g(float(x))) for x in r])


def find_minimal_root(g: Callable, tol: float = DEFAULT_TOL, scan_step: float = SCAN_STEP,
                      lo: float = 0.0, hi: float = R_MAX, vectorized: bool = False) -> RootResult:
    """First sign change of g on (lo, hi], located by scanning then bisection.

    Points are classified as ``g > 0`` or ``g <= 0``; the root is the first
    place where the class differs from the class at ``lo + scan_step``.
    """
    if tol < 1e-15:
        raise DomainError("tol must be >= 1e-15")
    grid = lo + scan_step * np.arange(1, int(math.floor((hi - lo) / scan_step + 1e-9)) + 1)
    grid = grid[grid <= hi]
    if grid.size < 2:
        raise DomainError("scan interval too short")
    # scan in chunks so residuals that are expensive (or undefined) near
    # r = 1 are never evaluated past the first sign change
    left = None
    a = b = None
    for start in range(0, grid.size, _SCAN_CHUNK):
        part = grid[max(start - 1, 0):start + _SCAN_CHUNK]
        vals = _eval(g, part, vectorized)
        if np.any(np.isnan(vals)):
            raise DomainError("residual is NaN on the scan grid")
        cls = vals > 0
        if left is None:
            left = bool(cls[0])
        flips = np.flatnonzero(cls != left)
        if flips.size:
            j = int(flips[0])
            if j == 0:
                raise DomainError("residual changes class at the first scan point")
            a, b = float(part[j - 1]), float(part[j])
            break
    if a is None:
        raise NoSignChangeError(f"residual keeps one sign on [{grid[0]:.4g}, {grid[-1]:.4g}]")
    it = 0
    while b - a > tol and it < 200:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        if (float(_eval(g, np.array([mid]), vectorized)[0]) > 0) == left:
            a = mid
        else:
            b = mid
        it += 1
    root = 0.5 * (a + b)
    residual = float(_eval(g, np.array([root]), vectorized)[0])
    return RootResult(root, residual, (a, b), it)


# polynomials used by the catalog ---------------------------------------------

def theorem4_L(mu: float, x):
    """The degree-5 polynomial controlling the lambda range at r = 1/(5 - 2x)."""
    x = np.asarray(x, dtype=float)
    out = (-4 * x**5 + 32 * x**4 - 82 * x**3 + 58 * x**2 + 38 * x - 42
           - 4 * mu * x**4 + 20 * mu * x**3 - 21 * mu * x**2 - 20 * mu * x + 25 * mu)
    return float(out) if out.ndim == 0 else out


def theoremD_Phi(lam: float, r):
    """Quadratic-in-lambda polynomial whose root in r gives r_0(a_0), lambda = 1 - a_0."""
    r = np.asarray(r, dtype=float)
    out = (4 * r**3 * lam**2 - (7 * r**3 + 3 * r**2 - 3 * r + 1) * lam
           + 6 * r**3 - 2 * r**2 - 6 * r + 2)
    return float(out) if out.ndim == 0 else out


# catalog ---------------------------------------------------------------------

@dataclass(frozen=True)
class RadiusDef:
    """One catalog entry: residual builder, optional closed form, search window."""

    id: str
    params: tuple[str, ...]
    residual: Callable[[dict], Callable]
    closed_form: Callable[[dict], float] | None = None
    window: Callable[[dict], tuple[float, float]] | None = None
    orientation: str = ""


def _w(params) -> WeightSequence:
    w = params.get("weights")
    return WeightSequence.geometric() if w is None else w


def _need(params, name, cond=None, msg=""):
    if name not in params or params[name] is None:
        raise DomainError(f"missing parameter {name!r}")
    v = params[name]
    if cond is not None and not cond(v):
        raise DomainError(msg or f"parameter {name}={v!r} out of range")
    return v


def _zeta0(w: WeightSequence, r):
    return w.values(0, np.asarray(r, dtype=float))


def _res_theorem1_R1(P):
    w = _w(P)
    p = _need(P, "p", lambda v: 0 < v <= 1, "p must lie in (0, 1]")
    return lambda r: (2.0 / p) * phi(w, 1, r) - _zeta0(w, r)


def _res_theorem1_Rp(P):
    w = _w(P)
    p = _need(P, "p", lambda v: float(v).is_integer() and v >= 1, "p must be a positive integer")
    a0 = _need(P, "a0", lambda v: 0 <= v < 1, "a0 must lie in [0, 1)")
    s = sum(a0 ** j for j in range(int(p)))
    return lambda r: (2.0 / s) * phi(w, 1, r) - _zeta0(w, r)


def _res_lacunary_kp(P):
    k = int(_need(P, "k", lambda v: int(v) >= 1))
    p = _need(P, "p", lambda v: 0 < v <= 1, "p must lie in (0, 1]")
    w = WeightSequence.lacunary(k)
    return lambda r: (2.0 / p) * phi(w, 1, r) - _zeta0(w, r)


def _res_corollary1(P):
    w = _w(P)
    return lambda r: 2.0 * phi(w, 1, r) + 4.0 * phi_even_sum(w, r) - _zeta0(w, r)


def _res_theorem2(P):
    w = _w(P)
    p = _need(P, "p", lambda v: v > 0)
    q = _need(P, "q", lambda v: v >= 1, "q must be >= 1")
    m = int(_need(P, "m", lambda v: int(v) >= 1, "m must be a positive integer"))
    if p == 2:
        a0 = _need(P, "a0", lambda v: 0 <= v < 1, "a0 must lie in [0, 1)")

        def g2(r):
            r = np.asarray(r, dtype=float)
            extra = 2.0 ** q * (1 - a0) ** (q - 1) * r ** (m * q) / (1 - r ** m) ** q
            return (2 * phi(w, 1, r) + extra) / (1 + a0) - _zeta0(w, r)
        return g2

    def g(r):
        r = np.asarray(r, dtype=float)
        return (2.0 / p) * (phi(w, 1, r) + 2.0 ** (q - 1) * r ** (m * q) / (1 - r ** m) ** q) - _zeta0(w, r)
    return g


def _res_theorem3(P):
    w = _w(P)
    lam = _need(P, "lambda", lambda v: v >= 0)
    a0 = _need(P, "a0", lambda v: 0 <= v < 1, "a0 must lie in [0, 1)")

    def g(r):
        r = np.asarray(r, dtype=float)
        return (2.0 / (1 + a0)) * (phi(w, 1, r) + 2 * lam * (1 - a0) * r**2 / (1 - r**2) ** 2) - _zeta0(w, r)
    return g


def _res_theorem4(P):
    a0 = _need(P, "a0", lambda v: 0 <= v < 1, "a0 must lie in [0, 1)")
    return lambda r: 2 * (2 - a0) * np.asarray(r) / (1 - np.asarray(r)) - 1


def _res_theoremD_rstar(P):
    return lambda r: -theoremD_Phi(1.0, r)


def _res_theoremD_r0(P):
    a0 = _need(P, "a0", lambda v: 0 <= v <= 1, "a0 must lie in [0, 1]")
    return lambda r: -theoremD_Phi(1.0 - a0, r)


def _window_theoremD_r0(P):
    rstar = radius(RadiusQuery("theoremD_rstar")).value
    return rstar - 0.01, 1.0 / 3.0 + 0.01


def _lemma2_pm(P):
    p = int(_need(P, "p", lambda v: int(v) >= 1))
    m = int(_need(P, "m", lambda v: 0 <= int(v) < int(P["p"]), "need 0 <= m < p"))
    return p, m


def _res_lemma2(P):
    p, m = _lemma2_pm(P)
    # minus the stated polynomial, so that g(0+) = -1
    return lambda r: -(r ** (3 * p - m) - 2 * r ** (3 * p) - 3 * r ** (2 * p) - r ** (p - m) + 1)


def _monomial_params(P):
    w = P.get("weights") or plain_monomials()
    if w.kind != "monomial":
        raise DomainError("this radius needs monomial weights")
    p = int(_need(P, "p", lambda v: int(v) >= 1))
    m = int(_need(P, "m", lambda v: 0 <= int(v) <= int(P["p"]), "need 0 <= m <= p"))
    return w, p, m


def _res_theorem5_rstar(P):
    w, p, m = _monomial_params(P)
    return lambda r: w.values(m, np.asarray(r)) * strided_sum(w, np.asarray(r) ** p, 1, 2) - 1


def _res_theorem5_Rstar(P):
    w, p, m = _monomial_params(P)
    return lambda r: w.values(m, np.asarray(r)) * phi(w, 1, np.asarray(r) ** p) - 1


def _res_corollary5(P):
    w, p, m = _monomial_params(P)

    def g(r):
        r = np.asarray(r, dtype=float)
        s = np.asarray(phi(w, 1, r ** p))
        if m == 0:
            # zeta*_0 = 1: the equation collapses to (2S - 1)^2 = 0; use the
            # transversal factor so bisection converges linearly
            return 2 * s - 1
        z = w.values(m, r)
        # max over x in [0,1] of z (x + (1 - x^2) S) - 1; the interior maximum
        # at x = 1/(2S) exists once S >= 1/2
        with np.errstate(divide="ignore", invalid="ignore"):
            inner = np.where(s >= 0.5, z * (2 * s - 1) ** 2 / (4 * s), 0.0)
        return inner + z - 1
    return g


def _res_corollary7(P):
    p = int(_need(P, "p", lambda v: int(v) >= 1))
    m = int(_need(P, "m", lambda v: int(v) >= 0))
    return lambda r: np.asarray(r) ** (2 * p) + np.asarray(r) ** (p + m) - 1


def _res_theoremC(P):
    w = _w(P)
    p = _need(P, "p", lambda v: 0 < v <= 2, "p must lie in (0, 2]")
    return lambda r: (2.0 / p) * phi(w, 1, r) - _zeta0(w, r)


def _closed_theorem1_Rp(P):
    w = P.get("weights")
    if (w is None or w.kind == "geometric") and P.get("p") == 2:
        return (1 + P["a0"]) / (3 + P["a0"])
    if (w is None or w.kind == "geometric") and P.get("p") == 1:
        return 1.0 / 3.0
    return None


def _closed_geometric(value_fn):
    def closed(P):
        w = P.get("weights")
        return value_fn(P) if w is None or w.kind == "geometric" else None
    return closed


def _closed_monomial(value_fn):
    def closed(P):
        w = P.get("weights")
        if w is not None and w != plain_monomials(w.length):
            return None
        return value_fn(P)
    return closed


def _rstar_plain(P):
    if P["p"] == 1 and P["m"] == 0:
        return (math.sqrt(5) - 1) / 2
    return None


def _Rstar_plain(P):
    if P["m"] == 0:
        return 0.5 ** (1.0 / P["p"])
    return None


def _rtilde_plain(P):
    if P["p"] == 2 and P["m"] == 0:
        return 1 / math.sqrt(3)
    return None


def _corollary7_closed(P):
    p, m = P["p"], P["m"]
    if m == p:
        # r^{2p} + r^{2p} = 1
        return 0.5 ** (1.0 / (2 * p))
    if m == 0:
        return ((math.sqrt(5) - 1) / 2) ** (1.0 / p)
    return None


CATALOG: dict[str, RadiusDef] = {d.id: d for d in [
    RadiusDef("classical_third", (), lambda P: _res_theorem1_R1({"p": 1.0}),
              lambda P: 1.0 / 3.0, orientation="g(0+) < 0"),
    RadiusDef("theorem1_R1", ("weights", "p"), _res_theorem1_R1,
              _closed_geometric(lambda P: P["p"] / (2 + P["p"])), orientation="g(0+) < 0"),
    RadiusDef("theorem1_Rp", ("weights", "p", "a0"), _res_theorem1_Rp, _closed_theorem1_Rp,
              orientation="g(0+) < 0"),
    RadiusDef("lacunary_kp", ("k", "p"), _res_lacunary_kp,
              lambda P: (P["p"] / (2 + P["p"])) ** (1.0 / P["k"]), orientation="g(0+) < 0"),
    RadiusDef("corollary1_r1", ("weights",), _res_corollary1, orientation="g(0+) < 0"),
    RadiusDef("theorem2_Rpmq", ("weights", "p", "q", "m", "a0"), _res_theorem2,
              _closed_geometric(lambda P: math.sqrt(5) - 2 if (P["p"], P["q"], P["m"]) == (1, 2, 1) else None),
              orientation="g(0+) < 0"),
    RadiusDef("theorem3_Rlambda2", ("weights", "lambda", "a0"), _res_theorem3, orientation="g(0+) < 0"),
    RadiusDef("theorem4_rho", ("a0",), _res_theorem4, lambda P: 1.0 / (5 - 2 * P["a0"]),
              orientation="g(0+) < 0"),
    RadiusDef("theoremD_rstar", (), _res_theoremD_rstar, orientation="g(0+) < 0"),
    RadiusDef("theoremD_r0", ("a0",), _res_theoremD_r0,
              lambda P: 1.0 / 3.0 if P["a0"] == 1 else None, window=_window_theoremD_r0,
              orientation="g < 0 at r_* - 0.01"),
    RadiusDef("lemma2_rpm", ("p", "m"), _res_lemma2,
              lambda P: math.sqrt(2) - 1 if (P["p"], P["m"]) == (1, 0) else None, orientation="g(0+) < 0"),
    RadiusDef("theorem5_rstar", ("weights", "p", "m"), _res_theorem5_rstar, _closed_monomial(_rstar_plain),
              orientation="g(0+) < 0"),
    RadiusDef("theorem5_Rstar", ("weights", "p", "m"), _res_theorem5_Rstar, _closed_monomial(_Rstar_plain),
              orientation="g(0+) < 0"),
    RadiusDef("corollary5_rtilde", ("weights", "p", "m"), _res_corollary5, _closed_monomial(_rtilde_plain),
              orientation="g(0+) <= 0"),
    RadiusDef("corollary7_Rpm", ("p", "m"), _res_corollary7, _corollary7_closed, orientation="g(0+) < 0"),
    RadiusDef("theoremE_radius", (), lambda P: _res_lemma2({"p": 1, "m": 0}),
              lambda P: math.sqrt(2) - 1, orientation="g(0+) < 0"),
    RadiusDef("corollary2_radius", (), lambda P: _res_theorem2({"p": 1, "q": 2, "m": 1}),
              lambda P: math.sqrt(5) - 2, orientation="g(0+) < 0"),
    RadiusDef("theoremC_R", ("weights", "p"), _res_theoremC,
              _closed_geometric(lambda P: P["p"] / (2 + P["p"])), orientation="g(0+) < 0"),
]}


def _normalize(params: dict) -> dict:
    out = dict(params)
    if "lam" in out and "lambda" not in out:
        out["lambda"] = out.pop("lam")
    for key in ("p", "q", "lambda", "a0"):
        if key in out and out[key] is not None:
            out[key] = float(out[key])
            if key == "p" and out[key].is_integer():
                out[key] = int(out[key])
    for key in ("m", "k"):
        if key in out and out[key] is not None:
            if float(out[key]) != int(out[key]):
                raise DomainError(f"{key} must be an integer")
            out[key] = int(out[key])
    return out


def radius(query: RadiusQuery, tol: float = DEFAULT_TOL) -> RootResult:
    """Solve the catalog equation named by ``query``.

    Entries with a closed form return it after checking that the generic
    solver lands within 1e-10 of it.
    """
    if query.id not in CATALOG:
        raise DomainError(f"unknown radius id {query.id!r}")
    entry = CATALOG[query.id]
    P = _normalize(query.params)
    g = entry.residual(P)
    lo, hi = entry.window(P) if entry.window else (0.0, R_MAX)
    res = find_minimal_root(g, tol=tol, lo=lo, hi=hi, vectorized=True)
    closed = entry.closed_form(P) if entry.closed_form else None
    if closed is not None:
        if abs(closed - res.value) > CLOSED_FORM_AGREEMENT:
            raise ArithmeticError(f"{query.id}: solver {res.value!r} disagrees with closed form {closed!r}")
        return RootResult(float(closed), float(np.asarray(g(np.array([closed])))[0]), res.bracket, res.iterations)
    return res


def radius_value(id: str, tol: float = DEFAULT_TOL, **params) -> float:
    return radius(RadiusQuery(id, params), tol).value


# golden theorem2_Rpmq values (6 printed decimals; some entries are truncated)
TABLE1_PRINTED: tuple[tuple[float, int, int, float], ...] = (
    (1, 2, 1, 0.236068), (1, 2, 3, 0.332047), (1, 2, 5, 0.333318), (1, 2, 10, 0.333333),
    (1, 2, 2, 0.321336), (1, 2, 4, 0.333195), (1, 2, 7, 0.333333), (1, 2, 15, 0.333333),
    (1, 1, 1, 0.200000), (1, 1, 3, 0.318201), (1, 1, 5, 0.331541), (1, 1, 15, 0.333333),
    (1, 1, 2, 0.289898), (1, 1, 4, 0.328083), (1, 1, 10, 0.333326), (1, 1, 20, 0.333333),
    (0.5, 1, 1, 0.111111), (0.5, 1, 3, 0.195177), (0.5, 1, 10, 0.199999), (0.5, 1, 50, 0.200000),
    (0.5, 1, 2, 0.178395), (0.5, 1, 5, 0.199796), (0.5, 1, 30, 0.199999), (0.5, 1, 60, 0.200000),
)
TABLE1_SOURCE = "printed reference table, 6 decimals"


def table1() -> list[dict]:
    """Recompute every Table-1 radius with geometric weights."""
    rows = []
    for p, q, m, printed in TABLE1_PRINTED:
        value = radius(RadiusQuery("theorem2_Rpmq", {"p": p, "q": q, "m": m})).value
        rows.append({"p": p, "q": q, "m": m, "radius": value, "printed": printed,
                     "abs_diff": abs(value - printed)})
    return rows
