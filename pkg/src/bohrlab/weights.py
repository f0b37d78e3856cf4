"""Weight families zeta_n(r) and their tails Phi_N(r)."""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from bohrlab.errors import DomainError, ParityError

KINDS = ("geometric", "lacunary", "harmonic", "even_only", "odd_only", "monomial")
DEFAULT_TABLE_LENGTH = 4096

_CHUNK = 512
_REL_STOP = 1e-15


@dataclass(frozen=True)
class WeightSequence:
    """One weight family.  Monomial families hold zeta_n(r) = C_n r^tau_n."""

    kind: str
    k: int = 1
    coefficients: tuple[float, ...] = ()
    degrees: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown weight kind {self.kind!r}")
        if self.kind == "lacunary" and self.k < 1:
            raise DomainError("lacunary step k must be >= 1")
        if self.kind == "monomial":
            c = np.asarray(self.coefficients, dtype=float)
            t = np.asarray(self.degrees, dtype=np.int64)
            if c.size == 0 or c.size != t.size:
                raise DomainError("monomial table needs matching, non-empty C and tau columns")
            if c[0] != 1.0 or t[0] != 0:
                raise DomainError("monomial table must start with C_0 = 1, tau_0 = 0")
            if np.any(c < 0) or not np.all(np.isfinite(c)):
                raise DomainError("monomial coefficients must be finite and nonnegative")
            if np.any(np.diff(t) <= 0):
                raise DomainError("monomial degrees must be strictly increasing")

    # constructors -------------------------------------------------------
    @classmethod
    def geometric(cls):
        return cls("geometric")

    @classmethod
    def lacunary(cls, k: int):
        return cls("lacunary", k=int(k))

    @classmethod
    def harmonic(cls):
        return cls("harmonic")

    @classmethod
    def even_only(cls):
        return cls("even_only")

    @classmethod
    def odd_only(cls):
        return cls("odd_only")

    @classmethod
    def monomial(cls, coefficients, degrees):
        return cls("monomial", coefficients=tuple(float(c) for c in coefficients),
                   degrees=tuple(int(t) for t in degrees))

    # derived properties ------------------------------------------------
    @property
    def length(self) -> int | None:
        """Number of defined entries (None when unbounded)."""
        return len(self.coefficients) if self.kind == "monomial" else None

    @functools.cached_property
    def _c(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=float)

    @functools.cached_property
    def _tau(self) -> np.ndarray:
        return np.asarray(self.degrees, dtype=np.int64)

    @property
    def sup_coefficient(self) -> float:
        """A constant K with zeta_n(r) <= K r^n for every n."""
        return float(self._c.max()) if self.kind == "monomial" else 1.0

    def label(self) -> str:
        if self.kind == "lacunary":
            return f"lacunary:{self.k}"
        if self.kind == "monomial":
            return f"monomial[{self.length}]"
        return self.kind

    def values(self, n, x) -> np.ndarray:
        """Elementwise zeta_n(x) with numpy broadcasting between n and x."""
        n = np.asarray(n, dtype=np.int64)
        x = np.asarray(x, dtype=float)
        if self.kind == "monomial":
            if n.size and (n.min() < 0 or n.max() >= self.length):
                raise IndexError(f"monomial table has {self.length} entries; index {n.max()} requested")
            return self._c[n] * x ** self._tau[n]
        base = x ** n
        if self.kind == "geometric":
            return base
        if self.kind == "harmonic":
            return base / (n + 1.0)
        if self.kind == "lacunary":
            return np.where(n % self.k == 0, base, 0.0)
        if self.kind == "even_only":
            return np.where(n % 2 == 0, base, 0.0)
        return np.where(n % 2 == 1, base, 0.0)

    def terms(self, n, x) -> np.ndarray:
        """zeta_n(x) on the outer grid (len(n), len(x))."""
        return self.values(np.asarray(n, dtype=np.int64)[:, None], np.asarray(x, dtype=float)[None, :])


def plain_monomials(length: int = DEFAULT_TABLE_LENGTH) -> WeightSequence:
    """C_n = 1, tau_n = n."""
    return WeightSequence.monomial(np.ones(length), np.arange(length))


def harmonic_monomials(length: int = DEFAULT_TABLE_LENGTH) -> WeightSequence:
    """C_n = 1/(n+1), tau_n = n."""
    n = np.arange(length)
    return WeightSequence.monomial(1.0 / (n + 1.0), n)


def load_monomial_table(path) -> WeightSequence:
    """Read a two-column ``C_n tau_n`` table; line i holds entry i."""
    coeffs, degrees = [], []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        parts = text.split()
        if len(parts) != 2:
            raise DomainError(f"{path}:{lineno}: expected 'C_n tau_n'")
        coeffs.append(float(parts[0]))
        tau = float(parts[1])
        if tau != int(tau):
            raise DomainError(f"{path}:{lineno}: degree must be an integer")
        degrees.append(int(tau))
    return WeightSequence.monomial(coeffs, degrees)


def parse_weights(text: str) -> WeightSequence:
    """Parse 'geometric', 'harmonic', 'even_only', 'odd_only', 'lacunary:K',
    'monomial:plain', 'monomial:harmonic' or 'monomial:file=PATH'."""
    name, _, arg = text.partition(":")
    if name in ("geometric", "harmonic", "even_only", "odd_only") and not arg:
        return WeightSequence(name)
    if name == "lacunary":
        try:
            return WeightSequence.lacunary(int(arg))
        except ValueError as exc:
            raise DomainError(f"bad lacunary step in {text!r}") from exc
    if name == "monomial":
        if arg == "plain":
            return plain_monomials()
        if arg == "harmonic":
            return harmonic_monomials()
        if arg.startswith("file="):
            return load_monomial_table(arg[5:])
    raise DomainError(f"cannot parse weight family {text!r}")


def _check_radius(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if np.any((r < 0.0) | (r >= 1.0)) or np.any(np.isnan(r)):
        raise DomainError("radius must lie in [0, 1)")
    return r


def _out(value: np.ndarray):
    return float(value) if np.ndim(value) == 0 else value


def zeta(w: WeightSequence, n, r):
    """zeta_n(r), broadcasting over integer n and radius r."""
    r = _check_radius(r)
    n_arr = np.asarray(n, dtype=np.int64)
    if np.any(n_arr < 0):
        raise DomainError("index must be >= 0")
    return _out(w.values(n_arr, r))


def _remainder_bound(w: WeightSequence, x: float, j: int, step: int, multiplicity: bool) -> float:
    """Upper bound on the unvisited part of a numeric sum starting at index j."""
    if x == 0.0:
        return 0.0
    k = w.sup_coefficient
    if multiplicity:
        # sum_{i>=j} (i/2) x^i
        return k * 0.5 * (j * x ** j / (1 - x) + x ** (j + 1) / (1 - x) ** 2)
    return k * x ** j / (1 - x ** step) if step > 1 else k * x ** j / (1 - x)


def _numeric_sum(w: WeightSequence, x: float, start: int, step: int = 1,
                 multiplicity: bool = False, rel: float = _REL_STOP) -> float:
    """sum_{i>=0} zeta_{start+i*step}(x), optionally weighted by floor(index/2)."""
    if x == 0.0:
        return float(w.values(0, 0.0)) if start == 0 and not multiplicity else 0.0
    total = 0.0
    j = start
    limit = w.length
    while True:
        if _remainder_bound(w, x, j, step, multiplicity) <= rel * (1.0 + total):
            return total
        stop = j + _CHUNK * step
        if limit is not None:
            if j >= limit:
                raise IndexError(f"monomial table of length {limit} too short for the tail at r={x}")
            stop = min(stop, limit)
        idx = np.arange(j, stop, step)
        vals = w.terms(idx, np.array([x]))[:, 0]
        if multiplicity:
            vals = vals * (idx // 2)
        total += float(np.sum(vals[::-1]))
        j = int(idx[-1]) + step


def phi(w: WeightSequence, N: int, r):
    """Phi_N(r) = sum_{n>=N} zeta_n(r)."""
    r = _check_radius(r)
    if N < 0:
        raise DomainError("N must be >= 0")
    kind = w.kind
    if kind == "geometric":
        return _out(r ** N / (1.0 - r))
    if kind in ("lacunary", "even_only", "odd_only"):
        k = w.k if kind == "lacunary" else 2
        first = -(-N // k) * k
        if kind == "odd_only":
            first = N if N % 2 == 1 else N + 1
        return _out(r ** first / (1.0 - r ** k))
    if kind == "harmonic":
        return _out(np.vectorize(_harmonic_tail, otypes=[float])(N, r))
    return _out(np.vectorize(lambda x: _numeric_sum(w, float(x), N), otypes=[float])(r))


def _harmonic_tail(N: int, x: float) -> float:
    """sum_{n>=N} x^n/(n+1) via the log identity when it is well conditioned."""
    if x == 0.0:
        return 1.0 if N == 0 else 0.0
    head = -math.log1p(-x)
    estimate = x ** N / ((N + 1) * (1 - x))
    if estimate >= 1e-6 * head:
        n = np.arange(N)
        partial = float(np.sum(x ** (n + 1) / (n + 1.0)))
        return (head - partial) / x
    return _numeric_sum(WeightSequence.harmonic(), x, N)


def strided_sum(w: WeightSequence, x, start: int, step: int):
    """sum_{i>=0} zeta_{start + i*step}(x)."""
    x = _check_radius(x)
    if step < 1 or start < 0:
        raise DomainError("need start >= 0 and step >= 1")
    if w.kind == "geometric":
        return _out(x ** start / (1.0 - x ** step))
    return _out(np.vectorize(lambda v: _numeric_sum(w, float(v), start, step), otypes=[float])(x))


def phi_even_sum(w: WeightSequence, r):
    """sum_{n>=1} Phi_{2n}(r), re-summed as sum_j floor(j/2) zeta_j(r)."""
    r = _check_radius(r)
    if w.kind == "geometric":
        return _out(r ** 2 / ((1.0 - r) * (1.0 - r ** 2)))
    return _out(np.vectorize(lambda v: _numeric_sum(w, float(v), 2, 1, multiplicity=True),
                             otypes=[float])(r))


def is_pointwise_decreasing(w: WeightSequence, r: float, N_check: int) -> bool:
    """True iff zeta_{n+1}(r) <= zeta_n(r) for all n <= N_check."""
    n_stop = N_check + 2
    if w.length is not None:
        n_stop = min(n_stop, w.length)
    vals = w.terms(np.arange(n_stop), np.array([float(r)]))[:, 0]
    return bool(np.all(np.diff(vals) <= 0.0))


def degree_parity(w: WeightSequence, p: int, m: int, n: int) -> str:
    """Parity of the degree of zeta*_m(r) zeta*_n(r^p), i.e. tau_m + p tau_n."""
    if w.kind != "monomial":
        raise DomainError("degree parity is defined for monomial weights only")
    for idx in (m, n):
        if idx < 0 or idx >= w.length:
            raise IndexError(f"monomial table has no entry {idx}")
    return "even" if (w.degrees[m] + p * w.degrees[n]) % 2 == 0 else "odd"


class ParityCase(NamedTuple):
    """Resolved sign structure of a monomial family for a lacunary pattern.

    ``case`` is "I" when even- and odd-indexed degrees have opposite parity,
    "II" when all share one parity.  ``odd_sign`` is (-1)^(parity of the
    odd-indexed degrees); ``common_sign`` is the shared sign in case II.
    """

    case: str
    odd_sign: int
    even_sign: int
    common_sign: int | None


def parity_case(w: WeightSequence, p: int, m: int) -> ParityCase:
    """Classify the degree parities of zeta*_m(r) zeta*_n(r^p), n >= 1."""
    if w.kind != "monomial":
        raise DomainError("parity dispatch needs monomial weights")
    if m >= w.length or w.length < 3:
        raise IndexError("monomial table too short for parity dispatch")
    deg = (w.degrees[m] + p * w._tau[1:]) % 2
    odd_idx = deg[0::2]    # n = 1, 3, 5, ...
    even_idx = deg[1::2]   # n = 2, 4, ...
    if np.all(odd_idx == odd_idx[0]) and np.all(even_idx == even_idx[0]):
        so = -1 if odd_idx[0] else 1
        se = -1 if even_idx[0] else 1
        if so == se:
            return ParityCase("II", so, se, so)
        return ParityCase("I", so, se, None)
    raise ParityError(f"degree parities for p={p}, m={m} match neither parity case")


class WeightTable:
    """zeta_n(r_i) for n <= n_max plus exact tails, on a fixed radius grid."""

    def __init__(self, w: WeightSequence, r: np.ndarray, n_max: int):
        self.weights = w
        self.r = np.asarray(r, dtype=float)
        self.n_max = n_max
        if w.length is not None and n_max >= w.length:
            raise IndexError(f"monomial table of length {w.length} cannot tabulate {n_max + 1} entries")
        self.zeta = w.terms(np.arange(n_max + 1), self.r)
        self._suffix: dict[int, np.ndarray] = {}

    def suffix(self, step: int = 1) -> np.ndarray:
        """S[j] = sum_{i>=0} zeta_{j + i*step}, rows j = 0..n_max (tails included)."""
        if step in self._suffix:
            return self._suffix[step]
        out = np.empty_like(self.zeta)
        for c in range(step):
            rows = np.arange(c, self.n_max + 1, step)
            if rows.size == 0:
                continue
            nxt = int(rows[-1]) + step
            tail = np.array([self._tail_from(nxt, step, x) for x in self.r])
            out[rows] = np.cumsum(self.zeta[rows][::-1], axis=0)[::-1] + tail
        out.setflags(write=False)
        self._suffix[step] = out
        return out

    def _tail_from(self, start: int, step: int, x: float) -> float:
        w = self.weights
        if w.kind == "geometric":
            return x ** start / (1.0 - x ** step)
        return _numeric_sum(w, float(x), start, step)

    def phi(self, n: int) -> np.ndarray:
        return self.suffix(1)[n]


@functools.lru_cache(maxsize=64)
def _cached_table(w: WeightSequence, r: tuple, n_max: int) -> WeightTable:
    return WeightTable(w, np.array(r), n_max)


def tabulate(w: WeightSequence, r, n_max: int) -> WeightTable:
    """Cached ``WeightTable``; repeated sweeps over one grid share the work."""
    r = np.atleast_1d(_check_radius(r))
    return _cached_table(w, tuple(r.tolist()), int(n_max))
