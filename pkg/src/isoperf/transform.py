"""The U-transform  U_g(t) = sup_r (1/r)(1 - t/g(r))  on the integers and on the half line.

Discrete growth tables are handled exactly (``Fraction`` arithmetic whenever
``t`` is an integer or a ``Fraction``).  Differentiable growth models go through
tau(r) = g / (1 + r g'/g): the maximiser rho(t) solves tau(rho) = t, found by
bracket doubling plus bisection/Newton in log space.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .cayley import GrowthTable

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class DomainError(ValueError):
    """Argument outside the domain where a formula or procedure is defined."""


class NonInjectiveTauWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class TransformResult:
    value: float | Fraction
    argmax_r: float | int | None
    certified: bool
    diagnostic: str | None = None

    def __float__(self) -> float:
        return float(self.value)


def _exact(t):
    if isinstance(t, (int, Fraction)) and not isinstance(t, bool):
        return Fraction(t)
    return float(t)


# ---------------------------------------------------------------------------
# discrete transforms from a growth table


def u_discrete(table: GrowthTable, t) -> TransformResult:
    """sup over r = 1..R of (1/r)(1 - t/gamma(r)).

    Once the running best ``b > 0`` satisfies ``r + 1 > 1/b`` every later term
    (each at most 1/r) is smaller, so the sup is certified.  A saturated table of
    a finite group is certified as well.
    """
    if not t > 0:
        raise ValueError("t must be positive")
    if table.radius < 1:
        raise ValueError("table needs radius >= 1")
    t = _exact(t)
    best = arg = None
    certified = False
    for r in range(1, table.radius + 1):
        term = (1 - t / table.gamma[r]) / r
        if best is None or term >= best:
            best, arg = term, r
        if best > 0 and (r + 1) * best > 1:
            certified = True
            break
    if not certified and table.saturated:
        certified = True
        if best <= 0:
            # terms past saturation are (1/r)(1 - t/|G|) <= 0 and tend to 0
            if best < 0:
                best, arg = best * 0, math.inf
    return TransformResult(best, arg, certified, None if certified else "table too short to certify sup")


def strong_lower_bound(table: GrowthTable, t) -> TransformResult:
    """max over r = 1..R of (gamma(r) - t) / (r gamma(r) - sum_{k<r} gamma(k)).

    Every term is a valid lower bound; completeness of the max is only known
    for saturated tables (the terms are constant past saturation).
    """
    if not t > 0:
        raise ValueError("t must be positive")
    if table.radius < 1:
        raise ValueError("table needs radius >= 1")
    t = _exact(t)
    gamma, prefix = table.gamma, table.prefix
    best = arg = None
    for r in range(1, table.radius + 1):
        den = r * gamma[r] - prefix[r - 1]
        term = (gamma[r] - t) / den if isinstance(t, float) else Fraction(gamma[r] - t) / den
        if best is None or term >= best:
            best, arg = term, r
    certified = table.saturated
    if certified and best < 0:
        # t > |G|: terms past saturation are negative and tend to 0
        best, arg = best * 0, math.inf
    return TransformResult(best, arg, certified, None if certified else "truncated at table radius")


# ---------------------------------------------------------------------------
# continuous growth models


class GrowthModel:
    """A differentiable, increasing growth function, evaluated through h = log g."""

    #: lim_{r -> 0+} g(r)
    g0: float = 0.0

    def log_g(self, r):
        raise NotImplementedError

    def dlog_g(self, r):
        """h'(r) = g'(r)/g(r)."""
        raise NotImplementedError

    def d2log_g(self, r):
        step = 1e-5 * r
        return (self.dlog_g(r + step) - self.dlog_g(r - step)) / (2 * step)

    def g(self, r):
        return np.exp(self.log_g(r))

    def dg(self, r):
        return self.g(r) * self.dlog_g(r)

    def log_g_array(self, rs: np.ndarray) -> np.ndarray:
        return np.asarray(self.log_g(rs), dtype=float)

    def dlog_g_array(self, rs: np.ndarray) -> np.ndarray:
        return np.asarray(self.dlog_g(rs), dtype=float) * np.ones_like(rs)

    def inverse(self, t: float) -> float:
        """g^{-1}(t) by bisection on log g."""
        if t <= self.g0:
            raise DomainError("g^-1(t) undefined for t <= g(0+)")
        L = math.log(t)
        lo, hi = 1.0, 1.0
        while self.log_g(hi) < L:
            hi *= 2.0
        while self.log_g(lo) > L:
            lo /= 2.0
            if lo < 1e-300:
                raise DomainError("g^-1(t) not bracketed")
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self.log_g(mid) < L:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-15 * hi:
                break
        return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Polynomial(GrowthModel):
    """g(r) = c r^d."""

    c: float
    d: float
    g0: float = field(default=0.0, init=False)

    def __post_init__(self):
        if not (self.c > 0 and self.d >= 1):
            raise DomainError("polynomial model needs c > 0 and d >= 1")

    def log_g(self, r):
        return math.log(self.c) + self.d * np.log(r)

    def dlog_g(self, r):
        return self.d / r

    def d2log_g(self, r):
        return -self.d / (r * r)

    def inverse(self, t):
        return (t / self.c) ** (1.0 / self.d)


@dataclass(frozen=True)
class StretchedExp(GrowthModel):
    """g(r) = c exp(b r^alpha), 0 < alpha <= 1."""

    c: float
    b: float
    alpha: float

    def __post_init__(self):
        if not (self.c > 0 and self.b > 0 and 0 < self.alpha <= 1):
            raise DomainError("stretched exponential needs c, b > 0 and 0 < alpha <= 1")

    @property
    def g0(self) -> float:
        return self.c

    def log_g(self, r):
        return math.log(self.c) + self.b * np.power(r, self.alpha)

    def dlog_g(self, r):
        return self.alpha * self.b * np.power(r, self.alpha - 1.0)

    def d2log_g(self, r):
        a = self.alpha
        return a * (a - 1.0) * self.b * np.power(r, a - 2.0)

    def inverse(self, t):
        if t <= self.c:
            raise DomainError("g^-1(t) undefined for t <= c")
        return (math.log(t / self.c) / self.b) ** (1.0 / self.alpha)


class Custom(GrowthModel):
    """User-supplied g and g'.  ``log_g``/``dlog_g`` may be given directly to stay in log space."""

    def __init__(
        self,
        g: Callable[[float], float] | None = None,
        dg: Callable[[float], float] | None = None,
        *,
        log_g: Callable[[float], float] | None = None,
        dlog_g: Callable[[float], float] | None = None,
        g0: float = 0.0,
        name: str = "custom",
    ):
        if log_g is None and g is None:
            raise ValueError("need g or log_g")
        if dlog_g is None and dg is None:
            raise ValueError("need g' or (log g)'")
        self._g, self._dg, self._log_g, self._dlog_g = g, dg, log_g, dlog_g
        self.g0 = g0
        self.name = name

    def log_g(self, r):
        if self._log_g is not None:
            return self._log_g(r)
        return math.log(self._g(r))

    def dlog_g(self, r):
        if self._dlog_g is not None:
            return self._dlog_g(r)
        return self._dg(r) / self._g(r)

    def log_g_array(self, rs):
        try:
            out = np.asarray(self.log_g(rs), dtype=float)
            if out.shape == np.shape(rs):
                return out
        except (TypeError, ValueError):
            pass
        return np.array([self.log_g(float(r)) for r in rs])

    def dlog_g_array(self, rs):
        try:
            out = np.asarray(self.dlog_g(rs), dtype=float)
            if out.shape == np.shape(rs):
                return out
        except (TypeError, ValueError):
            pass
        return np.array([self.dlog_g(float(r)) for r in rs])

    def __repr__(self) -> str:
        return f"Custom({self.name})"


def _check_finite(*vals):
    for v in vals:
        if not math.isfinite(v):
            raise DomainError("growth model returned a non-finite value")


def log_tau(model: GrowthModel, r: float) -> float:
    h, dh = float(model.log_g(r)), float(model.dlog_g(r))
    _check_finite(h, dh)
    return h - math.log1p(r * dh)


def tau(model: GrowthModel, r: float) -> float:
    """tau(r) = g(r) / (1 + r g'(r)/g(r))."""
    if not r > 0:
        raise DomainError("tau needs r > 0")
    return math.exp(log_tau(model, r))


def _dlog_tau(model: GrowthModel, r: float) -> float:
    dh, d2h = float(model.dlog_g(r)), float(model.d2log_g(r))
    return dh - (dh + r * d2h) / (1.0 + r * dh)


def _objective(model: GrowthModel, log_t: float, r):
    """(1/r)(1 - t/g(r)), evaluated as -expm1(log t - log g)/r."""
    return -np.expm1(log_t - model.log_g_array(np.asarray(r, dtype=float))) / r


def _golden_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-15) -> tuple[float, float]:
    c, d = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(200):
        if abs(b - a) <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc > fd else (d, fd)


def grid_sup(model: GrowthModel, t: float, per_decade: int = 1024, r_min: float = 1e-8) -> tuple[float, float]:
    """Log-spaced scan of the U objective with golden-section refinement.

    Decades are scanned upward until the 1/r envelope rules out larger r.
    Among refined local maxima, ties go to the larger r.
    """
    log_t = math.log(t)
    best_val, best_r = -math.inf, None
    cands: list[tuple[float, float, float]] = []  # (value, log r_lo, log r_hi)
    lo = math.log10(r_min)
    while True:
        xs = lo + np.arange(-1, per_decade + 2) / per_decade  # one point of overlap on each side
        rs = 10.0 ** xs
        with np.errstate(over="ignore", invalid="ignore"):
            vals = _objective(model, log_t, rs)
        vals = np.where(np.isfinite(vals), vals, -np.inf)
        i = int(np.argmax(vals))
        # local maxima inside this decade
        interior = np.nonzero((vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:]))[0] + 1
        for j in interior:
            cands.append((float(vals[j]), float(xs[j - 1]), float(xs[j + 1])))
        if vals[i] > best_val:
            best_val, best_r = float(vals[i]), float(rs[i])
        if best_val > 0 and 10.0 ** (lo + 1) * best_val > 1:
            break
        lo += 1
        if lo > 300:
            raise DomainError("objective never became positive; t too large for this model")
    if not cands:
        return best_val, best_r
    top = max(v for v, _, _ in cands)
    refined = []
    for v, a, b in cands:
        if v < top - 1e-6 * abs(top):
            continue
        x, fx = _golden_max(lambda s: float(_objective(model, log_t, 10.0 ** s)), a, b)
        refined.append((fx, 10.0 ** x))
    val = max(fx for fx, _ in refined)
    r = max(rr for fx, rr in refined if fx >= val - 1e-13 * abs(val))
    return val, r


def _solve_rho(model: GrowthModel, t: float) -> tuple[float, str | None]:
    if not t > model.g0:
        raise DomainError(f"rho(t) needs t > g(0+) = {model.g0}")
    L = math.log(t)

    def F(r):
        return log_tau(model, r) - L

    hi = 1.0
    while F(hi) <= 0:
        hi *= 2.0
        if hi > 1e300:
            raise DomainError("tau(r) = t not bracketed")
    lo = hi / 2.0 if hi > 1.0 else 1.0
    while F(lo) > 0:
        lo /= 2.0
        if lo < 1e-300:
            raise DomainError("tau(r) = t has no root: t <= g(0+)")

    # tau must increase across the bracket and a little beyond for the root to be the largest one
    probe = np.geomspace(lo, 16.0 * hi, 65)
    fs = [F(float(r)) for r in probe]
    if any(b < a - 1e-12 * max(1.0, abs(a)) for a, b in zip(fs, fs[1:])):
        _, r = grid_sup(model, t)
        return r, "non-injective-tau"

    while hi - lo > 1e-4 * hi:
        mid = 0.5 * (lo + hi)
        if F(mid) > 0:
            hi = mid
        else:
            lo = mid
    r = 0.5 * (lo + hi)
    for _ in range(100):
        fr = F(r)
        if fr > 0:
            hi = r
        elif fr < 0:
            lo = r
        else:
            break
        d = _dlog_tau(model, r)
        step = fr / d if d > 0 else math.inf
        nr = r - step
        if not (lo < nr < hi):
            nr = 0.5 * (lo + hi)
        if abs(nr - r) <= 1e-12 * r:
            r = nr
            break
        r = nr
    return r, None


def rho(model: GrowthModel, t: float) -> float:
    """Largest maximiser of the U objective; solves tau(rho) = t when tau is injective."""
    r, diag = _solve_rho(model, t)
    if diag:
        warnings.warn(f"tau not monotone near t={t}; used grid scan", NonInjectiveTauWarning, stacklevel=2)
    return r


def u_continuous(model: GrowthModel, t: float, crosscheck: bool = False) -> TransformResult:
    r, diag = _solve_rho(model, float(t))
    value = float(_objective(model, math.log(t), r))
    if crosscheck:
        gv, _ = grid_sup(model, float(t))
        if abs(gv - value) > 1e-9 * abs(value):
            diag = "grid-crosscheck-mismatch"
    return TransformResult(value, r, diag is None, diag)


def transform_curve_discrete(table: GrowthTable, ts: Iterable) -> list[TransformResult]:
    return [u_discrete(table, t) for t in ts]


def transform_curve_continuous(model: GrowthModel, ts: Sequence[float], crosscheck_stride: int = 0) -> list[TransformResult]:
    """u_continuous along ``ts``; every ``crosscheck_stride``-th point is checked against a grid scan."""
    return [
        u_continuous(model, t, crosscheck=bool(crosscheck_stride) and i % crosscheck_stride == 0)
        for i, t in enumerate(ts)
    ]


# ---------------------------------------------------------------------------
# closed forms


def u_poly_closed(c: float, d: float, t: float) -> float:
    """U-transform of c r^d."""
    if not (c > 0 and d >= 1 and t > 0):
        raise DomainError("need c > 0, d >= 1, t > 0")
    return d * c ** (1.0 / d) / (d + 1.0) ** (1.0 + 1.0 / d) * t ** (-1.0 / d)


# coefficients of -W_{-1} around the branch point in p = sqrt(2(1 - e/x))
_BRANCH_SERIES = (1.0, 1.0, 1.0 / 3.0, 11.0 / 72.0, 43.0 / 540.0, 769.0 / 17280.0, 221.0 / 8505.0)


def lambert_f_log(log_x: float) -> float:
    """f(x) for x = exp(log_x): the root y >= 1 of y - log y = log x."""
    L = float(log_x)
    if not L >= 1.0:
        raise DomainError("lambert_f needs x >= e")
    delta = L - 1.0
    if delta < 1e-5:
        # Newton is ill-conditioned at the double root y = 1; use the branch-point series
        p = math.sqrt(2.0 * -math.expm1(-delta))
        return sum(c * p**k for k, c in enumerate(_BRANCH_SERIES))
    y = L + math.log(L) if L >= 2.0 else L + 1.0
    for _ in range(100):
        phi = y - math.log(y) - L
        step = phi * y / (y - 1.0)
        ny = y - step
        while ny <= 1.0:
            step *= 0.5
            ny = y - step
        if abs(ny - y) <= 1e-16 * ny:
            return ny
        y = ny
    return y


def lambert_f(x: float) -> float:
    """Inverse of y -> e^y / y on y >= 1; equals -W_{-1}(-1/x)."""
    if not x >= math.e:
        raise DomainError("lambert_f needs x >= e")
    return lambert_f_log(math.log(x))


def u_stretched_closed(c: float, b: float, alpha: float, t: float) -> float:
    """U-transform of c exp(b r^alpha) via f(lambda t), lambda = (alpha/c) e^{1/alpha}."""
    if not (c > 0 and b > 0 and 0 < alpha <= 1 and t > 0):
        raise DomainError("need c, b > 0, 0 < alpha <= 1, t > 0")
    log_lt = math.log(alpha / c) + 1.0 / alpha + math.log(t)
    if log_lt < 1.0:
        raise DomainError("lambda t < e: t too small for the closed form")
    F = lambert_f_log(log_lt)
    if alpha < 1 and alpha * F <= 1.0:
        raise DomainError("t <= c: the transform is infinite for alpha < 1")
    return (b / F) ** (1.0 / alpha) * (1.0 - 1.0 / (alpha * F)) ** (1.0 - 1.0 / alpha)


def stretched_inverse_bound(c: float, b: float, alpha: float, u: float) -> float:
    """Lower bound on t from u = U_g(t) for g = c exp(b r^alpha); equality when alpha = 1.

    From f(lambda t) >= b/u^alpha and lambda = (alpha/c) e^{1/alpha}:
    t >= (c u^alpha / (alpha b)) exp(b/u^alpha - 1/alpha).
    """
    ua = u**alpha
    return c * ua / (alpha * b) * math.exp(b / ua - 1.0 / alpha)


def folner_lower_exp(c: float, b: float, alpha: float, n: float) -> float:
    """Følner lower bound (c/(alpha b)) e^{-1/alpha} exp(b n^alpha) / n^alpha (u = 1/n above)."""
    na = n**alpha
    return c / (alpha * b) * math.exp(b * na - 1.0 / alpha) / na


# ---------------------------------------------------------------------------
# Legendre transform and the growth diagnostic


def legendre(f_eval: Callable, y: float, x_max: float, n_grid: int = 4097) -> TransformResult:
    """sup_{0 <= x <= x_max} (y x - f(x)); flagged when the sup sits at the window edge."""
    if y < 0 or x_max <= 0:
        raise DomainError("need y >= 0 and x_max > 0")
    xs = np.union1d(np.linspace(0.0, x_max, n_grid), np.geomspace(x_max * 1e-12, x_max, n_grid))
    try:
        fx = np.asarray(f_eval(xs), dtype=float)
        if fx.shape != xs.shape:
            raise ValueError
    except (TypeError, ValueError):
        fx = np.array([f_eval(float(x)) for x in xs])
    vals = y * xs - fx
    i = int(np.argmax(vals))
    if i == len(xs) - 1:
        return TransformResult(float(vals[i]), float(xs[i]), False, "window-edge")
    a, b = xs[max(i - 1, 0)], xs[i + 1]
    x, v = _golden_max(lambda s: y * s - float(f_eval(s)), float(a), float(b))
    if v < vals[i]:
        x, v = float(xs[i]), float(vals[i])
    return TransformResult(v, x, True)


@dataclass
class TSPGReport:
    """Heuristic finite-grid reading of the tame superpolynomial growth limits."""

    lambdas: tuple[float, ...]
    r_grid: np.ndarray
    log_sequences: dict  # lambda -> log of r g'(r) g(lambda r) / g(r)^2 on the grid
    checks: dict  # lambda -> (end condition met, monotone over last decade)
    verdict: bool
    heuristic: bool = True

    def summary(self) -> str:
        label = "pass" if self.verdict else "fail"
        return f"TSPG heuristic: {label} on r in [{self.r_grid[0]:.3g}, {self.r_grid[-1]:.3g}]"


def tspg_check(
    model: GrowthModel,
    lambdas: Sequence[float] = (1.0, 0.5),
    r_grid: Sequence[float] | None = None,
    t_hi: float = 1e3,
    t_lo: float = 1e-3,
) -> TSPGReport:
    if r_grid is None:
        r_grid = np.geomspace(1.0, 1e4, 401)
    rs = np.asarray(r_grid, dtype=float)
    h = model.log_g_array(rs)
    dh = model.dlog_g_array(rs)
    tail = rs >= rs[-1] / 10.0
    seqs, checks = {}, {}
    ok = True
    for lam in lambdas:
        seq = np.log(rs) + np.log(dh) + model.log_g_array(lam * rs) - h
        seqs[lam] = seq
        last = seq[tail]
        if lam == 1.0:
            end_ok = seq[-1] > math.log(t_hi)
            mono = bool(np.all(np.diff(last) >= 0))
        elif lam < 1.0:
            end_ok = seq[-1] < math.log(t_lo)
            mono = bool(np.all(np.diff(last) <= 0))
        else:
            raise DomainError("lambdas must lie in (0, 1]")
        checks[lam] = (bool(end_ok), mono)
        ok = ok and end_ok and mono
    return TSPGReport(tuple(lambdas), rs, seqs, checks, ok)
