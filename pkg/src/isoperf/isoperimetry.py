"""Isoperimetric bounds, verification sweeps, profiles, Følner values and the Cheeger constant."""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .cayley import (
    DEFAULT_ELEMENT_CAP,
    GrowthTable,
    InsufficientRadius,
    growth_table,
    inverse_growth,
)
from .groups import FreeAbelianGroup, FreeGroup, Group
from .subsets import FiniteSubset, all_subsets, enumerate_connected, random_connected_subset
from .transform import (
    DomainError,
    GrowthModel,
    lambert_f_log,
    strong_lower_bound,
    u_continuous,
    u_discrete,
)

DEFAULT_LAMBDAS = (1.5, 2, 3, 8)
EXHAUSTION_CAP = 1 << 20


class ResourceCapExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured budget."""


# ---------------------------------------------------------------------------
# growth tables sized for a job


def table_for(group: Group, t_max, ball_min=None, max_elements: int = DEFAULT_ELEMENT_CAP) -> GrowthTable:
    """Smallest doubling-radius table certifying U(t_max) and (optionally) with gamma(R) >= ball_min."""
    R = 2
    while True:
        table = growth_table(group, R, max_elements)
        ok = u_discrete(table, t_max).certified
        if ball_min is not None and not table.saturated:
            ok = ok and table.gamma[-1] >= ball_min
        if ok:
            return table
        R *= 2


# ---------------------------------------------------------------------------
# side-by-side bounds


@dataclass(frozen=True)
class BoundReport:
    t: Fraction | float
    u_discrete: Fraction | float
    strong: Fraction | float
    gromov: Fraction | float
    csc: Fraction | float
    lambda_bounds: dict
    folner_floor: float
    flags: dict = field(default_factory=dict)

    def as_row(self) -> dict:
        return {
            "t": self.t,
            "csc": self.csc,
            "gromov": self.gromov,
            "u": self.u_discrete,
            "strong": self.strong,
        }


def _phi_bound(table: GrowthTable, lam: Fraction, t: Fraction):
    """(1 - 1/lam) / phi(lam t), zero on the phi = infinity branch."""
    phi = inverse_growth(table, lam * t)
    if phi == math.inf:
        return Fraction(0)
    if phi == 0:
        raise DomainError("lambda * t <= 1: the corollary bound is vacuous")
    return (1 - 1 / lam) / phi


def bound_report(table: GrowthTable, S_size: int, t, lambdas: Sequence = DEFAULT_LAMBDAS) -> BoundReport:
    if not t >= 1:
        raise DomainError("bounds are reported for cardinalities t >= 1")
    t = Fraction(t)
    flags = {}
    u = u_discrete(table, t)
    if not u.certified:
        flags["u"] = u.diagnostic
    strong = strong_lower_bound(table, t)
    lam_bounds = {}
    for lam in sorted(set(lambdas) | {2}):
        try:
            lam_bounds[lam] = _phi_bound(table, Fraction(lam), t)
        except InsufficientRadius as exc:
            lam_bounds[lam] = math.nan
            flags[f"lambda={lam}"] = str(exc)
    try:
        phi2 = inverse_growth(table, 2 * t)
        csc = Fraction(0) if phi2 == math.inf else Fraction(1, 4 * S_size * phi2)
    except InsufficientRadius as exc:
        csc = math.nan
        flags["csc"] = str(exc)
    uval = u.value
    floor = math.inf if uval == 0 else float(1 / uval)
    return BoundReport(t, uval, strong.value, lam_bounds[2], csc, lam_bounds, floor, flags)


# ---------------------------------------------------------------------------
# verification sweeps


@dataclass(frozen=True, order=True)
class Violation:
    members: tuple
    check: str
    lhs: Fraction
    rhs: Fraction


@dataclass
class SweepResult:
    family: str
    count: int
    violations: list

    def to_json(self, group: Group) -> dict:
        return {
            "family": self.family,
            "count": self.count,
            "violations": [
                {
                    "members": [group.encode(x) for x in v.members],
                    "check": v.check,
                    "lhs": float(v.lhs),
                    "rhs": float(v.rhs),
                }
                for v in self.violations
            ],
        }


def subset_family(group: Group, kind: str, size_max: int = 8, count: int = 1000, seed: int = 0) -> Iterator[FiniteSubset]:
    if kind == "all":
        yield from all_subsets(group)
    elif kind == "connected":
        yield from enumerate_connected(group, size_max)
    elif kind == "random":
        rng = random.Random(seed)
        for _ in range(count):
            size = rng.randint(1, size_max)
            yield random_connected_subset(group, size, rng.getrandbits(64))
    else:
        raise ValueError(f"unknown family {kind!r}")


def _check_members(group: Group, members, u_by_size, strong_by_size) -> list[Violation]:
    D = FiniteSubset(group, frozenset(members))
    n = len(D)
    u, strong = u_by_size[n], strong_by_size[n]
    inner = Fraction(len(D.inner_boundary), n)
    outer = Fraction(len(D.outer_boundary), n)
    out = []
    if inner < u:
        out.append(("inner>=U", inner, u))
    if outer < u:
        out.append(("outer>=U", outer, u))
    if inner < strong:
        out.append(("inner>=strong", inner, strong))
    if not out:
        return []
    key = tuple(D.sorted_members())
    return [Violation(key, c, lhs, rhs) for c, lhs, rhs in out]


def _check_chunk(args) -> tuple[int, list[Violation]]:
    group, chunk, u_by_size, strong_by_size = args
    viols = []
    for members in chunk:
        viols.extend(_check_members(group, members, u_by_size, strong_by_size))
    return len(chunk), viols


def verify_main_inequality(
    group: Group,
    family: Iterable[FiniteSubset],
    size_max: int,
    table: GrowthTable | None = None,
    name: str = "family",
    threads: int = 1,
    chunk_size: int = 4096,
) -> SweepResult:
    """Check |dD|/|D| >= U(|D|), |d'D|/|D| >= U(|D|) and |dD|/|D| >= strong(|D|) over a family."""
    if table is None:
        table = table_for(group, size_max)
    u_by_size, strong_by_size = {}, {}
    for k in range(1, size_max + 1):
        u = u_discrete(table, k)
        if not u.certified:
            raise InsufficientRadius(f"U({k}) not certified by table of radius {table.radius}")
        u_by_size[k] = u.value
        strong_by_size[k] = strong_lower_bound(table, k).value
    count = 0
    violations: list[Violation] = []
    if threads <= 1:
        for D in family:
            count += 1
            violations.extend(_check_members(group, D.members, u_by_size, strong_by_size))
    else:
        def chunks():
            buf = []
            for D in family:
                buf.append(D.members)
                if len(buf) == chunk_size:
                    yield (group, buf, u_by_size, strong_by_size)
                    buf = []
            if buf:
                yield (group, buf, u_by_size, strong_by_size)

        with ProcessPoolExecutor(max_workers=threads) as pool:
            for n, v in pool.map(_check_chunk, chunks()):
                count += n
                violations.extend(v)
    return SweepResult(name, count, sorted(violations))


# ---------------------------------------------------------------------------
# exhaustive data for small finite groups


@dataclass
class FiniteCensus:
    """Per-subset statistics for every subset of a finite group, indexed by bitmask."""

    elements: list
    size: np.ndarray
    inner: np.ndarray
    edges: np.ndarray
    displacement: np.ndarray  # (|S|, 2^N): |{x in D : s x not in D}|

    def subset(self, mask: int, group: Group) -> FiniteSubset:
        return FiniteSubset(group, frozenset(x for i, x in enumerate(self.elements) if mask >> i & 1))


def finite_census(group: Group, cap: int = EXHAUSTION_CAP) -> FiniteCensus:
    if not group.is_finite:
        raise ValueError("census needs a finite group")
    elems = group.elements()
    N = len(elems)
    if (1 << N) > cap:
        raise ResourceCapExceeded(f"2^{N} subsets exceed the exhaustion cap {cap}")
    index = {x: i for i, x in enumerate(elems)}
    nbr = np.array([[index[y] for y in group.neighbors(x)] for x in elems], dtype=np.int64)
    masks = np.arange(1 << N, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(N)) & 1).astype(bool)
    size = bits.sum(axis=1)
    inner = np.zeros(1 << N, dtype=np.int64)
    edges = np.zeros(1 << N, dtype=np.int64)
    disp = np.zeros((group.degree, 1 << N), dtype=np.int64)
    for x in range(N):
        inside = bits[:, x]
        leaving = ~bits[:, nbr[x]] & inside[:, None]  # (2^N, |S|)
        inner += leaving.any(axis=1)
        edges += leaving.sum(axis=1)
        disp += leaving.T
    return FiniteCensus(elems, size, inner, edges, disp)


# ---------------------------------------------------------------------------
# isoperimetric profile


@dataclass(frozen=True)
class ProfilePoint:
    m: int
    boundary_min: int
    witness: FiniteSubset
    scope: str  # exact_finite | exact_connected_dp | upper_bound_only


def connected_profile(group: Group, m_max: int, radius_cap: int | None = None, budget: int | None = None) -> dict[int, ProfilePoint]:
    """Exact minimum inner boundary over connected sets containing e, for each size <= m_max."""
    best: dict[int, tuple[int, FiniteSubset]] = {}
    seen = 0
    exhausted = True
    for D in enumerate_connected(group, m_max, radius_cap):
        seen += 1
        if budget is not None and seen > budget:
            exhausted = False
            break
        b = len(D.inner_boundary)
        k = len(D)
        if k not in best or b < best[k][0]:
            best[k] = (b, D)
    scope = "exact_connected_dp" if exhausted else "upper_bound_only"
    return {k: ProfilePoint(k, b, D, scope) for k, (b, D) in sorted(best.items())}


def _spread_elements(group: Group, count: int, spacing: int) -> list:
    """e, s^K, s^2K, ... for the first generator s; far apart in the infinite families."""
    s = group.generators[0]
    step = group.identity
    for _ in range(spacing):
        step = group.multiply(step, s)
    out, g = [], group.identity
    for _ in range(count):
        out.append(g)
        g = group.multiply(g, step)
    return out


def profile(group: Group, m: int, cp: dict[int, ProfilePoint] | None = None) -> ProfilePoint:
    """I_S(m) = min |dD| over |D| = m.

    Finite groups with at most 16 elements are exhausted outright.  For infinite
    groups the components of a minimiser are pairwise non-adjacent, so boundaries
    add and I_S is the cheapest partition of m into connected pieces; the witness
    places the pieces far apart along the first generator.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if group.is_finite:
        if group.order > 16:
            raise ResourceCapExceeded("exact finite profile is limited to groups of order <= 16")
        if m > group.order:
            raise ValueError("m exceeds the group order")
        census = finite_census(group)
        masks = np.nonzero(census.size == m)[0]
        i = int(masks[np.argmin(census.inner[masks])])
        return ProfilePoint(m, int(census.inner[i]), census.subset(i, group), "exact_finite")
    if not isinstance(group, (FreeGroup, FreeAbelianGroup)) and group.kind not in ("heisenberg", "lamplighter"):
        raise ValueError("partition DP needs an infinite group with an infinite-order first generator")
    if cp is None or max(cp) < m:
        cp = connected_profile(group, m)
    cost = [0] + [math.inf] * m
    choice = [0] * (m + 1)
    for k in range(1, m + 1):
        for j in range(1, k + 1):
            c = cp[j].boundary_min + cost[k - j]
            if c < cost[k]:
                cost[k], choice[k] = c, j
    parts = []
    k = m
    while k:
        parts.append(choice[k])
        k -= choice[k]
    anchors = _spread_elements(group, len(parts), 2 * m + 2)
    members: set = set()
    for j, g in zip(parts, anchors):
        members |= cp[j].witness.translate(g).members
    scope = "exact_connected_dp" if all(cp[j].scope == "exact_connected_dp" for j in range(1, m + 1)) else "upper_bound_only"
    return ProfilePoint(m, int(cost[m]), FiniteSubset(group, frozenset(members)), scope)


# ---------------------------------------------------------------------------
# Følner functions


@dataclass(frozen=True)
class FolnerResult:
    n: Fraction | int
    lower: int | float
    upper: int | float
    scope: str
    witness: FiniteSubset | None = None

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self):
        if not self.exact:
            raise ValueError(f"Følner value unresolved: {self.lower} <= Føl({self.n}) <= {self.upper}")
        return self.lower


def _is_integers(group: Group) -> bool:
    return (isinstance(group, FreeAbelianGroup) and group.d == 1) or (isinstance(group, FreeGroup) and group.q == 1)


def integer_window_profile(W: int) -> np.ndarray:
    """min |dD| over D inside [-W, W] of each size k (index k), by a transfer-matrix DP.

    State is (x-1 in D, x in D); point x is charged once x+1 is decided.  Points
    outside the window are outside D, so the boundary is the one taken in Z.
    """
    L = 2 * W + 1
    INF = 10**9
    dp = {(0, 0): np.full(L + 1, INF, dtype=np.int64)}
    dp[(0, 0)][0] = 0
    for _ in range(L):
        nxt: dict = {}
        for (a, b), arr in dp.items():
            for c in (0, 1):
                charge = 1 if b and (not a or not c) else 0
                new = np.full(L + 1, INF, dtype=np.int64)
                if c:
                    new[1:] = arr[:-1] + charge
                else:
                    new[:] = arr + charge
                key = (b, c)
                nxt[key] = np.minimum(nxt[key], new) if key in nxt else new
        dp = nxt
    out = np.full(L + 1, INF, dtype=np.int64)
    for (a, b), arr in dp.items():
        out = np.minimum(out, arr + (1 if b else 0))
    return out


def folner_lower_bound(group: Group, x, max_elements: int = DEFAULT_ELEMENT_CAP) -> int:
    """Least integer t with U_gamma(t) <= 1/x; a lower bound for Føl(x) by monotonicity of U."""
    target = 1 / Fraction(x)

    def small_enough(t):
        return u_discrete(table_for(group, t, max_elements=max_elements), t).value <= target

    hi = 1
    while not small_enough(hi):
        hi *= 2
    lo = hi // 2  # small_enough(lo) is False, or lo == 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if small_enough(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _balls(group: Group, cap: int) -> Iterator[FiniteSubset]:
    """B(0), B(1), ... while the ball stays under ``cap`` elements."""
    members = {group.identity}
    frontier = [group.identity]
    while len(members) <= cap:
        yield FiniteSubset(group, frozenset(members))
        nxt = []
        for x in frontier:
            for y in group.neighbors(x):
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        if not nxt:
            return
        frontier = nxt


def folner_value(
    group: Group,
    n,
    strategy: str = "auto",
    size_max: int = 8,
    samples: int = 200,
    seed: int = 0,
    ball_cap: int = 200_000,
) -> FolnerResult:
    """Føl(n) = min{|D| : |D| >= n |dD|}: exact where possible, otherwise certified bounds."""
    n = Fraction(n)
    if n <= 0:
        raise ValueError("n must be positive")
    if strategy == "auto":
        if group.is_finite:
            strategy = "exhaustive"
        elif _is_integers(group):
            strategy = "window"
        else:
            strategy = "search"
    if strategy == "exhaustive":
        census = finite_census(group)
        ok = np.nonzero(census.size >= n.numerator * census.inner / n.denominator)[0]
        ok = ok[ok > 0]
        i = int(ok[np.argmin(census.size[ok])])
        k = int(census.size[i])
        return FolnerResult(n, k, k, "exact_finite", census.subset(i, group))
    if strategy == "window":
        if not _is_integers(group):
            raise ValueError("window strategy is for Z")
        # the minimiser has size <= 2n (an interval works); its components pack into a
        # window of length 2|D| - 1 <= 4n without changing the boundary
        W = max(4 * math.ceil(n), 1)
        prof = integer_window_profile(W)
        for k in range(1, len(prof)):
            if k >= n * prof[k]:
                return FolnerResult(n, k, k, "exact_window")
        raise ResourceCapExceeded("window too small")
    if strategy != "search":
        raise ValueError(f"unknown strategy {strategy!r}")
    if isinstance(group, FreeGroup) and group.q >= 2 and n > 1 and 1 / n <= Fraction(group.q - 1, group.q):
        # every finite D has |dD|/|D| > (q-1)/q >= 1/n
        return FolnerResult(n, math.inf, math.inf, "certified_infinite")
    lower = folner_lower_bound(group, n)
    upper, witness = math.inf, None

    def consider(D: FiniteSubset):
        nonlocal upper, witness
        if len(D) >= n * len(D.inner_boundary) and len(D) < upper:
            upper, witness = len(D), D

    for B in _balls(group, ball_cap):
        consider(B)
        if upper < math.inf:
            break
    for D in enumerate_connected(group, size_max):
        consider(D)
    rng = random.Random(seed)
    for _ in range(samples):
        consider(random_connected_subset(group, rng.randint(1, 4 * size_max), rng.getrandbits(64)))
    scope = "exact_search" if lower == upper else "bounds"
    return FolnerResult(n, lower, upper, scope, witness)


def folner_phi(group: Group, n, size_max: int = 8, samples: int = 200, seed: int = 0, ball_cap: int = 200_000) -> FolnerResult:
    """Phi(n) = min{|D| : n |s^-1 D sym-diff D| <= |D| for every s in S}."""
    n = Fraction(n)
    if group.is_finite:
        census = finite_census(group)
        worst = 2 * census.displacement.max(axis=0)
        ok = np.nonzero(n.numerator * worst <= census.size * n.denominator)[0]
        ok = ok[ok > 0]
        i = int(ok[np.argmin(census.size[ok])])
        k = int(census.size[i])
        return FolnerResult(n, k, k, "exact_finite", census.subset(i, group))
    # Føl(n/|S|) <= Phi(n)
    lower = folner_value(group, n / group.degree, size_max=size_max, samples=samples, seed=seed).lower
    upper, witness = math.inf, None

    def consider(D: FiniteSubset):
        nonlocal upper, witness
        worst = max(D.symmetric_difference_size(s) for s in group.generators)
        if n * worst <= len(D) and len(D) < upper:
            upper, witness = len(D), D

    if lower < math.inf:
        for B in _balls(group, ball_cap):
            consider(B)
            if upper < math.inf:
                break
    for D in enumerate_connected(group, size_max):
        consider(D)
    return FolnerResult(n, lower, upper, "exact_search" if lower == upper else "bounds", witness)


# ---------------------------------------------------------------------------
# Cheeger constant and spectrum


def cheeger(group: Group, cap: int = EXHAUSTION_CAP) -> tuple[Fraction, FiniteSubset]:
    """h = min |E(D)|/|D| over 0 < |D| <= |G|/2, with a minimising witness.

    Up to 2^20 subsets are exhausted directly.  Larger groups use connected sets
    through e: edge boundaries of non-adjacent components add, so a connected
    component of any minimiser does at least as well, and right translation moves
    it onto e.
    """
    if not group.is_finite:
        raise ValueError("Cheeger constant is defined for finite groups")
    N = group.order
    if (1 << N) <= cap:
        census = finite_census(group, cap)
        ok = np.nonzero((census.size > 0) & (2 * census.size <= N))[0]
        best_i, best = None, None
        for i in ok:
            q = Fraction(int(census.edges[i]), int(census.size[i]))
            if best is None or q < best:
                best_i, best = int(i), q
        return best, census.subset(best_i, group)
    best, witness, seen = None, None, 0
    for D in enumerate_connected(group, N // 2):
        seen += 1
        if seen > cap:
            raise ResourceCapExceeded(f"more than {cap} connected subsets to examine")
        q = Fraction(D.edge_boundary_count, len(D))
        if best is None or q < best:
            best, witness = q, D
    return best, witness


def laplacian_matrix(group: Group) -> np.ndarray:
    elems = group.elements()
    index = {x: i for i, x in enumerate(elems)}
    N = len(elems)
    L = np.zeros((N, N))
    for i, x in enumerate(elems):
        for y in group.neighbors(x):
            L[i, index[y]] -= 1.0
        L[i, i] += group.degree
    return L


def jacobi_eigenvalues(A: np.ndarray, tol: float = 1e-10, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations (ascending)."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(np.diag(A))


def laplacian_lambda1(group: Group) -> float:
    """Smallest nonzero eigenvalue of the combinatorial Laplacian (0 is simple: the graph is connected)."""
    if not group.is_finite or group.order > 512:
        raise ResourceCapExceeded("Laplacian spectrum is limited to finite groups of order <= 512")
    return float(jacobi_eigenvalues(laplacian_matrix(group))[1])


@dataclass(frozen=True)
class CheegerReport:
    h: Fraction
    witness: FiniteSubset
    lambda1: float
    buser_lower: float  # lambda1 / 2
    buser_upper: float  # sqrt(2 |S| lambda1)
    u_floor: Fraction  # U_gamma(|G|/2)

    def holds(self, tol: float = 1e-9) -> bool:
        return (
            self.buser_lower <= float(self.h) + tol
            and float(self.h) <= self.buser_upper + tol
            and self.h >= self.u_floor
        )


def cheeger_report(group: Group) -> CheegerReport:
    h, witness = cheeger(group)
    lam = laplacian_lambda1(group)
    table = growth_table(group, group.order)
    return CheegerReport(
        h, witness, lam, lam / 2.0, math.sqrt(2 * group.degree * lam),
        u_discrete(table, Fraction(group.order, 2)).value,
    )


# ---------------------------------------------------------------------------
# free groups and free abelian groups


@dataclass(frozen=True)
class FreeGroupVerdict:
    connected: bool
    outer: int
    expected_outer: int | None
    ratio: Fraction
    bound: Fraction
    components: int

    @property
    def identity_holds(self) -> bool | None:
        return None if not self.connected else self.outer == self.expected_outer

    @property
    def bound_holds(self) -> bool:
        return self.ratio >= self.bound

    @property
    def ok(self) -> bool:
        return self.bound_holds and self.identity_holds is not False


def free_outer_identity_check(q: int, D: FiniteSubset) -> FreeGroupVerdict:
    """|d'D| = (2q-2)|D| + 2 for connected D; |dD|/|D| >= (q-1)/q + m/(q|D|) always."""
    if not (isinstance(D.group, FreeGroup) and D.group.q == q):
        raise ValueError(f"subset does not live in the free group of rank {q}")
    n = len(D)
    m = D.connected_components
    connected = m == 1
    return FreeGroupVerdict(
        connected,
        len(D.outer_boundary),
        (2 * q - 2) * n + 2 if connected else None,
        Fraction(len(D.inner_boundary), n),
        Fraction(q - 1, q) + Fraction(m, q * n),
        m,
    )


@dataclass(frozen=True)
class LoomisWhitneyVerdict:
    size: int
    projections: tuple[int, ...]
    boundary: int

    @property
    def d(self) -> int:
        return len(self.projections)

    @property
    def lw_holds(self) -> bool:
        return self.size ** (self.d - 1) <= math.prod(self.projections)

    @property
    def projection_bound_holds(self) -> bool:
        return self.boundary >= max(self.projections)

    @property
    def boundary_holds(self) -> bool:
        # |dD| >= |D|^{(d-1)/d}, compared in integers
        return self.boundary**self.d >= self.size ** (self.d - 1)

    @property
    def ok(self) -> bool:
        return self.lw_holds and self.projection_bound_holds and self.boundary_holds


def loomis_whitney_check(D: FiniteSubset) -> LoomisWhitneyVerdict:
    if not isinstance(D.group, FreeAbelianGroup):
        raise ValueError("Loomis-Whitney check needs a subset of Z^d")
    d = D.group.d
    proj = tuple(len({x[:j] + x[j + 1:] for x in D.members}) for j in range(d))
    return LoomisWhitneyVerdict(len(D), proj, len(D.inner_boundary))


# ---------------------------------------------------------------------------
# corollary bounds


def satisfies_growth_hypothesis(table: GrowthTable, g) -> bool:
    """gamma(n-1) >= g(n) for n = 1..R+1 (g any callable)."""
    return all(table.gamma[n - 1] >= g(n) for n in range(1, table.radius + 2))


def poly_growth_bound(C: float, d: float, t: float) -> float:
    """Isoperimetric bound when gamma(n-1) >= C n^d."""
    return C ** (1.0 / d) * d / (d + 1.0) ** (1.0 + 1.0 / d) * t ** (-1.0 / d)


def exp_growth_bound(C: float, b: float, alpha: float, t: float) -> float:
    """(b / f(lambda t))^{1/alpha}: the explicit lower bound when gamma(n-1) >= C exp(b n^alpha)."""
    log_lt = math.log(alpha / C) + 1.0 / alpha + math.log(t)
    F = lambert_f_log(log_lt)
    if alpha * F <= 1.0:
        raise DomainError("t <= C: bound undefined")
    return (b / F) ** (1.0 / alpha)


def folner_floor_poly(C: float, d: float, n: float) -> float:
    """Føl(n) >= C d^d / (1+d)^{1+d} n^d when gamma(n-1) >= C n^d."""
    return C * d**d / (1.0 + d) ** (1.0 + d) * n**d


def folner_lower_continuous(model: GrowthModel, n: float) -> float:
    """Least t with U_g(t) <= 1/n, by bisection in log t (U_g is non-increasing)."""
    target = 1.0 / n
    lo = model.g0 if model.g0 > 0 else 1e-12
    lo *= 1.0 + 1e-12

    def u(t):
        return u_continuous(model, t).value

    if u(lo) <= target:
        return lo
    a, b = math.log(lo), max(math.log(2.0 * lo), 1.0)
    while u(math.exp(b)) > target:
        a, b = b, 2.0 * b
        if b > 700.0:
            raise DomainError("Følner lower bound exceeds double range")
    for _ in range(200):
        mid = 0.5 * (a + b)
        if u(math.exp(mid)) > target:
            a = mid
        else:
            b = mid
        if b - a <= 1e-15 * max(1.0, abs(b)):
            break
    return math.exp(b)


def folner_asymptotic_ratio(g_model: GrowthModel, n_list: Sequence[float], lower_bounds: Sequence[float] | None = None) -> list[float]:
    """g^{-1}(Føl_lower(n)) / n along ``n_list``; data only (its liminf is the open quantity K_g)."""
    if lower_bounds is None:
        lower_bounds = [folner_lower_continuous(g_model, n) for n in n_list]
    out = []
    for n, t in zip(n_list, lower_bounds):
        try:
            out.append(g_model.inverse(t) / n)
        except DomainError:
            out.append(0.0)
    return out


def ball_boundary_ratios(group: Group, radius: int) -> list[Fraction]:
    """|dB(n)|/|B(n)| for n = 0..radius."""
    table = growth_table(group, radius + 1)
    return [
        Fraction(len(FiniteSubset(group, frozenset(table.ball(r))).inner_boundary), table.gamma[r])
        for r in range(radius + 1)
    ]
