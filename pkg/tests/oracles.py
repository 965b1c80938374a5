"""Reference computations that share no code paths with the package under test."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
from scipy import optimize, special


def word_census(group, n: int) -> dict:
    """Minimal word length of every element reachable by words of length <= n (full word expansion)."""
    gens = list(group.generators)
    norms = {group.identity: 0}
    for k in range(1, n + 1):
        for word in itertools.product(gens, repeat=k):
            x = group.identity
            for s in word:
                x = group.multiply(x, s)
            norms.setdefault(x, k)
    return norms


def census_growth(group, n: int) -> list[int]:
    norms = word_census(group, n)
    return [sum(1 for v in norms.values() if v <= r) for r in range(n + 1)]


def free_group_growth(q: int, n: int) -> int:
    if n == 0:
        return 1
    return 1 + 2 * q * ((2 * q - 1) ** n - 1) // (2 * q - 2) if q > 1 else 2 * n + 1


def brute_u(gamma, t, r_max: int) -> Fraction:
    """max over 1 <= r <= r_max of (1/r)(1 - t/gamma(r)), exact."""
    t = Fraction(t)
    return max(Fraction(1, r) * (1 - t / gamma(r)) for r in range(1, r_max + 1))


def brute_strong(gamma, t, r_max: int) -> Fraction:
    t = Fraction(t)
    best = None
    for r in range(1, r_max + 1):
        den = r * gamma(r) - sum(gamma(k) for k in range(r))
        term = (gamma(r) - t) / Fraction(den)
        best = term if best is None or term > best else best
    return best


def naive_connected_sets(group, k_max: int) -> list[set]:
    """Connected sets containing e, grown layer by layer and deduplicated as frozensets."""
    layer = {frozenset([group.identity])}
    out = [layer]
    for _ in range(k_max - 1):
        nxt = set()
        for D in layer:
            for x in D:
                for y in group.neighbors(x):
                    if y not in D:
                        nxt.add(D | {y})
        layer = nxt
        out.append(layer)
    return out


def lambert_oracle(x: float) -> float:
    """-W_{-1}(-1/x) via scipy."""
    return float(-special.lambertw(-1.0 / x, k=-1).real)


def grid_sup_oracle(g, t: float, r_lo: float = 1e-6, r_hi: float = 1e8, points: int = 40_001) -> float:
    """sup_r (1/r)(1 - t/g(r)) by a dense log grid followed by bounded Brent refinement.

    ``g`` must accept numpy arrays; overflow to inf is harmless here (t/g -> 0).
    """
    log_r = np.linspace(math.log(r_lo), math.log(r_hi), points)

    def objective(u):
        with np.errstate(over="ignore"):
            return (1.0 - t / g(np.exp(u))) * np.exp(-u)

    vals = objective(log_r)
    i = int(np.argmax(vals))
    a, b = log_r[max(i - 1, 0)], log_r[min(i + 1, points - 1)]
    res = optimize.minimize_scalar(lambda u: -float(objective(u)), bounds=(a, b), method="bounded", options={"xatol": 1e-14})
    return max(float(-res.fun), float(vals[i]))


def laplacian_spectrum(group) -> np.ndarray:
    elems = group.elements()
    idx = {x: i for i, x in enumerate(elems)}
    A = np.zeros((len(elems), len(elems)))
    for x in elems:
        for y in group.neighbors(x):
            A[idx[x], idx[y]] += 1
    return np.linalg.eigvalsh(np.diag(A.sum(axis=1)) - A)


def brute_cheeger(group) -> Fraction:
    elems = group.elements()
    n = len(elems)
    best = None
    for k in range(1, n // 2 + 1):
        for combo in itertools.combinations(elems, k):
            D = set(combo)
            e = sum(1 for x in D for y in group.neighbors(x) if y not in D)
            q = Fraction(e, k)
            best = q if best is None or q < best else best
    return best


def integer_folner_oracle(n: int) -> int:
    """Føl for Z from intervals: a singleton needs n <= 1, any larger set has >= 2 boundary points."""
    return 1 if n <= 1 else 2 * n
