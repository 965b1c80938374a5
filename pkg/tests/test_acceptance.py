"""The thirteen acceptance criteria, each at its stated tolerance and time budget.

Every criterion records one PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly with ``python tests/test_acceptance.py``.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from isoperf.cayley import GrowthTable, growth_table
from isoperf.groups import DihedralGroup, FreeAbelianGroup, FreeGroup, HeisenbergGroup, build_group, cyclic_spec
from isoperf.isoperimetry import (
    bound_report,
    cheeger,
    cheeger_report,
    folner_floor_poly,
    folner_lower_continuous,
    folner_value,
    free_outer_identity_check,
    laplacian_lambda1,
    loomis_whitney_check,
    subset_family,
    table_for,
    verify_main_inequality,
)
from isoperf.subsets import FiniteSubset, random_connected_subset
from isoperf.transform import (
    Custom,
    Polynomial,
    StretchedExp,
    lambert_f,
    legendre,
    stretched_inverse_bound,
    u_continuous,
    u_discrete,
    u_poly_closed,
    u_stretched_closed,
)

import conftest
from conftest import finite_test_groups, infinite_test_groups, model_zoo
from oracles import grid_sup_oracle, integer_folner_oracle

LAMBDAS = (1.5, 2, 3, 8)


class Check:
    """Collects failures for one criterion without stopping at the first."""

    def __init__(self):
        self.failures: list[str] = []
        self.count = 0

    def __call__(self, ok: bool, what: str):
        self.count += 1
        if not ok and len(self.failures) < 20:
            self.failures.append(what)
        return ok


def record(number: int, title: str, check: Check, elapsed: float, budget: float | None):
    over = budget is not None and elapsed > budget
    ok = not check.failures and not over
    status = "PASS" if ok else "FAIL"
    timing = f"{elapsed:.2f}s" + (f" (budget {budget:g}s)" if budget is not None else "")
    line = f"[criterion {number:2d}] {status}  {title}  checks={check.count}  {timing}"
    if check.failures:
        line += "  first failure: " + check.failures[0]
    if over:
        line += "  over time budget"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


# ---------------------------------------------------------------------------


def test_criterion_01_d4_tables():
    c, t0 = Check(), time.perf_counter()
    G = DihedralGroup(4)
    c(growth_table(G, 3).gamma == (1, 4, 7, 8), "gamma(D4)")
    fol = [folner_value(G, n).value for n in range(1, 9)]
    c(fol == [1, 7, 8, 8, 8, 8, 8, 8], f"Føl(D4) = {fol}")
    record(1, "D4 growth and Følner values", c, time.perf_counter() - t0, 1.0)


def test_criterion_02_integer_folner():
    c, t0 = Check(), time.perf_counter()
    Z = FreeAbelianGroup(1)
    for n in range(2, 21):
        res = folner_value(Z, n)
        c(res.exact and res.value == 2 * n == integer_folner_oracle(n), f"Føl_Z({n}) = {res}")
    record(2, "Z Følner function = 2n (window DP vs interval oracle)", c, time.perf_counter() - t0, 10.0)


def test_criterion_03_main_inequality_sweep():
    c, t0 = Check(), time.perf_counter()
    d4 = DihedralGroup(4)
    res = verify_main_inequality(d4, subset_family(d4, "all"), 8, name="D4 all")
    c(res.count == 255, f"D4 family size {res.count}")
    c(not res.violations, f"D4 violations {res.violations[:3]}")
    for G in (FreeAbelianGroup(2), FreeGroup(2), HeisenbergGroup()):
        res = verify_main_inequality(G, subset_family(G, "connected", size_max=8), 8, name="connected")
        c(not res.violations, f"{G!r} connected violations {res.violations[:3]}")
        res = verify_main_inequality(G, subset_family(G, "random", size_max=20, count=1000, seed=2024), 20, name="random")
        c(res.count == 1000 and not res.violations, f"{G!r} random violations {res.violations[:3]}")
    record(3, "inner/outer/strong inequality sweeps (D4 all, connected <= 8, 1000 random <= 20)", c, time.perf_counter() - t0, 120.0)


def test_criterion_04_bound_ordering():
    c, t0 = Check(), time.perf_counter()
    groups = {**finite_test_groups(), **infinite_test_groups()}
    ts = list(range(1, 41)) + [Fraction(7, 2), Fraction(101, 3)]
    for name, G in groups.items():
        table = table_for(G, max(ts), ball_min=max(LAMBDAS) * max(ts))
        for t in ts:
            rep = bound_report(table, G.degree, t, LAMBDAS)
            c(rep.strong >= rep.u_discrete >= rep.gromov >= rep.csc, f"{name} t={t} chain")
            c(rep.gromov == rep.lambda_bounds[2], f"{name} t={t} gromov != lambda 2")
            for lam in LAMBDAS:
                c(rep.u_discrete >= rep.lambda_bounds[lam], f"{name} t={t} lambda={lam}")
    record(4, "bound ordering strong >= U >= Gromov >= CSC and U >= lambda bounds", c, time.perf_counter() - t0, None)


def test_criterion_05_free_group_identity():
    c, t0 = Check(), time.perf_counter()
    rng = random.Random(5)
    for i in range(200):
        q = 2 + i % 2
        G = FreeGroup(q)
        D = random_connected_subset(G, rng.randint(1, 12), rng.getrandbits(64))
        v = free_outer_identity_check(q, D)
        c(v.connected and v.outer == (2 * q - 2) * len(D) + 2, f"q={q} |D|={len(D)} outer={v.outer}")
        c(v.bound_holds, f"q={q} connected ratio bound")
    disconnected = 0
    while disconnected < 200:
        q = 2 + disconnected % 2
        G = FreeGroup(q)
        members: set = set()
        for _ in range(rng.randint(2, 4)):
            anchor = G.evaluate([rng.randrange(G.degree) for _ in range(rng.randint(3, 12))])
            piece = random_connected_subset(G, rng.randint(1, 4), rng.getrandbits(64)).translate(anchor)
            members |= piece.members
        D = FiniteSubset.of(G, members)
        if D.connected_components < 2:
            continue
        disconnected += 1
        v = free_outer_identity_check(q, D)
        c(v.ratio >= Fraction(q - 1, q) + Fraction(v.components, q * len(D)), f"q={q} m={v.components} bound")
    record(5, "free groups: |d'D| = (2q-2)|D| + 2 and the component bound", c, time.perf_counter() - t0, None)


def test_criterion_06_loomis_whitney():
    c, t0 = Check(), time.perf_counter()
    Z2 = FreeAbelianGroup(2)
    pts = [(x, y) for x in range(3) for y in range(3)]
    for mask in range(1, 1 << 9):
        v = loomis_whitney_check(FiniteSubset.of(Z2, [p for i, p in enumerate(pts) if mask >> i & 1]))
        c(v.lw_holds and v.boundary_holds, f"3x3 mask {mask}")
    Z3 = FreeAbelianGroup(3)
    rng = random.Random(6)
    for _ in range(500):
        D = set()
        while len(D) < 12:
            D.add(tuple(rng.randint(-3, 3) for _ in range(3)))
        v = loomis_whitney_check(FiniteSubset.of(Z3, D))
        c(v.lw_holds and v.boundary_holds, f"Z3 set {sorted(D)}")
    record(6, "Loomis-Whitney and |dD| >= |D|^((d-1)/d)", c, time.perf_counter() - t0, None)


def test_criterion_07_closed_forms():
    c, t0 = Check(), time.perf_counter()
    for cc, d in ((1, 1), (2, 1), (1, 2), (3, 4)):
        model = Polynomial(float(cc), float(d))
        for t in np.geomspace(1e-2, 1e6, 50):
            closed = u_poly_closed(cc, d, t)
            solved = u_continuous(model, t).value
            oracle = grid_sup_oracle(lambda r: cc * r**d, t, r_lo=1e-4, r_hi=1e8, points=4001)
            c(abs(closed - solved) <= 1e-8 * closed, f"poly({cc},{d}) t={t:.3g} closed vs solver")
            c(abs(closed - oracle) <= 1e-8 * closed, f"poly({cc},{d}) t={t:.3g} closed vs grid")
    for cc, b, a in ((1.0, 1.0, 1.0), (1.0, math.log(2.0), 1.0), (1.0, 1.0, 0.5)):
        model = StretchedExp(cc, b, a)
        lam = a / cc * math.exp(1 / a)
        t_min = 1.01 * max(cc, math.e / lam)
        for t in np.geomspace(t_min, 1e12, 50):
            closed = u_stretched_closed(cc, b, a, t)
            solved = u_continuous(model, t).value
            oracle = grid_sup_oracle(lambda r: cc * np.exp(b * r**a), t, r_lo=1e-4, r_hi=1e5, points=4001)
            c(abs(closed - solved) <= 1e-8 * closed, f"exp({cc},{b:.3g},{a}) t={t:.3g} closed vs solver")
            c(abs(closed - oracle) <= 1e-8 * closed, f"exp({cc},{b:.3g},{a}) t={t:.3g} closed vs grid")
    record(7, "closed forms = tau/rho solver = grid sup (rel 1e-8)", c, time.perf_counter() - t0, 5.0)


def test_criterion_08_lambert():
    c, t0 = Check(), time.perf_counter()
    for log_x in np.linspace(1.0, 300 * math.log(10), 1000):
        x = math.exp(log_x)
        y = lambert_f(x)
        c(abs(math.exp(y) / y - x) <= 1e-12 * x, f"x=e^{log_x:.6g} residual")
    c(abs(lambert_f(math.e) - 1.0) <= 1e-12, "f(e) = 1")
    resid = [lambert_f(x) - math.log(x) - math.log(math.log(x)) for x in (1e3, 1e6, 1e9, 1e12)]
    c(all(b < a for a, b in zip(resid, resid[1:])), f"residual sequence {resid}")
    record(8, "Lambert f: e^f/f = x to 1e-12 x on [e, 1e300], f(e) = 1, log-log residual decreasing", c, time.perf_counter() - t0, None)


def test_criterion_09_legendre():
    c, t0 = Check(), time.perf_counter()
    g = Polynomial(1.0, 2.0)
    for t in np.geomspace(1e-3, 1e5, 20):
        closed = 2.0 / (3.0 * math.sqrt(3.0)) * t**-0.5
        lhs = t * legendre(lambda x: x**3, 1.0 / t, 20.0).value
        rhs = u_continuous(g, t).value
        c(abs(lhs - rhs) <= 1e-8 * closed, f"t={t:.3g}: {lhs} vs {rhs}")
        c(abs(lhs - closed) <= 1e-8 * closed and abs(rhs - closed) <= 1e-8 * closed, f"t={t:.3g} closed")
    record(9, "t L_f(1/t) = U_g(t) for g = r^2, f = x^3", c, time.perf_counter() - t0, None)


def test_criterion_10_lemma_properties():
    c, t0 = Check(), time.perf_counter()
    zoo = {k: m for k, (m, _) in model_zoo().items()}
    for name, m in zoo.items():
        ts = np.geomspace(max(1.5 * m.g0, 0.05), 1e9, 40)
        vals = [u_continuous(m, t).value for t in ts]
        c(all(b <= a * (1 + 1e-12) for a, b in zip(vals, vals[1:])), f"{name} (i) monotone in t")
        c(all(0 < v < math.inf for v in vals), f"{name} (iv)/(v) positive and finite")
    # (i), (ii) on growth tables
    table = growth_table(FreeAbelianGroup(2), 60)
    dv = [u_discrete(table, t).value for t in range(1, 200)]
    c(all(b <= a for a, b in zip(dv, dv[1:])), "discrete (i)")
    for R in range(1, 60, 3):
        short = GrowthTable(table.gamma[: R + 1])
        c(all(u_discrete(short, t).value <= u_discrete(table, t).value for t in range(1, 100, 7)), f"(ii) R={R}")
    # (iii)
    pairs = [
        (Polynomial(1.0, 2.0), Polynomial(2.0, 2.0)),
        (Polynomial(1.0, 1.0), StretchedExp(1.0, 1.0, 1.0)),
        (StretchedExp(1.0, 1.0, 0.5), StretchedExp(2.0, 1.0, 0.5)),
    ]
    for g1, g2 in pairs:
        for t in np.geomspace(2.5, 1e8, 15):
            c(u_continuous(g1, t).value <= u_continuous(g2, t).value * (1 + 1e-12), f"(iii) {g1} <= {g2} at {t:.3g}")
    small, big = growth_table(FreeAbelianGroup(1), 60), table
    c(all(u_discrete(small, t).value <= u_discrete(big, t).value for t in range(1, 60)), "(iii) discrete")
    # (vi) h(r) = c g(b r)
    for base in (Polynomial(1.0, 2.0), StretchedExp(1.0, 1.0, 1.0)):
        for b in (0.5, 2.0, 3.0):
            for cc in (0.5, 2.0, 3.0):
                h = Custom(
                    log_g=lambda r, b=b, cc=cc, base=base: math.log(cc) + base.log_g(b * r),
                    dlog_g=lambda r, b=b, base=base: b * base.dlog_g(b * r),
                    g0=cc * base.g0,
                )
                for t in np.geomspace(max(3.0 * cc * base.g0, 0.5), 1e6, 8):
                    lhs, rhs = u_continuous(h, t).value, b * u_continuous(base, t / cc).value
                    c(abs(lhs - rhs) <= 1e-9 * abs(rhs), f"(vi) {base} b={b} c={cc} t={t:.3g}")
    # comparison between N and R
    cases = [
        (growth_table(FreeAbelianGroup(1), 400), Polynomial(1.0, 1.0)),
        (growth_table(FreeAbelianGroup(2), 60), Polynomial(1.0, 2.0)),
        (growth_table(FreeGroup(2), 11), StretchedExp(1.0 / 3.0, math.log(3.0), 1.0)),
    ]
    for tab, model in cases:
        c(all(tab.gamma[k - 1] >= model.g(k) for k in range(1, tab.radius + 1)), f"hypothesis for {model}")
        for t in np.unique(np.geomspace(1, tab.gamma[-1] / 20, 25).astype(int)):
            if t <= model.g0:
                continue
            d = u_discrete(tab, int(t))
            c(d.certified and float(d.value) >= u_continuous(model, float(t)).value * (1 - 1e-12), f"N/R {model} t={t}")
    record(10, "transform lemma suite (monotonicity, positivity, scaling, N/R comparison)", c, time.perf_counter() - t0, None)


def test_criterion_11_sandwich():
    c, t0 = Check(), time.perf_counter()
    g = StretchedExp(1.0, 1.0, 1.0)
    ratios = [u_continuous(g, t).value * g.inverse(t) for t in (1e3, 1e6, 1e9, 1e12)]
    c(all(0 < q <= 1 for q in ratios), f"ratios {ratios}")
    c(all(b > a for a, b in zip(ratios, ratios[1:])), f"ratios increase {ratios}")
    record(11, "U_g(t) g^-1(t) in (0,1], increasing for g = e^r", c, time.perf_counter() - t0, None)


def test_criterion_12_cheeger_spectral():
    c, t0 = Check(), time.perf_counter()
    d4 = DihedralGroup(4)
    c(cheeger(d4)[0] == 1, "h(D4) = 1")
    c(abs(laplacian_lambda1(d4) - 2.0) <= 1e-9, "lambda1(D4) = 2")
    z6 = build_group(cyclic_spec(6))
    c(cheeger(z6)[0] == Fraction(2, 3), "h(Z/6) = 2/3")
    c(abs(laplacian_lambda1(z6) - (2 - 2 * math.cos(2 * math.pi / 6))) <= 1e-9, "lambda1(Z/6) = 1")
    for name, G in finite_test_groups().items():
        rep = cheeger_report(G)
        c(rep.buser_lower <= float(rep.h) + 1e-9, f"{name}: lambda1/2 <= h")
        c(float(rep.h) <= rep.buser_upper + 1e-9, f"{name}: h <= sqrt(2|S| lambda1)")
        c(rep.h >= rep.u_floor, f"{name}: h >= U(|G|/2)")
    record(12, "Cheeger constant, spectral gap, Buser-Cheeger and U floor on finite groups <= 64", c, time.perf_counter() - t0, 30.0)


def test_criterion_13_folner_floors():
    c, t0 = Check(), time.perf_counter()
    Z = FreeAbelianGroup(1)
    exact = [(DihedralGroup(4), n) for n in range(1, 9)]
    exact += [(Z, n) for n in range(1, 21)]
    exact += [(build_group(cyclic_spec(k)), n) for k in (4, 5, 6, 8, 10, 12) for n in range(1, k + 2)]
    for G, n in exact:
        v = folner_value(G, n).value
        c(u_discrete(table_for(G, v), v).value <= Fraction(1, n), f"{G!r} n={n}: U(Føl) <= 1/n")
        if G is Z:
            c(folner_floor_poly(1.0, 1.0, n) <= v, f"Z n={n}: n/4 <= Føl")
    for b in (1.0, math.log(2.0), 0.3):
        for n in (2, 5, 10, 40):
            if 1.0 / n >= b:
                # f(lambda t) = b n would fall below 1, outside the closed form's range
                continue
            t = stretched_inverse_bound(1.0, b, 1.0, 1.0 / n)
            back = u_continuous(StretchedExp(1.0, b, 1.0), t).value
            c(abs(back - 1.0 / n) <= 1e-9 / n, f"alpha=1 round trip b={b:.3g} n={n}: {back}")
            lo = folner_lower_continuous(StretchedExp(1.0, b, 1.0), n)
            c(abs(lo - t) <= 1e-9 * t, f"alpha=1 inversion b={b:.3g} n={n}")
    record(13, "Følner floors: U(Føl(n)) <= 1/n, n/4 <= Føl_Z(n), alpha = 1 equality", c, time.perf_counter() - t0, None)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
