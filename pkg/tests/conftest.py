import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from isoperf.groups import (  # noqa: E402
    DihedralGroup,
    FreeAbelianGroup,
    FreeGroup,
    HeisenbergGroup,
    LamplighterGroup,
    build_group,
    cyclic_spec,
)
from isoperf.transform import Custom, Polynomial, StretchedExp  # noqa: E402

KLEIN = {
    "kind": "cayley_table",
    "table": [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
    "generators": [1, 2],
}


def quaternion_spec() -> dict:
    # elements 1, i, j, k, -1, -i, -j, -k as (sign, unit)
    units = ["1", "i", "j", "k"]
    mul = {
        ("1", u): (1, u) for u in units
    }
    mul.update({(u, "1"): (1, u) for u in units})
    mul.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })
    elems = [(1, u) for u in units] + [(-1, u) for u in units]
    index = {e: n for n, e in enumerate(elems)}
    table = []
    for a in elems:
        row = []
        for b in elems:
            s, u = mul[(a[1], b[1])]
            row.append(index[(a[0] * b[0] * s, u)])
        table.append(row)
    gens = [index[(1, "i")], index[(-1, "i")], index[(1, "j")], index[(-1, "j")]]
    return {"kind": "cayley_table", "table": table, "generators": gens}


def torus_spec(a: int, b: int) -> dict:
    elems = [(x, y) for x in range(a) for y in range(b)]
    index = {e: n for n, e in enumerate(elems)}
    table = [[index[((p[0] + q[0]) % a, (p[1] + q[1]) % b)] for q in elems] for p in elems]
    gens = sorted({index[(1 % a, 0)], index[(a - 1, 0)], index[(0, 1 % b)], index[(0, b - 1)]})
    return {"kind": "cayley_table", "table": table, "generators": gens}


def finite_test_groups():
    """Finite groups of at most 64 elements used across the suite."""
    out = {f"D{n}": DihedralGroup(n) for n in range(2, 7)}
    out.update({f"Z/{n}": build_group(cyclic_spec(n)) for n in (2, 3, 4, 5, 6, 8, 12, 16, 32, 64)})
    out["klein"] = build_group(KLEIN)
    out["Q8"] = build_group(quaternion_spec())
    out["torus4x4"] = build_group(torus_spec(4, 4))
    return out


def infinite_test_groups():
    return {
        "Z": FreeAbelianGroup(1),
        "Z2": FreeAbelianGroup(2),
        "Z3": FreeAbelianGroup(3),
        "F2": FreeGroup(2),
        "F3": FreeGroup(3),
        "heisenberg": HeisenbergGroup(),
        "lamplighter": LamplighterGroup(),
    }


@pytest.fixture(scope="session")
def d4():
    return DihedralGroup(4)


@pytest.fixture(scope="session")
def finite_groups():
    return finite_test_groups()


@pytest.fixture(scope="session")
def infinite_groups():
    return infinite_test_groups()


def model_zoo() -> dict:
    """name -> (growth model, the same g written directly with numpy)."""
    return {
        "poly(1,1)": (Polynomial(1.0, 1.0), lambda r: r),
        "poly(2,1)": (Polynomial(2.0, 1.0), lambda r: 2.0 * r),
        "poly(1,2)": (Polynomial(1.0, 2.0), lambda r: r**2),
        "poly(3,4)": (Polynomial(3.0, 4.0), lambda r: 3.0 * r**4),
        "exp(1,1,1)": (StretchedExp(1.0, 1.0, 1.0), np.exp),
        "exp(1,ln2,1)": (StretchedExp(1.0, math.log(2.0), 1.0), lambda r: 2.0**r),
        "exp(1,1,0.5)": (StretchedExp(1.0, 1.0, 0.5), lambda r: np.exp(np.sqrt(r))),
        "exp(2,0.5,0.7)": (StretchedExp(2.0, 0.5, 0.7), lambda r: 2.0 * np.exp(0.5 * r**0.7)),
        "custom r^2+r": (Custom(lambda r: r * r + r, lambda r: 2 * r + 1, name="r^2+r"), lambda r: r * r + r),
    }


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
