"""Ball census in Cayley graphs: growth, spheres and inverse growth."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from .groups import Group

DEFAULT_ELEMENT_CAP = 2_000_000

INFINITY = math.inf


class ElementCapExceeded(MemoryError):
    """The BFS ball grew past the configured element cap."""

    def __init__(self, cap: int, radius_reached: int):
        super().__init__(f"ball exceeds {cap} elements beyond radius {radius_reached}")
        self.cap = cap
        self.radius_reached = radius_reached


class InsufficientRadius(LookupError):
    """The table is too short to answer; this is "unknown", not infinity."""


@dataclass(frozen=True)
class GrowthTable:
    gamma: tuple[int, ...]
    order: int | None = None
    norms: dict = field(default=None, compare=False, repr=False)  # element -> word norm

    def __post_init__(self):
        g = self.gamma
        if not g or g[0] != 1:
            raise ValueError("gamma(0) must be 1")
        if any(b < a for a, b in zip(g, g[1:])):
            raise ValueError("gamma must be nondecreasing")

    @property
    def radius(self) -> int:
        return len(self.gamma) - 1

    @property
    def sigma(self) -> tuple[int, ...]:
        g = self.gamma
        return (g[0],) + tuple(b - a for a, b in zip(g, g[1:]))

    @property
    def prefix(self) -> tuple[int, ...]:
        out, acc = [], 0
        for v in self.gamma:
            acc += v
            out.append(acc)
        return tuple(out)

    @property
    def saturated(self) -> bool:
        return self.order is not None and self.gamma[-1] == self.order

    def __getitem__(self, r: int) -> int:
        """gamma(r), extended by the group order past saturation."""
        if r < len(self.gamma):
            return self.gamma[r]
        if self.saturated:
            return self.order
        raise InsufficientRadius(f"gamma({r}) needs radius {r}, table has {self.radius}")

    def ball(self, r: int) -> list:
        """Members of B(r), when the table was built with membership retained."""
        if self.norms is None:
            raise ValueError("table carries no ball membership")
        if r > self.radius and not self.saturated:
            raise InsufficientRadius(f"ball of radius {r} exceeds table radius {self.radius}")
        return [x for x, k in self.norms.items() if k <= r]


def bfs_spheres(group: Group, radius: int, max_elements: int = DEFAULT_ELEMENT_CAP) -> dict:
    """Word norms of every element of B(radius), by breadth-first search from the identity."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    norms = {group.identity: 0}
    frontier = [group.identity]
    for k in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for y in group.neighbors(x):
                if y not in norms:
                    norms[y] = k
                    nxt.append(y)
        if len(norms) > max_elements:
            raise ElementCapExceeded(max_elements, k - 1)
        if not nxt:
            break
        frontier = nxt
    return norms


def growth_table(group: Group, radius: int, max_elements: int = DEFAULT_ELEMENT_CAP) -> GrowthTable:
    norms = bfs_spheres(group, radius, max_elements)
    counts = [0] * (radius + 1)
    for k in norms.values():
        counts[k] += 1
    gamma, acc = [], 0
    for c in counts:
        acc += c
        gamma.append(acc)
    return GrowthTable(tuple(gamma), group.order, norms)


def sphere_sizes(table: GrowthTable) -> tuple[int, ...]:
    return table.sigma


def inverse_growth(table: GrowthTable, t) -> int | float:
    """phi(t): least n with gamma(n) >= t; ``INFINITY`` when t exceeds a finite group's order."""
    if not t > 0:
        raise ValueError("inverse growth needs t > 0")
    for n, g in enumerate(table.gamma):
        if g >= t:
            return n
    if table.saturated:
        return INFINITY
    raise InsufficientRadius(f"gamma({table.radius}) = {table.gamma[-1]} < {t}")


def inverse_growth_strict(table: GrowthTable, t) -> int | float:
    """Least n with gamma(n) > t (the strict variant)."""
    if not t > 0:
        raise ValueError("inverse growth needs t > 0")
    for n, g in enumerate(table.gamma):
        if g > t:
            return n
    if table.saturated:
        return INFINITY
    raise InsufficientRadius(f"gamma({table.radius}) = {table.gamma[-1]} <= {t}")


def table_to_csv(table: GrowthTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "gamma", "sigma"])
    for n, (g, s) in enumerate(zip(table.gamma, table.sigma)):
        w.writerow([n, g, s])
    return buf.getvalue()


def table_from_csv(text: str, order: int | None = None) -> GrowthTable:
    rows = list(csv.DictReader(io.StringIO(text)))
    gamma = []
    for i, row in enumerate(rows):
        if int(row["n"]) != i:
            raise ValueError(f"row {i} has n={row['n']}")
        gamma.append(int(row["gamma"]))
    table = GrowthTable(tuple(gamma), order)
    if any(int(r["sigma"]) != s for r, s in zip(rows, table.sigma)):
        raise ValueError("sigma column inconsistent with gamma")
    return table
