"""Finite subsets of a group and their boundaries.

Boundaries use left multiplication throughout: ``x`` in ``D`` is an inner
boundary point when ``s*x`` leaves ``D`` for some generator ``s``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .groups import Element, Group


@dataclass(frozen=True)
class BoundaryData:
    inner: frozenset
    outer: frozenset
    edge_count: int
    components: int


@dataclass(frozen=True, eq=False)
class FiniteSubset:
    group: Group
    members: frozenset

    @classmethod
    def of(cls, group: Group, members: Iterable[Element]) -> "FiniteSubset":
        return cls(group, frozenset(members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteSubset)
            and other.group is self.group
            and other.members == self.members
        )

    def __hash__(self) -> int:
        return hash(self.members)

    @cached_property
    def inner_boundary(self) -> frozenset:
        D, nb = self.members, self.group.neighbors
        return frozenset(x for x in D if any(y not in D for y in nb(x)))

    @cached_property
    def outer_boundary(self) -> frozenset:
        D, nb = self.members, self.group.neighbors
        # y = s x with x in D  <=>  x = s^-1 y; S is symmetric so neighbours of D are the outer points
        return frozenset(y for x in D for y in nb(x) if y not in D)

    @cached_property
    def edge_boundary_count(self) -> int:
        D, nb = self.members, self.group.neighbors
        return sum(1 for x in D for y in nb(x) if y not in D)

    @cached_property
    def connected_components(self) -> int:
        return len(self.components())

    def components(self) -> list[frozenset]:
        D, nb = self.members, self.group.neighbors
        left = set(D)
        out = []
        while left:
            root = left.pop()
            comp = {root}
            stack = [root]
            while stack:
                x = stack.pop()
                for y in nb(x):
                    if y in left:
                        left.discard(y)
                        comp.add(y)
                        stack.append(y)
            out.append(frozenset(comp))
        return out

    @property
    def is_connected(self) -> bool:
        return self.connected_components == 1

    def boundary_data(self) -> BoundaryData:
        return BoundaryData(
            self.inner_boundary,
            self.outer_boundary,
            self.edge_boundary_count,
            self.connected_components,
        )

    def displacement_count(self, y: Element) -> int:
        """|{x in D : y x not in D}|."""
        mul, D = self.group.multiply, self.members
        return sum(1 for x in D if mul(y, x) not in D)

    def symmetric_difference_size(self, s: Element) -> int:
        """|s^-1 D  symmetric-difference  D|; equals twice the number of x in D with s x outside D."""
        return 2 * self.displacement_count(s)

    def translate(self, g: Element) -> "FiniteSubset":
        """Right translate D g (a Cayley-graph automorphism)."""
        mul = self.group.multiply
        return FiniteSubset(self.group, frozenset(mul(x, g) for x in self.members))

    def sorted_members(self) -> list:
        return sorted(self.members)

    def to_json(self) -> dict:
        return {
            "members": [self.group.encode(x) for x in self.sorted_members()],
            "inner_boundary": len(self.inner_boundary),
            "outer_boundary": len(self.outer_boundary),
            "edge_boundary": self.edge_boundary_count,
            "components": self.connected_components,
        }

    def __repr__(self) -> str:
        body = ", ".join(repr(x) for x in self.sorted_members()[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"FiniteSubset({{{body}{more}}})"


def subset_from_json(group: Group, doc: dict) -> FiniteSubset:
    return FiniteSubset.of(group, (group.decode(m) for m in doc["members"]))


def enumerate_connected(group: Group, size_max: int, radius_cap: int | None = None) -> Iterator[FiniteSubset]:
    """Every connected subset of size <= ``size_max`` containing the identity, each once.

    Redelmeier-style extension with an untried list; neighbour order follows the
    generator order, so the stream is deterministic.
    """
    if size_max < 1:
        raise ValueError("size_max must be >= 1")
    if radius_cap is None:
        radius_cap = size_max - 1
    if radius_cap < size_max - 1:
        raise ValueError(f"radius_cap {radius_cap} cannot contain all connected sets of size {size_max}")
    nb = group.neighbors
    e = group.identity
    current: list = []
    seen = {e}

    def extend(untried: list) -> Iterator[FiniteSubset]:
        untried = list(untried)
        while untried:
            cell = untried.pop()
            current.append(cell)
            yield FiniteSubset(group, frozenset(current))
            if len(current) < size_max:
                fresh = [y for y in nb(cell) if y not in seen]
                seen.update(fresh)
                yield from extend(untried + fresh[::-1])
                seen.difference_update(fresh)
            current.pop()

    yield from extend([e])


def all_subsets(group: Group, include_empty: bool = False) -> Iterator[FiniteSubset]:
    """Every subset of a finite group (2^|G| of them), by bitmask order."""
    elems = group.elements()
    n = len(elems)
    if n > 24:
        raise ValueError(f"refusing to exhaust 2^{n} subsets")
    for mask in range(0 if include_empty else 1, 1 << n):
        yield FiniteSubset(group, frozenset(elems[i] for i in range(n) if mask >> i & 1))


def random_connected_subset(group: Group, size: int, seed: int) -> FiniteSubset:
    """Grow a connected set from the identity, adding a uniformly chosen outer-boundary point each step."""
    if size < 1:
        raise ValueError("size must be >= 1")
    rng = random.Random(seed)
    members = {group.identity}
    frontier: list = []
    in_frontier: set = set()

    def push_neighbors(x):
        for y in group.neighbors(x):
            if y not in members and y not in in_frontier:
                in_frontier.add(y)
                frontier.append(y)

    push_neighbors(group.identity)
    while len(members) < size:
        if not frontier:
            break  # finite group exhausted
        i = rng.randrange(len(frontier))
        frontier[i], frontier[-1] = frontier[-1], frontier[i]
        x = frontier.pop()
        in_frontier.discard(x)
        members.add(x)
        push_neighbors(x)
    return FiniteSubset(group, frozenset(members))

