"""Finitely generated groups with canonical element encodings.

Every element is an immutable, hashable tuple, and two encodings compare equal
exactly when they denote the same group element.  Edges of the Cayley graph
join ``x`` and ``s*x`` (multiplication on the left), which pairs with the
right-invariant word metric ``d(x, y) = |x y^-1|``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping, Sequence

import numpy as np

Element = Hashable

KINDS = ("free", "free_abelian", "dihedral", "heisenberg", "lamplighter", "cayley_table")


class GroupSpecError(ValueError):
    """Raised when a group description is malformed or violates a group axiom."""


class RadiusExceeded(LookupError):
    """The word norm of an element is larger than the search radius allowed."""


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)
    table: tuple[tuple[int, ...], ...] | None = None
    generators: tuple[int, ...] | None = None

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "GroupSpec":
        if "kind" not in doc:
            raise GroupSpecError("group spec needs a 'kind' field")
        params = dict(doc.get("params", {}))
        table = doc.get("table", params.pop("table", None))
        gens = doc.get("generators", params.pop("generators", None))
        return cls(
            kind=doc["kind"],
            params=params,
            table=None if table is None else tuple(tuple(int(v) for v in row) for row in table),
            generators=None if gens is None else tuple(int(g) for g in gens),
        )

    @classmethod
    def from_json(cls, text: str) -> "GroupSpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GroupSpecError(f"group spec is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise GroupSpecError("group spec must be a JSON object")
        return cls.from_dict(doc)

    def to_dict(self) -> dict:
        doc: dict[str, Any] = {"kind": self.kind, "params": dict(self.params)}
        if self.table is not None:
            doc["table"] = [list(row) for row in self.table]
        if self.generators is not None:
            doc["generators"] = list(self.generators)
        return doc


@dataclass(frozen=True)
class GeneratingSet:
    """A finite symmetric generating set; ``inverse_pairing[i]`` indexes the inverse of element ``i``."""

    elements: tuple
    inverse_pairing: tuple[int, ...]
    names: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int):
        return self.elements[i]


class Group:
    """Base class.  Subclasses provide ``identity``, ``multiply``, ``invert`` and ``_standard_generators``."""

    kind: str = ""
    order: int | None = None  # None for infinite groups

    def __init__(self) -> None:
        elems, names = self._standard_generators()
        self.generators = self._make_generating_set(elems, names)
        self._nbr: dict = {}

    # -- subclass hooks -------------------------------------------------
    identity: Element

    def multiply(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def invert(self, a: Element) -> Element:
        raise NotImplementedError

    def _standard_generators(self) -> tuple[list, list[str]]:
        raise NotImplementedError

    def canonical(self, raw: Any) -> Element:
        """Normalize a raw (e.g. JSON-decoded) encoding into the canonical one."""
        raise NotImplementedError

    # -- shared machinery -----------------------------------------------
    def _make_generating_set(self, elems: Sequence, names: Sequence[str]) -> GeneratingSet:
        elems = tuple(elems)
        if len(set(elems)) != len(elems):
            raise GroupSpecError("generators must be distinct")
        if self.identity in elems:
            raise GroupSpecError("generating set must not contain the identity")
        index = {g: i for i, g in enumerate(elems)}
        pairing = []
        for g in elems:
            inv = self.invert(g)
            if inv not in index:
                raise GroupSpecError(f"generating set is not symmetric: inverse of {g!r} missing")
            pairing.append(index[inv])
        return GeneratingSet(elems, tuple(pairing), tuple(names))

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    @property
    def degree(self) -> int:
        return len(self.generators)

    def neighbors(self, x: Element) -> tuple:
        """The Cayley-graph neighbours ``s*x``, in generator order."""
        try:
            return self._nbr[x]
        except KeyError:
            nb = tuple(self.multiply(s, x) for s in self.generators)
            self._nbr[x] = nb
            return nb

    def evaluate(self, word: Iterable[int]) -> Element:
        """Product of generators given by index, left to right."""
        x = self.identity
        for i in word:
            x = self.multiply(x, self.generators[i])
        return x

    def word_norm(self, x: Element, radius: int | None = None) -> int:
        if self.order is None and radius is None:
            raise ValueError("word_norm on an infinite group needs a search radius")
        if x == self.identity:
            return 0
        seen = {self.identity}
        frontier = [self.identity]
        k = 0
        while frontier:
            k += 1
            if radius is not None and k > radius:
                break
            nxt = []
            for y in frontier:
                for z in self.neighbors(y):
                    if z not in seen:
                        if z == x:
                            return k
                        seen.add(z)
                        nxt.append(z)
            frontier = nxt
        raise RadiusExceeded(f"{x!r} is not within word norm {radius}")

    def elements(self) -> list:
        """All elements of a finite group, in BFS order from the identity."""
        if self.order is None:
            raise ValueError("infinite group has no element list")
        seen = {self.identity: None}
        queue = deque([self.identity])
        while queue:
            y = queue.popleft()
            for z in self.neighbors(y):
                if z not in seen:
                    seen[z] = None
                    queue.append(z)
        return list(seen)

    def encode(self, x: Element) -> Any:
        """JSON-friendly form of an element."""
        return _listify(x)

    def decode(self, obj: Any) -> Element:
        return self.canonical(obj)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} |S|={self.degree} order={self.order}>"


def _listify(x):
    if isinstance(x, tuple):
        return [_listify(v) for v in x]
    return x


class FreeGroup(Group):
    """Free group on ``q`` letters; elements are reduced words of nonzero ints (``-i`` is the inverse of ``i``)."""

    kind = "free"

    def __init__(self, q: int):
        if not isinstance(q, int) or q < 1:
            raise GroupSpecError("free group rank q must be a positive integer")
        self.q = q
        self.identity = ()
        super().__init__()

    def _standard_generators(self):
        elems, names = [], []
        for i in range(1, self.q + 1):
            elems += [(i,), (-i,)]
            names += [f"s{i}", f"s{i}^-1"]
        return elems, names

    def multiply(self, a, b):
        k = 0
        n = min(len(a), len(b))
        while k < n and a[len(a) - 1 - k] == -b[k]:
            k += 1
        return a[: len(a) - k] + b[k:]

    def invert(self, a):
        return tuple(-v for v in reversed(a))

    def canonical(self, raw):
        out: list[int] = []
        for v in raw:
            v = int(v)
            if v == 0 or abs(v) > self.q:
                raise GroupSpecError(f"letter {v} out of range for free group of rank {self.q}")
            if out and out[-1] == -v:
                out.pop()
            else:
                out.append(v)
        return tuple(out)


class FreeAbelianGroup(Group):
    kind = "free_abelian"

    def __init__(self, d: int):
        if not isinstance(d, int) or d < 1:
            raise GroupSpecError("free abelian rank d must be a positive integer")
        self.d = d
        self.identity = (0,) * d
        super().__init__()

    def _standard_generators(self):
        elems, names = [], []
        for i in range(self.d):
            for sign in (1, -1):
                v = [0] * self.d
                v[i] = sign
                elems.append(tuple(v))
                names.append(f"{'+' if sign > 0 else '-'}e{i + 1}")
        return elems, names

    def multiply(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def invert(self, a):
        return tuple(-x for x in a)

    def canonical(self, raw):
        v = tuple(int(x) for x in raw)
        if len(v) != self.d:
            raise GroupSpecError(f"expected a vector of length {self.d}")
        return v


class DihedralGroup(Group):
    """Dihedral group of order ``2n``; ``(k, f)`` stands for ``r^k s^f``, so ``s r = r^-1 s``.

    Generators are ``{r, r^-1, s}`` (``{r, s}`` when ``n = 2``, where ``r = r^-1``).
    """

    kind = "dihedral"

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise GroupSpecError("dihedral parameter n must be an integer >= 2")
        self.n = n
        self.order = 2 * n
        self.identity = (0, 0)
        super().__init__()

    def _standard_generators(self):
        if self.n == 2:
            return [(1, 0), (0, 1)], ["r", "s"]
        return [(1, 0), (self.n - 1, 0), (0, 1)], ["r", "r^-1", "s"]

    def multiply(self, a, b):
        k, f = a
        j, g = b
        return ((k + (j if f == 0 else -j)) % self.n, f ^ g)

    def invert(self, a):
        k, f = a
        return ((-k) % self.n, 0) if f == 0 else a

    def canonical(self, raw):
        k, f = raw
        if int(f) not in (0, 1):
            raise GroupSpecError("dihedral flip must be 0 or 1")
        return (int(k) % self.n, int(f))


class HeisenbergGroup(Group):
    """Integer Heisenberg group; ``(a, b, c)`` is the unipotent matrix with top row ``1 a c`` and middle row ``0 1 b``."""

    kind = "heisenberg"

    def __init__(self):
        self.identity = (0, 0, 0)
        super().__init__()

    def _standard_generators(self):
        return [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)], ["x", "x^-1", "y", "y^-1"]

    def multiply(self, p, q):
        a, b, c = p
        a2, b2, c2 = q
        return (a + a2, b + b2, c + c2 + a * b2)

    def invert(self, p):
        a, b, c = p
        return (-a, -b, a * b - c)

    def canonical(self, raw):
        v = tuple(int(x) for x in raw)
        if len(v) != 3:
            raise GroupSpecError("heisenberg elements are integer triples")
        return v


class LamplighterGroup(Group):
    """Lamplighter group Z/2 wr Z; ``(cursor, lamps)`` with ``lamps`` a strictly increasing tuple.

    ``(p, f)(q, g) = (p + q, f xor (g shifted by p))``.  Generators: shift, its inverse, and
    the lamp toggle at 0 (an involution).
    """

    kind = "lamplighter"

    def __init__(self):
        self.identity = (0, ())
        super().__init__()

    def _standard_generators(self):
        return [(1, ()), (-1, ()), (0, (0,))], ["t", "t^-1", "a"]

    @staticmethod
    def _xor(f, g):
        return tuple(sorted(set(f).symmetric_difference(g)))

    def multiply(self, x, y):
        p, f = x
        q, g = y
        if not g:
            return (p + q, f)
        return (p + q, self._xor(f, [v + p for v in g]))

    def invert(self, x):
        p, f = x
        return (-p, tuple(v - p for v in f))

    def canonical(self, raw):
        p, lamps = raw
        out: set[int] = set()
        for v in lamps:
            out ^= {int(v)}
        return (int(p), tuple(sorted(out)))


class TableGroup(Group):
    """A finite group given by its multiplication table (identity at index 0)."""

    kind = "cayley_table"

    def __init__(self, table: Sequence[Sequence[int]], generator_indices: Sequence[int]):
        arr = np.asarray(table, dtype=np.int64)
        _check_table(arr)
        self.table = arr
        self._t = [tuple(int(v) for v in row) for row in arr]
        n = arr.shape[0]
        self.order = n
        self.identity = 0
        inv = np.argmin(arr, axis=1)  # the column holding 0 in each row
        self._inv = [int(v) for v in inv]
        self._gen_idx = [int(g) for g in generator_indices]
        for g in self._gen_idx:
            if not 0 <= g < n:
                raise GroupSpecError(f"generator index {g} out of range")
        super().__init__()
        if len(self.elements()) != n:
            raise GroupSpecError("generators do not generate the whole table group")

    def _standard_generators(self):
        return list(self._gen_idx), [f"g{g}" for g in self._gen_idx]

    def multiply(self, a, b):
        return self._t[a][b]

    def invert(self, a):
        return self._inv[a]

    def canonical(self, raw):
        v = int(raw)
        if not 0 <= v < self.order:
            raise GroupSpecError(f"element index {v} out of range")
        return v


def _check_table(arr: np.ndarray) -> None:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise GroupSpecError("closure: table must be a nonempty square matrix")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise GroupSpecError("closure: table entries must be indices in [0, order)")
    ident = np.arange(n)
    if not (np.array_equal(arr[0], ident) and np.array_equal(arr[:, 0], ident)):
        raise GroupSpecError("identity: index 0 must be a two-sided identity")
    srt_rows = np.sort(arr, axis=1)
    srt_cols = np.sort(arr, axis=0)
    if not (np.all(srt_rows == ident) and np.all(srt_cols == ident[:, None])):
        raise GroupSpecError("inverses: every row and column must be a permutation")
    # (ab)c == a(bc) for all triples
    if not np.array_equal(arr[arr, :], arr[:, arr]):
        raise GroupSpecError("associativity: (ab)c != a(bc) for some triple")


def cyclic_spec(n: int, generators: Sequence[int] | None = None) -> GroupSpec:
    """Z/n as a ``cayley_table`` spec, generated by {1, -1} (just {1} when n == 2)."""
    if generators is None:
        generators = (1,) if n == 2 else (1, n - 1)
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return GroupSpec("cayley_table", {}, table, tuple(generators))


def build_group(spec: GroupSpec | Mapping[str, Any]) -> Group:
    if not isinstance(spec, GroupSpec):
        spec = GroupSpec.from_dict(spec)
    p = dict(spec.params)
    kind = spec.kind
    try:
        if kind == "free":
            return FreeGroup(int(p["q"]))
        if kind == "free_abelian":
            return FreeAbelianGroup(int(p["d"]))
        if kind == "dihedral":
            return DihedralGroup(int(p["n"]))
        if kind == "heisenberg":
            return HeisenbergGroup()
        if kind == "lamplighter":
            return LamplighterGroup()
        if kind == "cayley_table":
            if spec.table is None or spec.generators is None:
                raise GroupSpecError("cayley_table needs 'table' and 'generators'")
            return TableGroup(spec.table, spec.generators)
    except KeyError as exc:
        raise GroupSpecError(f"{kind} group is missing parameter {exc}") from None
    raise GroupSpecError(f"unknown group kind {kind!r}; expected one of {', '.join(KINDS)}")
