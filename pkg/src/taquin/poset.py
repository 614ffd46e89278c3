"""Finite posets given by their cover relation, plus the diagram families used
throughout the package (Young, shifted Young, double-tailed diamonds, insets).

Elements are the integers ``0..n-1``.  A cover ``(a, b)`` means ``a`` is covered
by ``b``.  Diagram families carry box coordinates ``(row, col)`` and the display
names ``B_{row,col}``; cell ``(1, 1)`` is always the maximum of the poset, so
standard fillings of a diagram are exactly the dual linear extensions.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import PosetError

Cell = tuple[int, int]


@dataclass(frozen=True)
class Poset:
    n: int
    covers: frozenset[tuple[int, int]]
    names: tuple[str, ...] | None = None
    cells: tuple[Cell, ...] | None = None

    def __len__(self) -> int:
        return self.n

    def name(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    @cached_property
    def lower(self) -> tuple[tuple[int, ...], ...]:
        """``lower[x]``: the elements covered by ``x``, sorted by id."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.covers:
            out[b].append(a)
        return tuple(tuple(sorted(xs)) for xs in out)

    @cached_property
    def upper(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.covers:
            out[a].append(b)
        return tuple(tuple(sorted(xs)) for xs in out)

    @cached_property
    def topological(self) -> tuple[int, ...]:
        # bottom-up; smallest available id first
        indeg = [len(xs) for xs in self.lower]
        ready = sorted(x for x in range(self.n) if indeg[x] == 0)
        out = []
        while ready:
            x = ready.pop(0)
            out.append(x)
            for y in self.upper[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    ready.append(y)
            ready.sort()
        return tuple(out)

    @cached_property
    def down(self) -> tuple[int, ...]:
        """Bitmask of the principal order ideal ``{y : y <= x}`` per element."""
        masks = [0] * self.n
        for x in self.topological:
            m = 1 << x
            for y in self.lower[x]:
                m |= masks[y]
            masks[x] = m
        return tuple(masks)

    @cached_property
    def up(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for x in reversed(self.topological):
            m = 1 << x
            for y in self.upper[x]:
                m |= masks[y]
            masks[x] = m
        return tuple(masks)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def less(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def minimal(self) -> list[int]:
        return [x for x in range(self.n) if not self.lower[x]]

    def maximal(self) -> list[int]:
        return [x for x in range(self.n) if not self.upper[x]]

    def incomparable_pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in range(a + 1, self.n)
                if not self.comparable(a, b)]

    def longest_chain(self) -> int:
        """Number of elements in a longest chain."""
        height = [0] * self.n
        for x in self.topological:
            height[x] = 1 + max((height[y] for y in self.lower[x]), default=0)
        return max(height, default=0)

    def element(self, name: str | Cell) -> int:
        """Look up an element by display name or by box coordinate."""
        if isinstance(name, tuple):
            if self.cells is None:
                raise PosetError("poset carries no box coordinates")
            try:
                return self.cells.index(name)
            except ValueError:
                raise PosetError(f"no box at {name}") from None
        if self.names is None or name not in self.names:
            raise PosetError(f"unknown element {name!r}")
        return self.names.index(name)

    def to_json(self) -> dict:
        out: dict = {"n": self.n, "covers": [list(c) for c in sorted(self.covers)]}
        if self.names is not None:
            out["names"] = list(self.names)
        return out


# -- construction -----------------------------------------------------------

def from_covers(n: int, covers: Iterable[Sequence[int]], names: Sequence[str] | None = None,
                cells: Sequence[Cell] | None = None) -> Poset:
    """Build a validated poset from a cover relation.

    Rejects ids outside ``0..n-1``, cycles, and pairs implied by other covers.
    """
    if n < 1:
        raise PosetError("a poset needs at least one element")
    pairs = set()
    for pair in covers:
        a, b = (int(v) for v in pair)
        if not (0 <= a < n and 0 <= b < n):
            raise PosetError(f"cover ({a}, {b}) references an id outside 0..{n - 1}")
        if a == b:
            raise PosetError(f"cycle detected: ({a}, {a})")
        pairs.add((a, b))
    if names is not None and len(names) != n:
        raise PosetError("names must list one entry per element")
    if cells is not None and len(cells) != n:
        raise PosetError("cells must list one entry per element")
    P = Poset(n, frozenset(pairs), tuple(names) if names is not None else None,
              tuple(tuple(c) for c in cells) if cells is not None else None)
    if len(P.topological) != n:
        raise PosetError("cycle detected in cover relation")
    for a, b in sorted(pairs):
        for c in P.lower[b]:
            if c != a and P.leq(a, c):
                raise PosetError(f"redundant cover ({a}, {b}): implied via {c}")
    return P


def from_json(data: dict | str) -> Poset:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        n = int(data["n"])
        covers = data["covers"]
    except (KeyError, TypeError, ValueError) as exc:
        raise PosetError(f"malformed poset JSON: {exc}") from None
    names = data.get("names")
    cells = None
    if names is not None:
        parsed = [_parse_box_name(s) for s in names]
        if all(c is not None for c in parsed):
            cells = parsed
    return from_covers(n, covers, names, cells)


_BOX = re.compile(r"^B_\{(-?\d+),(-?\d+)\}$")


def _parse_box_name(s: str) -> Cell | None:
    match = _BOX.match(s)
    return (int(match[1]), int(match[2])) if match else None


def box_name(cell: Cell) -> str:
    return f"B_{{{cell[0]},{cell[1]}}}"


def from_cells(cells: Iterable[Cell]) -> Poset:
    """Diagram poset on a set of boxes: the box to the right and the box below
    are covered by a box whenever both exist."""
    cells = sorted(set(cells))
    index = {c: k for k, c in enumerate(cells)}
    covers = []
    for (i, j), k in index.items():
        for nb in ((i, j + 1), (i + 1, j)):
            if nb in index:
                covers.append((index[nb], k))
    return from_covers(len(cells), covers, [box_name(c) for c in cells], cells)


def partition(parts: Iterable[int] | str, strict: bool = False) -> tuple[int, ...]:
    """Validate a partition, given as integers or as text such as ``"3,3,2,1"``."""
    if isinstance(parts, str):
        try:
            parts = [int(p) for p in parts.replace(" ", "").split(",") if p]
        except ValueError:
            raise PosetError(f"malformed partition {parts!r}") from None
    lam = tuple(int(p) for p in parts)
    if not lam:
        raise PosetError("partition must be nonempty")
    if any(p < 1 for p in lam):
        raise PosetError(f"partition parts must be positive: {lam}")
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise PosetError(f"partition must be weakly decreasing: {lam}")
    if strict and any(a == b for a, b in zip(lam, lam[1:])):
        raise PosetError(f"shifted shapes need a strict partition: {lam}")
    return lam


def young_cells(lam: Sequence[int]) -> list[Cell]:
    return [(i, j) for i, row in enumerate(lam, 1) for j in range(1, row + 1)]


def shifted_cells(lam: Sequence[int]) -> list[Cell]:
    return [(i, j) for i, row in enumerate(lam, 1) for j in range(i, i + row)]


def inset_cells(k: int, lam: Sequence[int]) -> list[Cell]:
    # lam sits at columns k.. ; row 1 gets columns 1..k-1 and row 2 column k-1 in front
    cells = [(i, j + k - 1) for i, j in young_cells(lam)]
    cells += [(1, j) for j in range(1, k)]
    cells.append((2, k - 1))
    return cells


def young(lam: Iterable[int] | str) -> Poset:
    return from_cells(young_cells(partition(lam)))


def shifted_young(lam: Iterable[int] | str) -> Poset:
    return from_cells(shifted_cells(partition(lam, strict=True)))


def inset(k: int, lam: Iterable[int] | str) -> Poset:
    """The inset obtained from the Young diagram of ``lam`` by putting ``k-1``
    boxes in front of row 1 and one box in front of row 2."""
    lam = partition(lam)
    if k < 2:
        raise PosetError("insets need k >= 2")
    if len(lam) != k:
        raise PosetError(f"inset needs a partition with exactly k={k} parts, got {lam}")
    return from_cells(inset_cells(k, lam))


def double_tailed_diamond(m: int, n: int) -> Poset:
    """D_{m,n}: a diamond with a chain of m-2 boxes on top and n-2 boxes below."""
    if m < 2 or n < 2:
        raise PosetError("double-tailed diamonds need m, n >= 2")
    top = [(1, j) for j in range(1, m + 1)]
    bottom = [(2, j) for j in range(m - 1, m + n - 1)]
    return from_cells(top + bottom)


def chain(n: int) -> Poset:
    """Chain 0 < 1 < ... < n-1."""
    return from_covers(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return from_covers(n, [])


def add_maximum(P: Poset) -> Poset:
    """Adjoin a new element ``P.n`` covering every maximal element of ``P``."""
    top = P.n
    covers = set(P.covers) | {(x, top) for x in P.maximal()}
    names = P.names + (f"max_{top}",) if P.names is not None else None
    cells = None
    if P.cells is not None:
        # stay in box coordinates when the old maximum is the top-left box
        i, j = min(P.cells)
        new = (i, j - 1)
        if P.maximal() == [P.cells.index((i, j))] and new not in P.cells:
            cells = P.cells + (new,)
            names = P.names + (box_name(new),)
    return from_covers(P.n + 1, covers, names, cells)


def interval(P: Poset, w: int, z: int) -> tuple[Poset, tuple[int, ...]]:
    """Induced subposet on ``[w, z]`` and the map from its ids back to ``P``'s ids."""
    if not P.leq(w, z):
        raise PosetError(f"{P.name(w)} is not below {P.name(z)}")
    mask = P.down[z] & P.up[w]
    back = tuple(x for x in range(P.n) if mask >> x & 1)
    fwd = {x: k for k, x in enumerate(back)}
    covers = [(fwd[a], fwd[b]) for a, b in P.covers if a in fwd and b in fwd]
    names = [P.names[x] for x in back] if P.names else None
    cells = [P.cells[x] for x in back] if P.cells else None
    return from_covers(len(back), covers, names, cells), back


# -- labelings --------------------------------------------------------------

def is_bijective_labeling(P: Poset, labels: Sequence[int]) -> bool:
    return len(labels) == P.n and sorted(labels) == list(range(1, P.n + 1))


def is_dual_linear_extension(P: Poset, labels: Sequence[int]) -> bool:
    return is_bijective_labeling(P, labels) and all(labels[a] > labels[b] for a, b in P.covers)


def is_linear_extension(P: Poset, sigma: Sequence[int]) -> bool:
    return is_bijective_labeling(P, sigma) and all(sigma[a] < sigma[b] for a, b in P.covers)


def dual_linear_extensions(P: Poset) -> Iterator[tuple[int, ...]]:
    """All dual linear extensions, each once, as label tuples indexed by element.

    Labels ``n, n-1, ..., 1`` go to minimal not-yet-labelled elements, trying
    candidates by increasing id.
    """
    n = P.n
    lower = P.lower
    labels = [0] * n
    need = [len(xs) for xs in lower]
    upper = P.upper

    def place(value: int) -> Iterator[tuple[int, ...]]:
        if value == 0:
            yield tuple(labels)
            return
        for x in range(n):
            if labels[x] or need[x]:
                continue
            labels[x] = value
            for y in upper[x]:
                need[y] -= 1
            yield from place(value - 1)
            for y in upper[x]:
                need[y] += 1
            labels[x] = 0

    yield from place(n)


def count_linear_extensions(P: Poset) -> int:
    """Number of linear extensions, by dynamic programming over order ideals."""
    lower_masks = [sum(1 << y for y in xs) for xs in P.lower]
    full = (1 << P.n) - 1

    @lru_cache(maxsize=None)
    def count(ideal: int) -> int:
        if ideal == full:
            return 1
        total = 0
        for x in range(P.n):
            if not ideal >> x & 1 and lower_masks[x] & ideal == lower_masks[x]:
                total += count(ideal | 1 << x)
        return total

    return count(0)


def partitions(n: int, strict: bool = False, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of ``n`` in reverse lexicographic order."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in partitions(n - p, strict, p - 1 if strict else p):
            yield (p,) + rest
