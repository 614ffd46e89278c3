"""Standard Young tableaux, classical and shifted hooks, insets, and the
expected left-most entry of the second row of a random tableau.

Cells are ``(row, col)`` with 1-based indices, matching the diagram posets.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

from .errors import GuardError, PosetError
from .poset import Cell, dual_linear_extensions, inset, partition, shifted_cells, young_cells

ENUM_GUARD = 12


@dataclass(frozen=True)
class Syt:
    shape: tuple[int, ...]
    entries: dict[Cell, int]

    @property
    def rows(self) -> list[list[int]]:
        out = [[] for _ in self.shape]
        for (i, j), v in sorted(self.entries.items()):
            out[i - 1].append(v)
        return out

    def second_row_leader(self) -> int:
        if len(self.shape) < 2:
            raise ValueError("shape has no second row")
        return min(v for (i, _), v in self.entries.items() if i == 2)


def standard_fillings(cells: Iterable[Cell]) -> Iterator[dict[Cell, int]]:
    """Fillings with 1..n increasing along rows and down columns."""
    cells = set(cells)
    filled: dict[Cell, int] = {}
    n = len(cells)

    def ready(c: Cell) -> bool:
        i, j = c
        return all(nb not in cells or nb in filled for nb in ((i, j - 1), (i - 1, j)))

    def place(value: int) -> Iterator[dict[Cell, int]]:
        if value > n:
            yield dict(filled)
            return
        for c in sorted(cells):
            if c not in filled and ready(c):
                filled[c] = value
                yield from place(value + 1)
                del filled[c]

    yield from place(1)


def syt_enumerate(lam: Sequence[int] | str, guard: int = ENUM_GUARD) -> Iterator[Syt]:
    lam = partition(lam)
    if sum(lam) > guard:
        raise GuardError(f"tableau enumeration limited to |lambda| <= {guard}")
    for filling in standard_fillings(young_cells(lam)):
        yield Syt(lam, filling)


def shifted_enumerate(lam: Sequence[int] | str, guard: int = ENUM_GUARD) -> Iterator[dict[Cell, int]]:
    lam = partition(lam, strict=True)
    if sum(lam) > guard:
        raise GuardError(f"tableau enumeration limited to |lambda| <= {guard}")
    yield from standard_fillings(shifted_cells(lam))


def classical_hooks(lam: Sequence[int] | str) -> dict[Cell, int]:
    """arm + leg + 1 for every cell."""
    lam = partition(lam)
    conj = [sum(1 for row in lam if row >= j) for j in range(1, lam[0] + 1)]
    return {(i, j): (lam[i - 1] - j) + (conj[j - 1] - i) + 1 for i, j in young_cells(lam)}


def shifted_hooks(lam: Sequence[int] | str) -> dict[Cell, int]:
    """Hooks of the shifted diagram.

    The ordinary hook of (i, j) runs right along row i and down column j; when
    the column reaches the diagonal cell (j, j) the hook also takes all of row j+1.
    """
    lam = partition(lam, strict=True)
    cells = set(shifted_cells(lam))
    hooks = {}
    for i, j in cells:
        arm = i + lam[i - 1] - 1 - j
        leg = sum(1 for r in range(i + 1, len(lam) + 1) if (r, j) in cells)
        extra = lam[j] if (j, j) in cells and j < len(lam) else 0
        hooks[i, j] = arm + leg + 1 + extra
    return hooks


def _hook_formula(n: int, hooks: Iterable[int]) -> int:
    count, rest = divmod(factorial(n), prod(hooks))
    if rest:
        raise ArithmeticError("hook product does not divide n!")
    return count


def syt_count_hook(lam: Sequence[int] | str) -> int:
    lam = partition(lam)
    return _hook_formula(sum(lam), classical_hooks(lam).values())


def shifted_count_hook(lam: Sequence[int] | str) -> int:
    lam = partition(lam, strict=True)
    return _hook_formula(sum(lam), shifted_hooks(lam).values())


def _check_inset(k: int, lam: Sequence[int]) -> tuple[int, ...]:
    lam = partition(lam)
    if k < 2 or len(lam) != k:
        raise PosetError(f"inset needs k >= 2 and exactly k parts, got k={k}, {lam}")
    return lam


def inset_count(k: int, lam: Sequence[int] | str) -> int:
    """Standard fillings of the inset P_{k,lam} by its hook-length product."""
    lam = _check_inset(k, lam)
    n = sum(lam)
    extra = [n - lam[i - 1] + i for i in range(1, k + 1)]
    return _hook_formula(n + k, list(classical_hooks(lam).values()) + extra)


def refined_counts(k: int, lam: Sequence[int] | str, guard: int = 14) -> list[int]:
    """f_i = number of standard fillings of the inset whose second-row leader is k+i.

    Also checks that every filling starts row 1 with 1, 2, ..., k-1.
    """
    lam = _check_inset(k, lam)
    if sum(lam) + k > guard:
        raise GuardError(f"inset enumeration limited to n+k <= {guard}")
    P = inset(k, lam)
    prefix = [P.element((1, j)) for j in range(1, k)]
    leader = P.element((2, k - 1))
    counts = [0] * (lam[0] + 1)
    for labels in dual_linear_extensions(P):
        if [labels[x] for x in prefix] != list(range(1, k)):
            raise AssertionError(f"row 1 does not start with 1..{k - 1}: {labels}")
        counts[labels[leader] - k] += 1
    return counts


def leader_census(lam: Sequence[int] | str, guard: int = ENUM_GUARD) -> Counter:
    """Distribution of the second-row leader over all tableaux of shape ``lam``."""
    return Counter(t.second_row_leader() for t in syt_enumerate(lam, guard))


def expectation_closed(lam: Sequence[int] | str) -> Fraction:
    lam = _two_rows(lam)
    n = sum(lam)
    return prod((Fraction(n + i, n + i - part) for i, part in enumerate(lam, 1)), start=Fraction(1))


def _two_rows(lam) -> tuple[int, ...]:
    lam = partition(lam)
    if len(lam) < 2:
        raise ValueError(f"shape {lam} has no second row")
    return lam


def expectation_bruteforce(lam: Sequence[int] | str, guard: int = ENUM_GUARD) -> Fraction:
    census = leader_census(_two_rows(lam), guard)
    return Fraction(sum(x * c for x, c in census.items()), sum(census.values()))


def expectation_tail_sum(lam: Sequence[int] | str, guard: int = ENUM_GUARD) -> Fraction:
    census = leader_census(_two_rows(lam), guard)
    total = sum(census.values())
    top = max(census)
    return sum((Fraction(sum(c for x, c in census.items() if x >= i), total)
                for i in range(1, top + 1)), start=Fraction(0))


@dataclass(frozen=True)
class ExpectationReport:
    shape: tuple[int, ...]
    f: int
    f_inset: int
    expectation: Fraction
    brute: Fraction | None = None
    tail_sum: Fraction | None = None
    refined: tuple[int, ...] | None = None

    @property
    def consistent(self) -> bool:
        checks = [self.expectation == Fraction(self.f_inset, self.f),
                  2 <= self.expectation <= self.shape[0] + 1]
        if self.brute is not None:
            checks += [self.brute == self.expectation, self.tail_sum == self.expectation]
        if self.refined is not None:
            checks += [sum(self.refined) == self.f_inset, self.refined[0] == self.f]
        return all(checks)

    def to_json(self) -> dict:
        def frac(q):
            return None if q is None else {"num": str(q.numerator), "den": str(q.denominator)}
        out = {"shape": list(self.shape), "f": str(self.f), "f_inset": str(self.f_inset),
               "expectation": frac(self.expectation), "decimal": f"{float(self.expectation):.6f}"}
        if self.brute is not None:
            out["brute"] = frac(self.brute)
            out["tail_sum"] = frac(self.tail_sum)
        if self.refined is not None:
            out["refined"] = [str(c) for c in self.refined]
        out["consistent"] = self.consistent
        return out


def expectation(lam: Sequence[int] | str, brute: bool = False, guard: int = ENUM_GUARD) -> ExpectationReport:
    """Expected second-row leader of a uniform random tableau of shape ``lam``."""
    lam = _two_rows(lam)
    k = len(lam)
    kwargs = {}
    if brute:
        kwargs = dict(brute=expectation_bruteforce(lam, guard), tail_sum=expectation_tail_sum(lam, guard),
                      refined=tuple(refined_counts(k, lam, guard + k)))
    return ExpectationReport(lam, syt_count_hook(lam), inset_count(k, lam), expectation_closed(lam), **kwargs)


# -- the three families -----------------------------------------------------

def double_factorial(n: int) -> int:
    """(2m)!! = 2^m m! and (2m-1)!! = (2m)!/(2^m m!); (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError("double factorial needs n >= -1")
    if n % 2 == 0:
        return 2 ** (n // 2) * factorial(n // 2)
    m = (n + 1) // 2
    return factorial(2 * m) // (2 ** m * factorial(m))


def hook_shape(k: int) -> tuple[int, ...]:
    return (k,) + (1,) * (k - 1)


def rectangle(c: int, k: int) -> tuple[int, ...]:
    return (c,) * k


def staircase(k: int) -> tuple[int, ...]:
    return tuple(range(k, 0, -1))


def rectangle_product(c: int, k: int) -> Fraction:
    """prod_{i=1..c} (k(c+1)+1-i)/(kc+1-i), valid for k >= c."""
    return prod((Fraction(k * (c + 1) + 1 - i, k * c + 1 - i) for i in range(1, c + 1)), start=Fraction(1))


def staircase_formula(k: int) -> Fraction:
    N = k * (k + 1) // 2
    return Fraction(double_factorial(N + k) * double_factorial(N - k - 1), factorial(N))


def family_checks(max_hook: int = 8, max_rows: int = 8, max_stair: int = 6,
                  max_cols: int = 3, brute_limit: int = 10) -> dict:
    """Exact checks on hooks, rectangles and staircases, plus the limit trends."""
    from math import e

    hooks = {}
    for k in range(2, max_hook + 1):
        lam = hook_shape(k)
        value = expectation_closed(lam)
        ok = value == 3 - Fraction(1, k)
        if sum(lam) <= brute_limit:
            ok = ok and expectation_bruteforce(lam, brute_limit) == value
        hooks[k] = (value, ok)

    rectangles = {}
    for c in range(1, max_cols + 1):
        limit = (1 + 1 / c) ** c
        rows = {}
        prev_gap = None
        for k in range(max(c, 2), max_rows + 1):
            value = expectation_closed(rectangle(c, k))
            gap = abs(float(value) - limit)
            monotone = prev_gap is None or gap <= prev_gap
            rows[k] = (value, value == rectangle_product(c, k) and monotone)
            prev_gap = gap
        rectangles[c] = rows

    stairs = {}
    prev_gap = None
    for k in range(2, max_stair + 1):
        value = expectation_closed(staircase(k))
        gap = abs(float(value) - e)
        trend = k <= 2 or prev_gap is None or gap < prev_gap
        stairs[k] = (value, value == staircase_formula(k) and trend)
        if k >= 3:
            prev_gap = gap

    ok = (all(v[1] for v in hooks.values())
          and all(v[1] for rows in rectangles.values() for v in rows.values())
          and all(v[1] for v in stairs.values()))
    return {"hooks": hooks, "rectangles": rectangles, "staircases": stairs, "pass": ok}
