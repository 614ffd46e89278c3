"""Jeu de taquin on finite posets, processing orders, and output censuses.

A processing order ``sigma`` is a linear extension given as a tuple indexed by
element, with values ``1..n``.  Labelings are tuples indexed by element.
"""
from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from scipy import stats

from .errors import GuardError, PosetError
from .poset import (Poset, count_linear_extensions, is_bijective_labeling,
                    is_dual_linear_extension, is_linear_extension)

DEFAULT_GUARD = 11


@dataclass(frozen=True)
class Round:
    element: int
    swaps: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class JdtTrace:
    rounds: tuple[Round, ...]

    @property
    def swap_count(self) -> int:
        return sum(len(r.swaps) for r in self.rounds)


@dataclass
class DistributionReport:
    ensemble: str
    size: int
    counts: dict[tuple[int, ...], int]
    classes: int
    uniform: bool | None = None
    expected_per_class: Fraction | None = None
    seed: int | None = None
    chi_square: float | None = None
    p_value: float | None = None
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "ensemble": self.ensemble,
            "size": str(self.size),
            "classes": str(self.classes),
            "counts": {",".join(map(str, k)): str(v) for k, v in sorted(self.counts.items())},
        }
        if self.uniform is not None:
            out["uniform"] = self.uniform
        if self.expected_per_class is not None:
            e = self.expected_per_class
            out["expected_per_class"] = {"num": str(e.numerator), "den": str(e.denominator)}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.chi_square is not None:
            out["chi_square"] = self.chi_square
            out["p_value"] = self.p_value
        out.update(self.meta)
        return out


def order_positions(sigma: Sequence[int]) -> list[int]:
    """Elements listed by increasing sigma value, i.e. sigma^{-1}(1), sigma^{-1}(2), ..."""
    out = [0] * len(sigma)
    for x, s in enumerate(sigma):
        out[s - 1] = x
    return out


def check_order(P: Poset, sigma: Sequence[int]) -> None:
    if not is_linear_extension(P, sigma):
        raise PosetError("processing order is not a linear extension of the poset")


def _sift(labels: list[int], lower: Sequence[Sequence[int]], x: int) -> None:
    # moving label goes down to the smallest lower cover until it is the smallest
    v = labels[x]
    while True:
        best = -1
        small = v
        for y in lower[x]:
            if labels[y] < small:
                small = labels[y]
                best = y
        if best < 0:
            return
        labels[x] = small
        labels[best] = v
        x = best


def jdt_sort(P: Poset, sigma: Sequence[int], labels: Sequence[int],
             check: bool = True) -> tuple[tuple[int, ...], JdtTrace]:
    """Sort ``labels`` into a dual linear extension, processing elements in ``sigma`` order."""
    if check:
        check_order(P, sigma)
        if not is_bijective_labeling(P, labels):
            raise PosetError("labeling must be a bijection onto 1..n")
    lab = list(labels)
    lower = P.lower
    rounds = []
    for x in order_positions(sigma):
        start = x
        swaps = []
        v = lab[x]
        while True:
            smaller = [y for y in lower[x] if lab[y] < v]
            if not smaller:
                break
            y = min(smaller, key=lab.__getitem__)
            assert sum(lab[t] == lab[y] for t in lower[x]) == 1, "tied labels"
            lab[x], lab[y] = lab[y], v
            swaps.append((x, y))
            x = y
        rounds.append(Round(start, tuple(swaps)))
    out = tuple(lab)
    if check:
        assert is_dual_linear_extension(P, out)
    return out, JdtTrace(tuple(rounds))


def labeling_from_permutation(P: Poset, sigma: Sequence[int], pi: Sequence[int]) -> tuple[int, ...]:
    """Write ``pi_1, pi_2, ...`` into the elements in decreasing sigma order."""
    if len(pi) != P.n or len(sigma) != P.n:
        raise PosetError(f"permutation of length {len(pi)} does not fit a poset of size {P.n}")
    return tuple(pi[P.n - s] for s in sigma)


def sort_permutation(P: Poset, sigma: Sequence[int], pi: Sequence[int]) -> tuple[int, ...]:
    """Fast path: final labeling for input permutation ``pi``, no trace or checks."""
    lab = [pi[P.n - s] for s in sigma]
    lower = P.lower
    for x in order_positions(sigma):
        _sift(lab, lower, x)
    return tuple(lab)


# -- processing orders ------------------------------------------------------

def _from_sequence(P: Poset, elements: Sequence[int]) -> tuple[int, ...]:
    sigma = [0] * P.n
    for pos, x in enumerate(elements, 1):
        sigma[x] = pos
    sigma = tuple(sigma)
    check_order(P, sigma)
    return sigma


def _cells(P: Poset):
    if P.cells is None:
        raise PosetError("poset lacks box coordinates")
    return P.cells


def order_dtd(m: int, n: int, P: Poset | None = None) -> tuple[int, ...]:
    """The order on D_{m,n} running up the bottom tail, then B_{2,m-1}, B_{1,m}, then the top chain."""
    from .poset import double_tailed_diamond
    P = P or double_tailed_diamond(m, n)
    seq = [(2, j) for j in range(m + n - 2, m - 2, -1)] + [(1, j) for j in range(m, 0, -1)]
    return _from_sequence(P, [P.element(c) for c in seq])


def order_column_wise(P: Poset) -> tuple[int, ...]:
    """Columns right to left, each column bottom to top."""
    cells = _cells(P)
    seq = sorted(range(P.n), key=lambda x: (-cells[x][1], -cells[x][0]))
    return _from_sequence(P, seq)


def order_row_wise(P: Poset) -> tuple[int, ...]:
    """Rows bottom to top, each row right to left."""
    cells = _cells(P)
    seq = sorted(range(P.n), key=lambda x: (-cells[x][0], -cells[x][1]))
    return _from_sequence(P, seq)


def extend_order(sigma: Sequence[int]) -> tuple[int, ...]:
    """Order for ``add_maximum(P)``: keep ``sigma`` and process the new top last."""
    return tuple(sigma) + (len(sigma) + 1,)


# -- censuses ---------------------------------------------------------------

def _census_block(lower, order, n, first):
    # depth-first over labels in processing order; the labeling after i rounds
    # depends only on the first i labels, so siblings share their prefix work
    counts: Counter = Counter()
    lab = [0] * n

    def descend(depth, remaining, state):
        x = order[depth]
        last = depth + 1 == n
        for v in remaining:
            cur = state[:]
            cur[x] = v
            _sift(cur, lower, x)
            if last:
                counts[tuple(cur)] += 1
            else:
                descend(depth + 1, [u for u in remaining if u != v], cur)

    remaining = [v for v in range(1, n + 1) if v != first]
    lab[order[0]] = first
    if n == 1:
        counts[tuple(lab)] += 1
    else:
        descend(1, remaining, lab)
    return counts


def _block_task(args):
    return _census_block(*args)


def census_counts(P: Poset, sigma: Sequence[int], jobs: int = 1) -> Counter:
    """Count JDT outputs over all n! input labelings.

    Work is split by the label of the first processed element; blocks are
    merged additively, so the result does not depend on ``jobs``.
    """
    check_order(P, sigma)
    order = order_positions(sigma)
    tasks = [(P.lower, order, P.n, first) for first in range(1, P.n + 1)]
    total: Counter = Counter()
    if jobs <= 1:
        for t in tasks:
            total.update(_census_block(*t))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_block_task, tasks):
                total.update(part)
    return total


def iter_outcomes(P: Poset, sigma: Sequence[int]):
    """Yield ``(pi, output)`` for every permutation ``pi`` of ``1..n``."""
    check_order(P, sigma)
    order = order_positions(sigma)
    n = P.n
    lower = P.lower
    chosen = [0] * n

    def descend(depth, remaining, state):
        x = order[depth]
        for v in remaining:
            cur = state[:]
            cur[x] = v
            chosen[depth] = v
            _sift(cur, lower, x)
            if depth + 1 == n:
                yield tuple(reversed(chosen)), tuple(cur)
            else:
                yield from descend(depth + 1, [u for u in remaining if u != v], cur)

    yield from descend(0, list(range(1, n + 1)), [0] * n)


def distribution_exhaustive(P: Poset, sigma: Sequence[int], jobs: int = 1,
                            guard: int = DEFAULT_GUARD) -> DistributionReport:
    if P.n > guard:
        raise GuardError(f"exhaustive census limited to n <= {guard} (got {P.n})")
    counts = census_counts(P, sigma, jobs)
    size = factorial(P.n)
    f = count_linear_extensions(P)
    expected = Fraction(size, f)
    uniform = len(counts) == f and all(c == expected for c in counts.values())
    return DistributionReport("exhaustive", size, dict(counts), f, uniform, expected)


def distribution_sampled(P: Poset, sigma: Sequence[int], samples: int,
                         seed: int) -> DistributionReport:
    """Census over ``samples`` uniformly random labelings drawn from ``seed``.

    Reports a chi-square statistic against the uniform distribution on all
    dual linear extensions (unobserved classes count as zero).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    check_order(P, sigma)
    rng = random.Random(seed)
    pi = list(range(1, P.n + 1))
    counts: Counter = Counter()
    for _ in range(samples):
        rng.shuffle(pi)
        counts[sort_permutation(P, sigma, pi)] += 1
    f = count_linear_extensions(P)
    expected = samples / f
    chi2 = sum((c - expected) ** 2 for c in counts.values()) / expected
    chi2 += (f - len(counts)) * expected
    p_value = float(stats.chi2.sf(chi2, f - 1)) if f > 1 else 1.0
    return DistributionReport("sampled", samples, dict(counts), f, seed=seed,
                              chi_square=chi2, p_value=p_value)
