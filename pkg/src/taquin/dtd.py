"""The right-to-left statistic behind jeu de taquin on double-tailed diamonds.

Permutations are one-line tuples ``(pi_1, ..., pi_N)`` over ``1..N``; positions
in the public functions are 1-based to match the usual notation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Sequence

from .errors import GuardError, PosetError
from .jdt import census_counts, iter_outcomes, order_dtd, sort_permutation
from .poset import Poset, double_tailed_diamond

BRUTE_GUARD = 10


@dataclass(frozen=True)
class StatProfile:
    """``counts[k]`` = number of permutations of S_{m+n} with c_{m,n} = m - k."""
    m: int
    n: int
    counts: tuple[int, ...]

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "counts": [str(c) for c in self.counts]}


def check_permutation(pi: Sequence[int], size: int | None = None) -> None:
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise PosetError(f"not a permutation of 1..{len(pi)}: {tuple(pi)}")
    if size is not None and len(pi) != size:
        raise PosetError(f"expected a permutation of length {size}, got {len(pi)}")


def is_rl_k_min(pi: Sequence[int], i: int, k: int) -> bool:
    """Whether ``pi_i`` is among the ``k`` smallest entries of ``pi_i, ..., pi_N``."""
    if not 1 <= i <= len(pi):
        raise IndexError(f"position {i} outside 1..{len(pi)}")
    if k < 1:
        raise ValueError("k must be positive")
    v = pi[i - 1]
    return sum(1 for u in pi[i:] if u < v) < k


def c_statistic(pi: Sequence[int], m: int) -> int:
    """Number of i <= m such that pi_i is among the m+1-i smallest of its suffix."""
    if not 0 <= m < len(pi):
        raise ValueError(f"m={m} out of range for a permutation of length {len(pi)}")
    total = 0
    for i in range(m):
        v = pi[i]
        smaller = 0
        for u in pi[i + 1:]:
            if u < v:
                smaller += 1
        if smaller < m - i:
            total += 1
    return total


@lru_cache(maxsize=None)
def stirling1(s: int, t: int) -> int:
    """Unsigned Stirling number of the first kind (permutations of s with t cycles)."""
    if s == t:
        return 1
    if t <= 0 or t > s:
        return 0
    return (s - 1) * stirling1(s - 1, t) + stirling1(s - 1, t - 1)


def stat_profile_formula(m: int, n: int) -> StatProfile:
    return StatProfile(m, n, tuple(n ** k * stirling1(m + 1, k + 1) * factorial(n)
                                   for k in range(m + 1)))


def stat_profile_bruteforce(m: int, n: int, guard: int = BRUTE_GUARD) -> StatProfile:
    if m + n > guard:
        raise GuardError(f"brute force limited to m+n <= {guard}")
    counts = [0] * (m + 1)
    for pi in permutations(range(1, m + n + 1)):
        counts[m - c_statistic(pi, m)] += 1
    return StatProfile(m, n, tuple(counts))


def t1_labeling(P: Poset, m: int, n: int) -> tuple[int, ...]:
    """The dual linear extension with label m at B_{1,m} (the reverse of the dtd order)."""
    sigma = order_dtd(m, n, P)
    return tuple(P.n + 1 - s for s in sigma)


@lru_cache(maxsize=64)
def _dtd_setup(m: int, n: int):
    P = double_tailed_diamond(m, n)
    sigma = order_dtd(m, n, P)
    t1 = t1_labeling(P, m, n)
    # pin the correspondence on the identity, whose statistic is m (k = 0, even)
    identity = tuple(range(1, m + n + 1))
    assert sort_permutation(P, sigma, identity) == t1
    return P, sigma, t1


def type_by_jdt(pi: Sequence[int], m: int, n: int) -> int:
    P, sigma, t1 = _dtd_setup(m, n)
    return 1 if sort_permutation(P, sigma, pi) == t1 else -1


def type_by_parity(pi: Sequence[int], m: int) -> int:
    return 1 if (m - c_statistic(pi, m)) % 2 == 0 else -1


def type_of(pi: Sequence[int], m: int, n: int, method: str = "both") -> int:
    """+1 if jeu de taquin on D_{m,n} sends ``pi`` to T_1, else -1.

    ``method`` is ``"jdt"``, ``"parity"`` or ``"both"`` (computes both and
    asserts that they agree).
    """
    if m < 2 or n < 2:
        raise ValueError("types are defined for m, n >= 2")
    check_permutation(pi, m + n)
    if method == "jdt":
        return type_by_jdt(pi, m, n)
    if method == "parity":
        return type_by_parity(pi, m)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    a, b = type_by_jdt(pi, m, n), type_by_parity(pi, m)
    assert a == b, f"type mismatch for {tuple(pi)}: jdt {a}, parity {b}"
    return a


def type_table(m: int, n: int) -> dict[tuple[int, ...], int]:
    """Type of every permutation of S_{m+n}, from jeu de taquin runs."""
    P, sigma, t1 = _dtd_setup(m, n)
    return {pi: 1 if out == t1 else -1 for pi, out in iter_outcomes(P, sigma)}


def theorem_difference(m: int, n: int) -> int:
    """(-1)^m * C(n-1, m) * m! * n!"""
    return (-1) ** m * comb(n - 1, m) * factorial(m) * factorial(n)


def alternating_sum(m: int, n: int) -> int:
    return sum((-1) ** k * c for k, c in enumerate(stat_profile_formula(m, n).counts))


def s_counts_bruteforce(m: int, n: int, jobs: int = 1, guard: int = BRUTE_GUARD) -> tuple[int, int]:
    """(s1, s2): how many permutations jeu de taquin on D_{m,n} sends to T_1 and to T_2."""
    if m + n > guard:
        raise GuardError(f"brute force limited to m+n <= {guard}")
    P, sigma, t1 = _dtd_setup(m, n)
    counts = census_counts(P, sigma, jobs)
    s1 = counts.get(t1, 0)
    return s1, sum(counts.values()) - s1
