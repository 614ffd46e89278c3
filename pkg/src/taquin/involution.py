"""The type-inverting involution on permutations for double-tailed diamonds.

Composition is ``(f o g)(i) = f(g(i))``; applying a value map ``f`` to a
permutation ``pi`` means replacing each entry ``pi_i`` by ``f(pi_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import factorial, perm
from typing import Iterable, Iterator, Sequence

from .dtd import check_permutation, type_table
from .errors import GuardError

VERIFY_GUARD = 8


@dataclass(frozen=True)
class PhiResult:
    """Image of a permutation, or ``image=None`` for an exceptional one.

    ``k`` is the pivot position (m < n); ``t`` the pivot rank (m >= n).
    """
    image: tuple[int, ...] | None
    k: int | None = None
    t: int | None = None
    witness: tuple[int, ...] = ()

    @property
    def exceptional(self) -> bool:
        return self.image is None


def chi(n: int, t: int) -> tuple[int, ...]:
    """chi_{n,t} on [2n] as its value sequence at 1..2n.

    Sends t to 2n+1-t and shifts the values in between by one towards t,
    so it is order-preserving away from t.
    """
    if not 1 <= t <= 2 * n:
        raise ValueError(f"t={t} outside 1..{2 * n}")
    out = []
    for i in range(1, 2 * n + 1):
        if i == t:
            out.append(2 * n + 1 - t)
        elif t <= n and t < i <= 2 * n + 1 - t:
            out.append(i - 1)
        elif t > n and 2 * n + 1 - t <= i < t:
            out.append(i + 1)
        else:
            out.append(i)
    return tuple(out)


def order_bijection(A: Iterable[int], B: Iterable[int]) -> dict[int, int]:
    """The order-preserving bijection from A onto B."""
    A, B = sorted(A), sorted(B)
    if len(A) != len(B):
        raise ValueError(f"sets of different sizes: {len(A)} vs {len(B)}")
    return dict(zip(A, B))


def is_exceptional(pi: Sequence[int], m: int) -> bool:
    return all(pi[i - 1] > 2 * (m + 1 - i) for i in range(1, m + 1))


def phi(m: int, n: int, pi: Sequence[int]) -> PhiResult:
    if m < 2 or n < 2:
        raise ValueError("phi is defined for m, n >= 2")
    check_permutation(pi, m + n)
    pi = tuple(pi)
    if m == n:
        c = chi(n, pi[0])
        return PhiResult(tuple(c[v - 1] for v in pi), t=pi[0])
    if m > n:
        head, tail = pi[:m - n], pi[m - n:]
        fwd = order_bijection(tail, range(1, 2 * n + 1))
        back = {b: a for a, b in fwd.items()}
        t = fwd[tail[0]]
        c = chi(n, t)
        return PhiResult(head + tuple(back[c[fwd[v] - 1]] for v in tail), t=t)
    for k in range(1, m + 1):
        bound = 2 * (m + 1 - k)
        if pi[k - 1] <= bound:
            c = chi(m + 1 - k, pi[k - 1])
            return PhiResult(tuple(v if v > bound else c[v - 1] for v in pi), k=k)
    return PhiResult(None, witness=tuple(range(1, m + 1)))


def exceptional_count(m: int, n: int) -> int:
    """(n-m)(n-m+1)...(n-1) * n!, which equals C(n-1, m) m! n!."""
    if m >= n:
        return 0
    return perm(n - 1, m) * factorial(n)


def enumerate_exceptional(m: int, n: int) -> Iterator[tuple[int, ...]]:
    for pi in permutations(range(1, m + n + 1)):
        if is_exceptional(pi, m):
            yield pi


@dataclass
class InvolutionReport:
    m: int
    n: int
    total: int = 0
    exceptional: int = 0
    expected_exceptional: int = 0
    exceptional_types: set[int] = field(default_factory=set)
    failures: dict[str, list] = field(default_factory=dict)

    def fail(self, check: str, pi) -> None:
        bucket = self.failures.setdefault(check, [])
        if len(bucket) < 5:
            bucket.append(pi)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "m": self.m, "n": self.n, "permutations": str(self.total),
            "exceptional": str(self.exceptional),
            "expected_exceptional": str(self.expected_exceptional),
            "exceptional_types": sorted(self.exceptional_types),
            "failures": {k: [list(p) for p in v] for k, v in sorted(self.failures.items())},
            "pass": self.ok,
        }


def verify_involution(m: int, n: int, guard: int = VERIFY_GUARD) -> InvolutionReport:
    """Exhaustively check phi on S_{m+n}: involution, type inversion, the
    exceptional set and the pivot bookkeeping."""
    if m + n > guard:
        raise GuardError(f"involution check limited to m+n <= {guard}")
    types = type_table(m, n)
    report = InvolutionReport(m, n, expected_exceptional=exceptional_count(m, n))
    for pi, tau in types.items():
        report.total += 1
        res = phi(m, n, pi)
        if res.exceptional:
            report.exceptional += 1
            report.exceptional_types.add(tau)
            if m >= n:
                report.fail("exceptional_when_m_ge_n", pi)
            continue
        image = res.image
        again = phi(m, n, image)
        if again.image != pi:
            report.fail("not_an_involution", pi)
        if types[image] != -tau:
            report.fail("not_type_inverting", pi)
        if m < n and again.k != res.k:
            report.fail("k_not_preserved", pi)
        if m > n:
            if again.t != 2 * n + 1 - res.t:
                report.fail("t_not_reflected", pi)
            if set(image[m - n:]) != set(pi[m - n:]):
                report.fail("A_not_preserved", pi)
        if m == n and image[0] != 2 * n + 1 - pi[0]:
            report.fail("first_entry_not_reflected", pi)
    if report.exceptional != report.expected_exceptional:
        report.fail("exceptional_count", (report.exceptional, report.expected_exceptional))
    if len(report.exceptional_types) > 1:
        report.fail("exceptional_types_differ", tuple(sorted(report.exceptional_types)))
    return report
