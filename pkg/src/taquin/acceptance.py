"""The acceptance battery: every criterion as a function returning a Result.

Shared by ``taquin suite acceptance`` and ``tests/test_acceptance.py``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable

from . import dcomplete, dtd, involution, jdt, tableaux
from .poset import (add_maximum, double_tailed_diamond, dual_linear_extensions, inset,
                    partitions, shifted_young, young)

SAMPLE_SEED = 20140101
SAMPLES = 100_000
P_VALUE_FLOOR = 0.001


@dataclass
class Result:
    number: str
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:>2} {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _pairs(lo: int, total: int):
    for s in range(2 * lo, total + 1):
        for m in range(lo, s - lo + 1):
            yield m, s - m


def _insets(max_size: int):
    for size in range(4, max_size + 1):
        for k in range(2, size):
            for lam in partitions(size - k):
                if len(lam) == k:
                    yield k, lam


def _hook_family(max_young=8, max_shifted=8, max_dtd=9, max_inset=9):
    """(label, poset) for every d-complete family member in the hook checks."""
    for n in range(1, max_young + 1):
        for lam in partitions(n):
            yield f"young{lam}", young(lam)
    for n in range(1, max_shifted + 1):
        for lam in partitions(n, strict=True):
            yield f"shifted{lam}", shifted_young(lam)
    for m, n in _pairs(2, max_dtd):
        if m >= n:
            yield f"D({m},{n})", double_tailed_diamond(m, n)
    for k, lam in _insets(max_inset):
        yield f"inset({k},{lam})", inset(k, lam)


def criterion_1(jobs: int = 1) -> tuple[bool, str]:
    bad = []
    checked = 0
    for m, n in _pairs(2, 9):
        s1, s2 = dtd.s_counts_bruteforce(m, n, jobs)
        checked += 1
        if s1 - s2 != dtd.theorem_difference(m, n) or s1 + s2 != factorial(m + n):
            bad.append((m, n, s1, s2))
    anchors = {(2, 3): 12, (2, 4): 144, (3, 3): 0}
    bad += [(mn, v) for mn, v in anchors.items() if dtd.theorem_difference(*mn) != v]
    return not bad, f"{checked} diamonds exhaustive, mismatches={bad}"


def criterion_2() -> tuple[bool, str]:
    bad = []
    checked = 0
    for m, n in _pairs(1, 9):
        checked += 1
        if dtd.stat_profile_bruteforce(m, n) != dtd.stat_profile_formula(m, n):
            bad.append((m, n))
    rec_bad = []
    for m in range(2, 9):
        for n in range(1, 9):
            c = dtd.stat_profile_formula(m, n).counts
            prev = dtd.stat_profile_formula(m - 1, n).counts
            for k in range(1, m):
                if m * prev[k] + n * prev[k - 1] != c[k]:
                    rec_bad.append((m, n, k))
    return not bad and not rec_bad, f"{checked} profiles, brute mismatches={bad}, recurrence failures={rec_bad}"


def criterion_3() -> tuple[bool, str]:
    bad = []
    checked = 0
    for m, n in _pairs(2, 8):
        report = involution.verify_involution(m, n)
        checked += 1
        if not report.ok:
            bad.append((m, n, report.failures))
    return not bad, f"{checked} (m,n) pairs, failures={bad}"


def criterion_4() -> tuple[bool, str]:
    bad = []
    checked = 0
    for label, P in _hook_family():
        checked += 1
        if dcomplete.hook_count(P) != sum(1 for _ in dual_linear_extensions(P)):
            bad.append(label)
    anchors = {
        "young(3,3,2,1)": (dcomplete.hook_count(young((3, 3, 2, 1))), 168),
        "inset(4,(3,3,2,1))": (dcomplete.hook_count(inset(4, (3, 3, 2, 1))), 429),
    }
    anchors["brute inset(4,(3,3,2,1))"] = (sum(1 for _ in dual_linear_extensions(inset(4, (3, 3, 2, 1)))), 429)
    bad += [k for k, (got, want) in anchors.items() if got != want]
    return not bad, f"{checked} posets + 3 anchors, mismatches={bad}"


def _uniform(P, sigma) -> bool:
    return jdt.distribution_exhaustive(P, sigma).uniform


def criterion_5(jobs: int = 1, slow: bool = True) -> tuple[bool, str]:
    bad = []
    uniform_small = []
    for n in range(1, 8):
        for lam in partitions(n):
            P = young(lam)
            sigma = jdt.order_column_wise(P)
            if _uniform(P, sigma):
                uniform_small.append((P, sigma))
            else:
                bad.append(f"a:young{lam}")
        for lam in partitions(n, strict=True):
            P = shifted_young(lam)
            sigma = jdt.order_row_wise(P)
            if _uniform(P, sigma):
                uniform_small.append((P, sigma))
            else:
                bad.append(f"b:shifted{lam}")
    notes = []
    if slow:
        P = shifted_young((4, 3, 2, 1))
        report = jdt.distribution_exhaustive(P, jdt.order_column_wise(P), jobs=jobs)
        if report.uniform:
            bad.append("c:shifted(4,3,2,1) column-wise came out uniform")
        notes.append(f"c: (4,3,2,1) column-wise counts {min(report.counts.values())}..{max(report.counts.values())}")
    else:
        notes.append("c: skipped")
    for m, n in _pairs(2, 9):
        P = double_tailed_diamond(m, n)
        sigma = jdt.order_dtd(m, n, P)
        uniform = jdt.distribution_exhaustive(P, sigma, jobs=jobs).uniform
        if uniform != (m >= n):
            bad.append(f"d:D({m},{n})")
        if uniform and P.n <= 7:
            uniform_small.append((P, sigma))
    for P, sigma in uniform_small:
        if P.n > 7:
            continue
        if not _uniform(add_maximum(P), jdt.extend_order(sigma)):
            bad.append(f"e:{P.names}")
    return not bad, f"failures={bad}; {'; '.join(notes)}; add-max checked on {sum(P.n <= 7 for P, _ in uniform_small)}"


def criterion_6() -> tuple[bool, str]:
    bad = []
    checked = 0
    for n in range(2, 9):
        for lam in partitions(n):
            if len(lam) < 2:
                continue
            checked += 1
            closed = tableaux.expectation_closed(lam)
            if closed != tableaux.expectation_bruteforce(lam) or closed != tableaux.expectation_tail_sum(lam):
                bad.append(lam)
    anchors = [((3, 3, 2, 1), Fraction(429, 168)), ((3, 2, 1), Fraction(21, 8))]
    anchors += [(tableaux.hook_shape(k), 3 - Fraction(1, k)) for k in range(2, 6)]
    for lam, want in anchors:
        if tableaux.expectation_closed(lam) != want or tableaux.expectation_bruteforce(lam) != want:
            bad.append(("anchor", lam))
    return not bad, f"{checked} shapes + {len(anchors)} anchors, mismatches={bad}"


def criterion_7() -> tuple[bool, str]:
    bad = []
    checked = 0
    for label, P in _hook_family(7, 7, 7, 7):
        checked += 1
        series = dcomplete.hook_series_coefficients(dcomplete.hook_lengths(P), 12)
        if dcomplete.p_partition_counts(P, 12) != series:
            bad.append(label)
    return not bad, f"{checked} posets to degree 12, mismatches={bad}"


def criterion_8(samples: int = SAMPLES, seed: int = SAMPLE_SEED) -> tuple[bool, str]:
    bad = []
    notes = []
    for k, lam in [(3, (2, 2, 1)), (4, (3, 2, 2, 1))]:
        P = inset(k, lam)
        report = jdt.distribution_sampled(P, jdt.order_row_wise(P), samples, seed)
        notes.append(f"P({k},{lam}) p={report.p_value:.4f}")
        if not report.p_value > P_VALUE_FLOOR:
            bad.append((k, lam))
    exhaustive = 0
    for k, lam in _insets(8):
        P = inset(k, lam)
        exhaustive += 1
        if not _uniform(P, jdt.order_row_wise(P)):
            bad.append(("exhaustive", k, lam))
    return not bad, f"{', '.join(notes)}; {exhaustive} insets exhaustive; failures={bad}"


def criterion_9() -> tuple[bool, str]:
    report = tableaux.family_checks(max_hook=8, max_rows=8, max_stair=6, max_cols=3)
    stairs = ", ".join(f"{k}:{float(v[0]):.4f}" for k, (v) in report["staircases"].items())
    return report["pass"], f"staircases {stairs}"


CRITERIA: list[tuple[str, str, Callable[..., tuple[bool, str]]]] = [
    ("1", "difference formula on double-tailed diamonds", criterion_1),
    ("2", "statistic distribution and recurrence", criterion_2),
    ("3", "involution suite", criterion_3),
    ("4", "hook-length counts", criterion_4),
    ("5", "uniformity reproductions", criterion_5),
    ("6", "second-row leader expectation", criterion_6),
    ("7", "generating-function factorization", criterion_7),
    ("8", "inset experiments", criterion_8),
    ("9", "family trends", criterion_9),
]


def run_criterion(number: str, **options) -> Result:
    for num, title, fn in CRITERIA:
        if num == number:
            kwargs = {k: v for k, v in options.items() if k in fn.__code__.co_varnames}
            start = time.perf_counter()
            passed, detail = fn(**kwargs)
            return Result(num, title, passed, detail, time.perf_counter() - start)
    raise KeyError(number)


def run_all(jobs: int = 1, slow: bool = True, echo: Callable[[str], None] | None = None) -> list[Result]:
    results = []
    for num, _, _ in CRITERIA:
        result = run_criterion(num, jobs=jobs, slow=slow)
        results.append(result)
        if echo:
            echo(result.line())
    return results
