from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from taquin import dtd
from taquin.errors import GuardError, PosetError

SMALL = [(m, n) for m in range(2, 7) for n in range(2, 7) if m + n <= 7]


def cycle_count(p):
    seen, cycles = set(), 0
    for start in range(len(p)):
        if start not in seen:
            cycles += 1
            x = start
            while x not in seen:
                seen.add(x)
                x = p[x]
    return cycles


def flags(pi, m):
    return tuple(dtd.is_rl_k_min(pi, i, m + 1 - i) for i in range(1, m + 1))


@pytest.mark.parametrize("pi, i, k, want", [
    ((3, 2, 1), 3, 1, True),
    ((3, 2, 1), 1, 2, False),
    ((2, 5, 6, 3, 1, 7, 4, 8), 4, 5, True),
    ((2, 5, 6, 3, 1, 7, 4, 8), 4, 1, False),
    ((1, 2, 3), 1, 1, True),
])
def test_is_rl_k_min(pi, i, k, want):
    assert dtd.is_rl_k_min(pi, i, k) is want


def test_is_rl_k_min_errors():
    with pytest.raises(IndexError):
        dtd.is_rl_k_min((1, 2), 3, 1)
    with pytest.raises(ValueError):
        dtd.is_rl_k_min((1, 2), 1, 0)


def test_c_statistic_examples():
    assert dtd.c_statistic((1, 2, 3, 4, 5), 3) == 3
    assert dtd.c_statistic((2, 1, 5, 3, 4), 2) == 2
    assert dtd.c_statistic(tuple(range(8, 0, -1)), 4) == 0
    assert dtd.c_statistic(tuple(range(7, 0, -1)), 3) == 0
    assert dtd.c_statistic((3, 1, 2), 0) == 0
    with pytest.raises(ValueError):
        dtd.c_statistic((1, 2), 2)


@settings(max_examples=100, deadline=None)
@given(st.permutations(range(1, 9)), st.integers(0, 7))
def test_c_statistic_is_flag_sum(pi, m):
    assert dtd.c_statistic(pi, m) == sum(flags(pi, m))


@pytest.mark.parametrize("s", range(0, 7))
def test_stirling_counts_cycles(s):
    counts = [0] * (s + 1)
    for p in permutations(range(s)):
        counts[cycle_count(p)] += 1
    assert [dtd.stirling1(s, t) for t in range(s + 1)] == counts


def test_profile_examples():
    assert dtd.stat_profile_formula(2, 2).counts == (4, 12, 8)
    assert dtd.stat_profile_formula(2, 3).counts == (12, 54, 54)
    assert dtd.stat_profile_bruteforce(2, 2).counts == (4, 12, 8)
    assert dtd.stat_profile_bruteforce(2, 3).counts == (12, 54, 54)
    for m in range(1, 6):
        for n in range(1, 6):
            counts = dtd.stat_profile_formula(m, n).counts
            assert counts[0] == factorial(m) * factorial(n)
            assert sum(counts) == factorial(m + n)
    assert dtd.stat_profile_formula(2, 3).to_json() == {"m": 2, "n": 3, "counts": ["12", "54", "54"]}
    with pytest.raises(GuardError):
        dtd.stat_profile_bruteforce(6, 5)


@pytest.mark.parametrize("m, n", [(m, n) for m in range(1, 7) for n in range(1, 7) if m + n <= 7])
def test_profile_formula_matches_brute(m, n):
    assert dtd.stat_profile_bruteforce(m, n) == dtd.stat_profile_formula(m, n)


@pytest.mark.parametrize("m", range(2, 9))
@pytest.mark.parametrize("n", range(1, 9))
def test_profile_recurrence(m, n):
    c = dtd.stat_profile_formula(m, n).counts
    prev = dtd.stat_profile_formula(m - 1, n).counts
    for k in range(1, m):
        assert m * prev[k] + n * prev[k - 1] == c[k]


def test_identity_has_positive_type():
    for m, n in SMALL:
        assert dtd.type_of(tuple(range(1, m + n + 1)), m, n) == 1


@pytest.mark.parametrize("m, n", [(m, n) for m in range(2, 7) for n in range(2, 7) if m + n <= 8])
def test_type_implementations_agree(m, n):
    table = dtd.type_table(m, n)
    assert len(table) == factorial(m + n)
    for pi, tau in table.items():
        assert dtd.type_by_parity(pi, m) == tau


def test_type_of_methods_and_errors():
    pi = (5, 3, 4, 1, 2)
    assert dtd.type_of(pi, 2, 3, "jdt") == dtd.type_of(pi, 2, 3, "parity") == dtd.type_of(pi, 2, 3)
    with pytest.raises(ValueError):
        dtd.type_of(pi, 2, 3, "guess")
    with pytest.raises(ValueError):
        dtd.type_of((1, 2, 3), 1, 2)
    with pytest.raises(PosetError):
        dtd.type_of((1, 2, 3, 4), 2, 3)
    with pytest.raises(PosetError):
        dtd.type_of((1, 1, 2, 3, 4), 2, 3)


@pytest.mark.parametrize("m, n", SMALL)
def test_flag_vector_determines_type(m, n):
    by_flags = {}
    for pi, tau in dtd.type_table(m, n).items():
        assert by_flags.setdefault(flags(pi, m), tau) == tau


def test_theorem_examples():
    assert dtd.theorem_difference(3, 2) == 0
    assert dtd.theorem_difference(2, 3) == 12
    assert dtd.theorem_difference(2, 4) == 144
    assert dtd.theorem_difference(3, 5) == -(4 * 6 * 120)
    assert dtd.s_counts_bruteforce(2, 3) == (66, 54)
    assert dtd.s_counts_bruteforce(2, 4) == (432, 288)
    with pytest.raises(GuardError):
        dtd.s_counts_bruteforce(6, 5)


@pytest.mark.parametrize("m, n", [(m, n) for m in range(2, 7) for n in range(2, 7) if m + n <= 8])
def test_difference_by_brute_force(m, n):
    s1, s2 = dtd.s_counts_bruteforce(m, n)
    assert s1 + s2 == factorial(m + n)
    assert s1 - s2 == dtd.theorem_difference(m, n) == dtd.alternating_sum(m, n)
    assert (s1 == s2) == (m >= n)


def test_alternating_sum_wider_range():
    for m in range(2, 10):
        for n in range(2, 10):
            assert dtd.alternating_sum(m, n) == dtd.theorem_difference(m, n)


def test_brute_force_parallel_agrees():
    assert dtd.s_counts_bruteforce(3, 4, jobs=2) == dtd.s_counts_bruteforce(3, 4, jobs=1)
