import json
from collections import Counter
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from taquin import jdt
from taquin.errors import GuardError, PosetError
from taquin.poset import (add_maximum, chain, count_linear_extensions, double_tailed_diamond,
                          inset, is_dual_linear_extension, partitions, shifted_young, young)


def standardize(seq):
    ranks = sorted(seq)
    return tuple(ranks.index(v) for v in seq)


def replay(labels, trace):
    """Labelings after each round, rebuilt from the recorded swaps."""
    lab = list(labels)
    states = []
    for r in trace.rounds:
        for a, b in r.swaps:
            lab[a], lab[b] = lab[b], lab[a]
        states.append(tuple(lab))
    return states


def test_young_21_by_hand():
    P = young((2, 1))
    sigma = jdt.order_column_wise(P)
    e = P.element
    assert [sigma[e(c)] for c in [(1, 2), (2, 1), (1, 1)]] == [1, 2, 3]
    labels = [0] * 3
    labels[e((1, 1))], labels[e((1, 2))], labels[e((2, 1))] = 3, 1, 2
    out, trace = jdt.jdt_sort(P, sigma, labels)
    assert out[e((1, 1))] == 1 and out[e((1, 2))] == 3 and out[e((2, 1))] == 2
    assert [r.swaps for r in trace.rounds] == [(), (), ((e((1, 1)), e((1, 2))),)]


def test_d22_reverse_permutation_by_hand():
    P = double_tailed_diamond(2, 2)
    e = P.element
    sigma = jdt.order_dtd(2, 2, P)
    assert [sigma[e(c)] for c in [(2, 2), (2, 1), (1, 2), (1, 1)]] == [1, 2, 3, 4]
    labels = jdt.labeling_from_permutation(P, sigma, (4, 3, 2, 1))
    assert [labels[e(c)] for c in [(2, 2), (2, 1), (1, 2), (1, 1)]] == [1, 2, 3, 4]
    out, trace = jdt.jdt_sort(P, sigma, labels)
    assert [out[e(c)] for c in [(1, 1), (1, 2), (2, 1), (2, 2)]] == [1, 2, 3, 4]
    assert [r.element for r in trace.rounds] == [e((2, 2)), e((2, 1)), e((1, 2)), e((1, 1))]
    assert [r.swaps for r in trace.rounds] == [
        (), ((e((2, 1)), e((2, 2))),), ((e((1, 2)), e((2, 2))),),
        ((e((1, 1)), e((2, 1))), (e((2, 1)), e((2, 2))))]
    assert trace.swap_count == 4


def test_order_dtd_layout():
    m, n = 4, 3
    P = double_tailed_diamond(m, n)
    sigma = jdt.order_dtd(m, n, P)
    seq = sorted(range(P.n), key=sigma.__getitem__)
    assert [P.cells[x] for x in seq] == [(2, 5), (2, 4), (2, 3), (1, 4), (1, 3), (1, 2), (1, 1)]
    assert jdt.order_dtd(m, n) == sigma


def test_scan_orders():
    P = young((2, 2))
    col = jdt.order_column_wise(P)
    row = jdt.order_row_wise(P)
    by = lambda s: [P.cells[x] for x in sorted(range(P.n), key=s.__getitem__)]
    assert by(col) == [(2, 2), (1, 2), (2, 1), (1, 1)]
    assert by(row) == [(2, 2), (2, 1), (1, 2), (1, 1)]
    assert jdt.extend_order((2, 1)) == (2, 1, 3)


def test_errors():
    P = chain(3)
    with pytest.raises(PosetError):
        jdt.jdt_sort(P, (3, 2, 1), (1, 2, 3))
    with pytest.raises(PosetError):
        jdt.jdt_sort(P, (1, 2, 3), (1, 1, 3))
    with pytest.raises(PosetError):
        jdt.labeling_from_permutation(P, (1, 2, 3), (1, 2))
    with pytest.raises(GuardError):
        jdt.distribution_exhaustive(chain(12), tuple(range(1, 13)))
    with pytest.raises(ValueError):
        jdt.distribution_sampled(P, (1, 2, 3), 0, 1)


POSETS = [young((3, 2)), shifted_young((3, 1)), double_tailed_diamond(3, 3),
          double_tailed_diamond(2, 4), inset(3, (2, 1, 1))]


def default_order(P):
    if P.cells and P.cells[0] == (1, 1) and P.n == len(set(P.cells)):
        return jdt.order_row_wise(P)
    return tuple(range(1, P.n + 1))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(POSETS), st.randoms(use_true_random=False))
def test_output_is_dual_and_idempotent(P, rnd):
    sigma = default_order(P)
    labels = list(range(1, P.n + 1))
    rnd.shuffle(labels)
    out, trace = jdt.jdt_sort(P, sigma, labels)
    assert is_dual_linear_extension(P, out)
    again, trace2 = jdt.jdt_sort(P, sigma, out)
    assert again == out and trace2.swap_count == 0
    states = replay(labels, trace)
    assert states[-1] == out
    # after each round the processed elements are sorted among themselves
    processed = set()
    for r, state in zip(trace.rounds, states):
        processed.add(r.element)
        for x in processed:
            assert all(state[x] < state[y] for y in P.lower[x])


@pytest.mark.parametrize("m, n", [(m, n) for m in range(2, 6) for n in range(2, 6) if m + n <= 7])
def test_relative_order_lemma_and_reduction(m, n):
    P = double_tailed_diamond(m, n)
    sigma = jdt.order_dtd(m, n, P)
    x_el, y_el = P.element((1, m)), P.element((2, m - 1))
    N = m + n
    seen = {}
    for pi in permutations(range(1, N + 1)):
        labels = jdt.labeling_from_permutation(P, sigma, pi)
        _, trace = jdt.jdt_sort(P, sigma, labels, check=False)
        states = replay(labels, trace)
        x = [s[x_el] for s in states]
        y = [s[y_el] for s in states]
        assert x[n - 1] == pi[m - 1]
        assert y[n - 1] == min(pi[m:])
        assert (x[n] < y[n]) == (pi[m - 1] < min(pi[m:]))
        for i in range(n + 1, N + 1):
            key = (i, standardize(pi[N - i:]))
            assert seen.setdefault(key, x[i - 1] < y[i - 1]) == (x[i - 1] < y[i - 1])


@pytest.mark.parametrize("P", POSETS + [young((2, 2, 1))])
def test_census_matches_per_permutation_sort(P):
    sigma = default_order(P)
    brute = Counter(jdt.sort_permutation(P, sigma, pi) for pi in permutations(range(1, P.n + 1)))
    assert jdt.census_counts(P, sigma) == brute
    outcomes = dict(jdt.iter_outcomes(P, sigma))
    assert len(outcomes) == sum(brute.values())
    assert Counter(outcomes.values()) == brute
    assert all(outcomes[pi] == jdt.sort_permutation(P, sigma, pi)
               for pi in list(outcomes)[:200])


def test_census_independent_of_jobs():
    P = young((3, 2, 1))
    sigma = jdt.order_column_wise(P)
    assert jdt.census_counts(P, sigma, jobs=2) == jdt.census_counts(P, sigma, jobs=1)


def test_exhaustive_report():
    P = double_tailed_diamond(2, 3)
    report = jdt.distribution_exhaustive(P, jdt.order_dtd(2, 3, P))
    assert report.size == 120 and report.classes == 2
    assert sorted(report.counts.values()) == [54, 66]
    assert report.uniform is False
    data = report.to_json()
    assert json.loads(json.dumps(data)) == data
    assert data["expected_per_class"] == {"num": "60", "den": "1"}


@pytest.mark.parametrize("lam", [l for n in range(1, 7) for l in partitions(n)])
def test_young_column_wise_uniform(lam):
    P = young(lam)
    assert jdt.distribution_exhaustive(P, jdt.order_column_wise(P)).uniform


@pytest.mark.parametrize("lam", [l for n in range(1, 8) for l in partitions(n, strict=True)])
def test_shifted_row_wise_uniform(lam):
    P = shifted_young(lam)
    assert jdt.distribution_exhaustive(P, jdt.order_row_wise(P)).uniform


@pytest.mark.parametrize("P", [young((2, 1)), young((3, 2)), double_tailed_diamond(3, 3)])
def test_add_maximum_keeps_uniformity(P):
    sigma = jdt.order_row_wise(P)
    assert jdt.distribution_exhaustive(P, sigma).uniform
    assert jdt.distribution_exhaustive(add_maximum(P), jdt.extend_order(sigma)).uniform


def test_sampled_is_deterministic():
    P = inset(3, (2, 1, 1))
    sigma = jdt.order_row_wise(P)
    a = jdt.distribution_sampled(P, sigma, 2000, seed=7)
    b = jdt.distribution_sampled(P, sigma, 2000, seed=7)
    c = jdt.distribution_sampled(P, sigma, 2000, seed=8)
    assert a.counts == b.counts and a.p_value == b.p_value
    assert a.counts != c.counts
    assert sum(a.counts.values()) == 2000 and a.classes == count_linear_extensions(P)
    assert 0.0 <= a.p_value <= 1.0


def test_sampled_single_class():
    report = jdt.distribution_sampled(chain(3), (1, 2, 3), 50, seed=1)
    assert report.classes == 1 and report.p_value == 1.0 and report.chi_square == 0
