"""Double-tailed diamond intervals, d-completeness and generalized hook lengths."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import NamedTuple, Sequence

from .errors import GuardError, NotDCompleteError, PosetError
from .poset import Poset, is_linear_extension


class DiamondShape(NamedTuple):
    """An interval isomorphic to D_{above+1, below+1}, with its incomparable pair."""
    m: int
    n: int
    left: int
    right: int


class TopInterval(NamedTuple):
    w: int
    k: int
    left: int
    right: int
    multiple: bool


@dataclass(frozen=True)
class Violation:
    condition: int
    k: int
    witness: dict[str, int] = field(default_factory=dict)

    def to_json(self, P: Poset) -> dict:
        return {"condition": self.condition, "k": self.k,
                "witness": {role: P.name(x) for role, x in self.witness.items()}}


@dataclass(frozen=True)
class Verdict:
    is_d_complete: bool
    violation: Violation | None = None

    def __bool__(self) -> bool:
        return self.is_d_complete


def _popcount(x: int) -> int:
    return bin(x).count("1")


def diamond_shape(P: Poset, w: int, z: int) -> DiamondShape | None:
    """Shape of ``[w, z]`` if it is a double-tailed diamond, else ``None``.

    An interval is a double-tailed diamond exactly when it has a single
    incomparable pair; the tails are the elements above and below that pair.
    """
    if not P.leq(w, z):
        return None
    mask = P.down[z] & P.up[w]
    members = [x for x in range(P.n) if mask >> x & 1]
    pair = None
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if not P.comparable(a, b):
                if pair is not None:
                    return None
                pair = (a, b)
    if pair is None:
        return None
    l, r = pair
    above = _popcount(mask & P.up[l]) - 1
    below = len(members) - above - 2
    return DiamondShape(above + 1, below + 1, l, r)


@lru_cache(maxsize=128)
def _shapes(P: Poset) -> dict[tuple[int, int], DiamondShape]:
    out = {}
    for w in range(P.n):
        for z in range(P.n):
            if w != z and P.leq(w, z):
                shape = diamond_shape(P, w, z)
                if shape is not None:
                    out[w, z] = shape
    return out


def _k_range(P: Poset) -> range:
    return range(3, P.longest_chain() + 2)


def dk_intervals(P: Poset, k: int) -> list[tuple[int, int]]:
    """All ``(w, z)`` with ``[w, z]`` isomorphic to D_{k-1,k-1}."""
    return sorted((w, z) for (w, z), s in _shapes(P).items() if s.m == s.n == k - 1)


def dk_interval_at_top(P: Poset, z: int) -> TopInterval | None:
    """The d_k-interval with top ``z``, if any.

    When several exist (only possible in a poset that is not d-complete) the one
    with the smallest bottom id is returned and ``multiple`` is set.
    """
    found = sorted((w, s.m + 1, s.left, s.right) for (w, top), s in _shapes(P).items()
                   if top == z and s.m == s.n)
    if not found:
        return None
    w, k, l, r = found[0]
    return TopInterval(w, k, l, r, len(found) > 1)


def dk_minus_intervals(P: Poset, k: int) -> list[tuple[int, int | tuple[int, int]]]:
    """The d_k^- intervals ``(w, y)``, i.e. intervals isomorphic to D_{k-2,k-1}.

    For ``k == 3`` these are diamonds with the top removed: an element ``w`` and
    two of its (necessarily incomparable) upper covers, reported as ``(w, (l, r))``.
    """
    if k < 3:
        raise ValueError("d_k^- intervals are defined for k >= 3")
    if k == 3:
        return [(w, (l, r)) for w in range(P.n)
                for i, l in enumerate(P.upper[w]) for r in P.upper[w][i + 1:]]
    return sorted((w, y) for (w, y), s in _shapes(P).items() if (s.m, s.n) == (k - 2, k - 1))


def is_d_complete(P: Poset) -> Verdict:
    """Check the three d_k-completeness conditions for every feasible k.

    Condition 1 asks for a d_k-interval ``[w, z]`` that completes the given
    d_k^- interval, i.e. with ``z`` above its top (above both upper covers when
    ``k == 3``).
    """
    for k in _k_range(P):
        full = dk_intervals(P, k)
        tops_over: dict[int, list[int]] = {}
        for w, z in full:
            tops_over.setdefault(w, []).append(z)
        for w, y in dk_minus_intervals(P, k):
            tops = y if isinstance(y, tuple) else (y,)
            if not any(all(P.less(t, z) for t in tops) for z in tops_over.get(w, [])):
                witness = {"w": w, "l": y[0], "r": y[1]} if isinstance(y, tuple) else {"w": w, "y": y}
                return Verdict(False, Violation(1, k, witness))
        for w, z in full:
            mask = P.down[z] & P.up[w]
            for c in P.lower[z]:
                if not mask >> c & 1:
                    return Verdict(False, Violation(2, k, {"w": w, "z": z, "outside": c}))
        bottoms: dict[int, list[int]] = {}
        for w, z in full:
            bottoms.setdefault(z, []).append(w)
        for z, ws in sorted(bottoms.items()):
            if len(ws) > 1:
                return Verdict(False, Violation(3, k, {"w": ws[0], "w2": ws[1], "z": z}))
    return Verdict(True)


def _order_from(P: Poset, order: Sequence[int] | None) -> Sequence[int]:
    if order is None:
        return P.topological
    sigma = [0] * P.n
    for pos, x in enumerate(order, 1):
        sigma[x] = pos
    if len(order) != P.n or not is_linear_extension(P, sigma):
        raise PosetError("processing order is not a linear extension")
    return order


def hook_lengths(P: Poset, order: Sequence[int] | None = None) -> tuple[int, ...]:
    """Hook length of every element of a d-complete poset, indexed by element id.

    ``order`` lists the elements bottom-up in any linear-extension order.
    """
    verdict = is_d_complete(P)
    if not verdict:
        raise NotDCompleteError(f"poset is not d-complete: {verdict.violation}")
    hooks = [0] * P.n
    for z in _order_from(P, order):
        if not P.lower[z]:
            hooks[z] = 1
            continue
        top = dk_interval_at_top(P, z)
        if top is None:
            hooks[z] = _popcount(P.down[z])
        elif top.multiple:
            raise NotDCompleteError(f"{P.name(z)} tops more than one d_k-interval")
        else:
            hooks[z] = hooks[top.left] + hooks[top.right] - hooks[top.w]
    return tuple(hooks)


def hook_count(P: Poset) -> int:
    """Number of linear extensions of a d-complete poset from its hook lengths."""
    denom = prod(hook_lengths(P))
    count, rest = divmod(factorial(P.n), denom)
    if rest:
        raise ArithmeticError(f"{P.n}! is not divisible by the hook product {denom}")
    return count


def p_partition_counts(P: Poset, max_degree: int, max_size: int = 8,
                       degree_guard: int = 14) -> list[int]:
    """Coefficients a_0..a_D, a_d = number of order-reversing maps P -> N summing to d.

    Exhaustive: every such map with total at most ``max_degree`` is visited.
    """
    if P.n > max_size or max_degree > degree_guard:
        raise GuardError(f"p_partition_counts limited to |P| <= {max_size}, degree <= {degree_guard}")
    counts = [0] * (max_degree + 1)
    order = list(reversed(P.topological))  # maxima first
    upper = P.upper
    value = [0] * P.n

    def assign(pos: int, total: int) -> None:
        if pos == len(order):
            counts[total] += 1
            return
        x = order[pos]
        lo = max((value[y] for y in upper[x]), default=0)
        for v in range(lo, max_degree - total + 1):
            value[x] = v
            assign(pos + 1, total + v)

    assign(0, 0)
    return counts


def hook_series_coefficients(hooks: Sequence[int], max_degree: int) -> list[int]:
    """Coefficients of prod_z 1/(1 - x^h_z) up to ``max_degree``."""
    coeffs = [1] + [0] * max_degree
    for h in hooks:
        for d in range(h, max_degree + 1):
            coeffs[d] += coeffs[d - h]
    return coeffs
