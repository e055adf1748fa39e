"""Exact decision procedure and witness search for weighted-average equations.

Given a coefficient tuple E and a finite set of nonnegative integers, the
functions here decide whether the set contains a solution to

    d_1*x_1 + ... + d_{m-1}*x_{m-1} = d*x_m

under one of two nontriviality rules, and produce an explicit witness when
one exists.  Searches are exhaustive and deterministic; a node budget guards
against runaway inputs and exhausting it raises instead of returning "no".
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right, insort
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .errors import BudgetExhausted
from .tuples import VALUE_LIMIT, CoefficientTuple

DEFAULT_NODE_BUDGET = 10 ** 8


class AvoidanceRule(Enum):
    """Which assignments count as forbidden solutions."""

    DISTINCT = "distinct"          # all m values pairwise distinct
    NOT_ALL_EQUAL = "notallequal"  # at least two of the m values differ

    @classmethod
    def from_text(cls, text: str) -> "AvoidanceRule":
        for rule in cls:
            if rule.value == text.strip().lower():
                return rule
        raise ValueError(f"unknown rule {text!r} (expected distinct or notallequal)")


@dataclass(frozen=True)
class Witness:
    """A concrete solution (x_1, ..., x_m); the last value is the averaged side."""

    values: tuple


def witness_satisfies(values, coefficients: CoefficientTuple, rule: AvoidanceRule) -> bool:
    """Check the witness invariants: the equation holds and the rule is met."""
    coeffs = coefficients.coeffs
    if len(values) != coefficients.m:
        return False
    if any(v < 0 for v in values):
        return False
    lhs = sum(c * v for c, v in zip(coeffs, values))
    if lhs != coefficients.weight * values[-1]:
        return False
    if rule is AvoidanceRule.DISTINCT:
        return len(set(values)) == len(values)
    return len(set(values)) >= 2


class _Budget:
    __slots__ = ("cap", "nodes")

    def __init__(self, cap):
        self.cap = DEFAULT_NODE_BUDGET if cap is None else cap
        self.nodes = 0

    def spend(self, k: int = 1):
        self.nodes += k
        if self.nodes > self.cap:
            raise BudgetExhausted(self.nodes)


def _check_values_small(values):
    for v in values:
        if v < 0 or v >= VALUE_LIMIT:
            raise ValueError(f"value {v} outside [0, 2^63)")


def _iter_assignments(slots, target, pool, pool_set, used, distinct, budget):
    """Yield value tuples for ``slots`` (coefficients, nonincreasing) summing to target.

    Values come from the sorted ``pool``.  Positions sharing a coefficient
    receive values in strictly increasing (distinct) or nondecreasing order,
    which removes permutation duplicates without losing solutions.  When
    ``distinct`` is set, values must also avoid ``used`` and each other.
    Enumeration order is ascending at every level, so the first yield is
    canonical.
    """
    k = len(slots)
    if k == 0:
        if target == 0:
            yield ()
        return
    if not pool:
        return
    pmin, pmax = pool[0], pool[-1]
    sufmin = [0] * (k + 1)
    sufmax = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        sufmin[i] = sufmin[i + 1] + slots[i] * pmin
        sufmax[i] = sufmax[i + 1] + slots[i] * pmax
    out = [0] * k

    def rec(i, rem, floor_v):
        c = slots[i]
        if i == k - 1:
            budget.spend()
            v, r = divmod(rem, c)
            if (
                r == 0
                and v >= floor_v
                and v in pool_set
                and not (distinct and v in used)
            ):
                out[i] = v
                yield tuple(out)
            return
        # window for v: remaining slots must be able to absorb the rest
        lo_num = rem - sufmax[i + 1]
        hi_num = rem - sufmin[i + 1]
        lo = -(-lo_num // c)
        hi = hi_num // c
        if floor_v > lo:
            lo = floor_v
        a = bisect_left(pool, lo)
        b = bisect_right(pool, hi)
        same_next = slots[i + 1] == c
        for v in pool[a:b]:
            budget.spend()
            if distinct and v in used:
                continue
            out[i] = v
            if distinct:
                used.add(v)
            if same_next:
                nf = v + 1 if distinct else v
            else:
                nf = pmin
            yield from rec(i + 1, rem - c * v, nf)
            if distinct:
                used.discard(v)

    yield from rec(0, target, pmin)


def _assemble(coefficients, pairs, rhs):
    """Order assigned (coefficient, value) pairs into the canonical witness layout.

    Values are grouped per coefficient and sorted ascending within a group,
    then laid out along the nondecreasing coefficient positions, with the
    averaged value last.
    """
    by = defaultdict(list)
    for c, v in pairs:
        by[c].append(v)
    out = []
    seen = set()
    for c in coefficients.coeffs:
        if c not in seen:
            seen.add(c)
            out.extend(sorted(by[c]))
    out.append(rhs)
    return Witness(tuple(out))


def _rhs_window(pool, lo_sum, hi_sum, d):
    """Indices of pool values x with lo_sum <= d*x <= hi_sum."""
    lo = -(-lo_sum // d)
    hi = hi_sum // d
    return bisect_left(pool, lo), bisect_right(pool, hi)


def _blocking_witness(terms, terms_set, candidate, coefficients, rule, budget):
    """First witness over terms + {candidate} that uses the candidate, or None.

    ``terms`` must be solution-free, sorted, and exclude the candidate.
    The candidate's role is enumerated: averaged side first, then one
    left-hand slot per distinct coefficient (largest first); inside a role
    the averaged value runs descending from its feasible maximum.
    """
    if not terms:
        return None
    coeffs = coefficients.coeffs
    d = coefficients.weight
    distinct = rule is AvoidanceRule.DISTINCT
    slots_all = tuple(sorted(coeffs, reverse=True))

    # Role A: candidate is the averaged value.
    if distinct:
        pool, pool_set = terms, terms_set
    else:
        pool = list(terms)
        insort(pool, candidate)
        pool_set = terms_set | {candidate}
    target = d * candidate
    used = {candidate} if distinct else None
    for vals in _iter_assignments(slots_all, target, pool, pool_set, used, distinct, budget):
        if not distinct and all(v == candidate for v in vals):
            continue  # the all-equal assignment is the one trivial solution
        return _assemble(coefficients, list(zip(slots_all, vals)), candidate)

    # Role B: candidate on the left-hand side with coefficient u.
    if distinct:
        lhs_pool, lhs_set = terms, terms_set
    else:
        lhs_pool, lhs_set = pool, pool_set
    for u in sorted(set(coeffs), reverse=True):
        rest = list(slots_all)
        rest.remove(u)
        rest = tuple(rest)
        base = u * candidate
        if rest:
            restmin = sum(c * lhs_pool[0] for c in rest)
            restmax = sum(c * lhs_pool[-1] for c in rest)
        else:
            restmin = restmax = 0
        a, b = _rhs_window(terms, base + restmin, base + restmax, d)
        for idx in range(b - 1, a - 1, -1):
            x_m = terms[idx]
            budget.spend()
            target = d * x_m - base
            used = {candidate, x_m} if distinct else None
            for vals in _iter_assignments(rest, target, lhs_pool, lhs_set, used, distinct, budget):
                pairs = list(zip(rest, vals))
                pairs.append((u, candidate))
                return _assemble(coefficients, pairs, x_m)
    return None


def creates_solution(ground, candidate, coefficients, rule, node_budget=None):
    """Witness over ground + {candidate} using the candidate, or None.

    ``ground`` must be solution-free under (coefficients, rule) and must not
    contain the candidate; under those preconditions, None certifies that
    ground + {candidate} is still solution-free.
    """
    terms = sorted(set(ground))
    _check_values_small(terms)
    _check_values_small((candidate,))
    if candidate in set(terms):
        raise ValueError("candidate must not be in the ground set")
    budget = _Budget(node_budget)
    return _blocking_witness(terms, set(terms), candidate, coefficients, rule, budget)


def find_representation(alpha, pool, coefficients, relaxed=False, node_budget=None):
    """Witness with ``alpha`` pinned at position 1 and the rest drawn from pool.

    Default mode: all m values pairwise distinct.  Relaxed mode: only the
    values at positions 2..m-1 must be pairwise distinct; the averaged value
    is unconstrained and may repeat any of them.
    """
    pool_sorted = sorted(set(pool))
    _check_values_small(pool_sorted)
    _check_values_small((alpha,))
    if alpha in set(pool_sorted):
        raise ValueError("alpha must not be in the pool")
    budget = _Budget(node_budget)
    if relaxed:
        return _relaxed_representation(alpha, pool_sorted, coefficients, budget)
    coeffs = coefficients.coeffs
    d = coefficients.weight
    d1 = coeffs[0]
    rest = tuple(sorted(coeffs[1:], reverse=True))
    pool_set = set(pool_sorted)
    base = d1 * alpha
    if rest:
        restmin = sum(c * pool_sorted[0] for c in rest)
        restmax = sum(c * pool_sorted[-1] for c in rest)
    else:
        restmin = restmax = 0
    a, b = _rhs_window(pool_sorted, base + restmin, base + restmax, d)
    for idx in range(b - 1, a - 1, -1):
        x_m = pool_sorted[idx]
        budget.spend()
        target = d * x_m - base
        used = {alpha, x_m}
        for vals in _iter_assignments(rest, target, pool_sorted, pool_set, used, True, budget):
            by = defaultdict(list)
            for c, v in zip(rest, vals):
                by[c].append(v)
            out = [alpha]
            remaining = list(coeffs[1:])
            seen = set()
            for c in remaining:
                if c not in seen:
                    seen.add(c)
                    out.extend(sorted(by[c]))
            out.append(x_m)
            return Witness(tuple(out))
    return None


def _group_partitions(values, groups):
    """Assignments of distinct ``values`` to coefficient groups, deterministically.

    ``groups`` is a list of (coefficient, count) with counts summing to
    len(values).  Yields lists of (coefficient, value) pairs; within a group
    the chosen values are kept sorted ascending.
    """
    if not groups:
        yield []
        return
    coeff, count = groups[0]
    vals = sorted(values)
    for chosen in combinations(vals, count):
        rest = [v for v in vals if v not in chosen]
        for tail in _group_partitions(rest, groups[1:]):
            yield [(coeff, v) for v in chosen] + tail


def _relaxed_representation(alpha, pool_sorted, coefficients, budget):
    """Relaxed-mode search; companions may come from a pool containing alpha.

    Companion sets below alpha are tried first, largest first; if none work
    the whole pool is scanned ascending.
    """
    coeffs = coefficients.coeffs
    d = coefficients.weight
    d1 = coeffs[0]
    rest_coeffs = coeffs[1:]
    k = len(rest_coeffs)
    pool_set = set(pool_sorted)
    groups = []
    for c in rest_coeffs:
        if groups and groups[-1][0] == c:
            groups[-1][1] += 1
        else:
            groups.append([c, 1])
    groups = [tuple(g) for g in groups]

    def try_combo(combo):
        for pairs in _group_partitions(combo, groups):
            budget.spend()
            s = d1 * alpha + sum(c * v for c, v in pairs)
            q, r = divmod(s, d)
            if r == 0 and q in pool_set:
                out = [alpha]
                by = defaultdict(list)
                for c, v in pairs:
                    by[c].append(v)
                seen = set()
                for c in rest_coeffs:
                    if c not in seen:
                        seen.add(c)
                        out.extend(sorted(by[c]))
                out.append(q)
                return Witness(tuple(out))
        return None

    below = [v for v in pool_sorted if v < alpha]
    for combo in combinations(sorted(below, reverse=True), k):
        budget.spend()
        w = try_combo(combo)
        if w is not None:
            return w
    for combo in combinations(pool_sorted, k):
        budget.spend()
        w = try_combo(combo)
        if w is not None:
            return w
    return None


def relaxed_representation(alpha, pool, coefficients, node_budget=None):
    """Relaxed-mode search where the pool is allowed to contain alpha."""
    pool_sorted = sorted(set(pool))
    _check_values_small(pool_sorted)
    _check_values_small((alpha,))
    return _relaxed_representation(alpha, pool_sorted, coefficients, _Budget(node_budget))


def verify_solution_free(values, coefficients, rule, node_budget=None):
    """Exhaustively search for a witness fully inside ``values``; None means solution-free.

    Deliberately simple (per-group combinations, averaged value solved by
    division) so it can serve as the slow oracle in tests.
    """
    vals = sorted(set(values))
    _check_values_small(vals)
    vset = set(vals)
    coeffs = coefficients.coeffs
    d = coefficients.weight
    budget = _Budget(node_budget)
    distinct = rule is AvoidanceRule.DISTINCT

    groups = []
    for c in coeffs:
        if groups and groups[-1][0] == c:
            groups[-1][1] += 1
        else:
            groups.append([c, 1])
    groups = [tuple(g) for g in groups]

    def rec(gi, used, pairs, acc):
        if gi == len(groups):
            budget.spend()
            q, r = divmod(acc, d)
            if r != 0 or q not in vset:
                return None
            if distinct and (q in used):
                return None
            if not distinct:
                flat = [v for _, v in pairs]
                if all(v == q for v in flat):
                    return None
            return _assemble(coefficients, pairs, q)
        coeff, count = groups[gi]
        chooser = combinations(vals, count) if distinct else _combos_with_repeat(vals, count)
        for chosen in chooser:
            budget.spend()
            if distinct and any(v in used for v in chosen):
                continue
            w = rec(
                gi + 1,
                used | set(chosen) if distinct else used,
                pairs + [(coeff, v) for v in chosen],
                acc + coeff * sum(chosen),
            )
            if w is not None:
                return w
        return None

    return rec(0, frozenset(), [], 0)


def _combos_with_repeat(vals, count):
    from itertools import combinations_with_replacement

    return combinations_with_replacement(vals, count)
