"""Greedy generation of the avoidance sequences, resumable, with a naive oracle.

The greedy rule: start at 0 and repeatedly append the least integer that
creates no forbidden solution among the chosen terms.  ``generate`` drives
the exact solver candidate by candidate; ``naive_generate`` is a separate,
deliberately unoptimized implementation used as an independent oracle in
tests and must never share search code with the solver module.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExhausted
from .solver import AvoidanceRule, _blocking_witness, _Budget
from .tuples import CoefficientTuple

CACHE_RULE_TEXT = {AvoidanceRule.DISTINCT: "distinct", AvoidanceRule.NOT_ALL_EQUAL: "notallequal"}


@dataclass(frozen=True)
class GreedySequence:
    """A generated prefix: terms plus the highest integer examined so far."""

    coefficients: CoefficientTuple
    rule: AvoidanceRule
    terms: tuple
    frontier: int


def _scan(coefficients, rule, terms, terms_set, start, max_terms, max_value, node_budget):
    """Examine candidates start, start+1, ... appending accepted ones.

    Returns the highest examined value (start-1 when nothing was examined).
    On budget exhaustion the partial state is attached to the exception.
    """
    n = start
    frontier = start - 1
    while True:
        if max_terms is not None and len(terms) >= max_terms:
            break
        if max_value is not None and n > max_value:
            frontier = max_value
            break
        budget = _Budget(node_budget)
        try:
            witness = _blocking_witness(terms, terms_set, n, coefficients, rule, budget)
        except BudgetExhausted as exc:
            exc.partial = GreedySequence(coefficients, rule, tuple(terms), n - 1)
            raise
        if witness is None:
            terms.append(n)
            terms_set.add(n)
        frontier = n
        n += 1
    return frontier


def generate(coefficients, rule, max_terms=None, max_value=None, node_budget=None) -> GreedySequence:
    """The unique greedy prefix with at most max_terms terms and frontier <= max_value."""
    if max_terms is None and max_value is None:
        raise ValueError("need max_terms or max_value")
    if max_terms is not None and max_terms <= 0:
        return GreedySequence(coefficients, rule, (), -1)
    terms: list = []
    terms_set: set = set()
    frontier = _scan(coefficients, rule, terms, terms_set, 0, max_terms, max_value, node_budget)
    return GreedySequence(coefficients, rule, tuple(terms), frontier)


def extend(seq: GreedySequence, max_terms=None, max_value=None, node_budget=None) -> GreedySequence:
    """Continue scanning from frontier+1; equals a fresh generate with the larger caps."""
    if max_terms is None and max_value is None:
        raise ValueError("need max_terms or max_value")
    terms = list(seq.terms)
    terms_set = set(terms)
    frontier = _scan(
        seq.coefficients, seq.rule, terms, terms_set, seq.frontier + 1, max_terms, max_value, node_budget
    )
    return GreedySequence(seq.coefficients, seq.rule, tuple(terms), max(seq.frontier, frontier))


def skip_witness(seq: GreedySequence, value: int, node_budget=None):
    """Recompute the rejection witness for a skipped integer at or below the frontier."""
    if value in set(seq.terms):
        raise ValueError(f"{value} is a term, not a skip")
    ground = [t for t in seq.terms if t < value]
    budget = _Budget(node_budget)
    return _blocking_witness(ground, set(ground), value, seq.coefficients, seq.rule, budget)


# ---------------------------------------------------------------------------
# Independent naive oracle.


def _iter_distinct_groups(groups, pool, used, prefix):
    """All ways to give each coefficient group distinct values from pool."""
    if not groups:
        yield prefix
        return
    coeff, count = groups[0]
    for chosen in combinations(pool, count):
        if any(v in used for v in chosen):
            continue
        yield from _iter_distinct_groups(
            groups[1:], pool, used | set(chosen), prefix + [(coeff, v) for v in chosen]
        )


def _grouped(coeffs):
    groups = []
    for c in coeffs:
        if groups and groups[-1][0] == c:
            groups[-1][1] += 1
        else:
            groups.append([c, 1])
    return [tuple(g) for g in groups]


def _naive_blocked_distinct(coeffs, d, terms, terms_set, n):
    """Is there a distinct-terms solution over terms + {n} that uses n?"""
    m = len(coeffs) + 1
    # Every term is below n, so n cannot sit alone on the averaged side.
    for pos in range(m - 1):
        rest = coeffs[:pos] + coeffs[pos + 1:]
        base = coeffs[pos] * n
        for pairs in _iter_distinct_groups(_grouped(rest), terms, frozenset(), []):
            s = base + sum(c * v for c, v in pairs)
            q, r = divmod(s, d)
            if r == 0 and q in terms_set and q != n:
                if all(q != v for _, v in pairs):
                    return True
    return False


def _profile_sums(profile, terms, cache):
    """Achievable values of sum(c_i * t_i) with t_i ranging over terms, repeats allowed."""
    if profile in cache:
        return cache[profile]
    if not profile:
        result = {0}
    else:
        smaller = _profile_sums(profile[1:], terms, cache)
        c = profile[0]
        result = {s + c * t for s in smaller for t in terms}
    cache[profile] = result
    return result


def _naive_blocked_notallequal(coeffs, d, terms, terms_set, n, sums_cache):
    """Is there a not-all-equal solution over terms + {n} that uses n?

    n may occupy any nonempty set of left-hand slots and/or the averaged
    side; the remaining slots range over terms with repetition.  Any such
    assignment with a term-valued slot is automatically not all equal.
    """
    m = len(coeffs) + 1
    k = m - 1
    seen = set()
    for mask in range(1 << k):
        taken = [i for i in range(k) if (mask >> i) & 1]
        sigma = sum(coeffs[i] for i in taken)
        profile = tuple(sorted(coeffs[i] for i in range(k) if not (mask >> i) & 1))
        key = (sigma, profile)
        if key in seen:
            continue
        seen.add(key)
        sums = _profile_sums(profile, terms, sums_cache)
        if mask:
            # n on the averaged side as well, unless every slot holds n
            if profile:
                if (d - sigma) * n in sums:
                    return True
            # averaged side drawn from terms
            for x_m in terms:
                if d * x_m - sigma * n in sums:
                    return True
        else:
            # n only on the averaged side: impossible, every term is below n
            continue
    return False


def naive_generate(coefficients, rule, max_value):
    """Same output as generate, by unoptimized enumeration; test oracle only."""
    coeffs = coefficients.coeffs
    d = coefficients.weight
    terms: list = []
    terms_set: set = set()
    sums_cache: dict = {}
    for n in range(max_value + 1):
        if rule is AvoidanceRule.DISTINCT:
            blocked = _naive_blocked_distinct(coeffs, d, terms, terms_set, n)
        else:
            blocked = _naive_blocked_notallequal(coeffs, d, terms, terms_set, n, sums_cache)
        if not blocked:
            terms.append(n)
            terms_set.add(n)
            sums_cache = {}
    return terms


# ---------------------------------------------------------------------------
# Sequence cache files.


def write_cache(path, seq: GreedySequence):
    """Cache format: header line, then one decimal term per line."""
    header = (
        f"# tuple={seq.coefficients.text()} rule={CACHE_RULE_TEXT[seq.rule]} "
        f"frontier={seq.frontier}\n"
    )
    with open(path, "w", encoding="ascii") as fh:
        fh.write(header)
        for t in seq.terms:
            fh.write(f"{t}\n")


def read_cache(path) -> GreedySequence:
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if not header.startswith("# "):
            raise ValueError("missing cache header")
        fields = dict(part.split("=", 1) for part in header[2:].split())
        coefficients = CoefficientTuple.from_text(fields["tuple"])
        rule = AvoidanceRule.from_text(fields["rule"])
        frontier = int(fields["frontier"])
        terms = tuple(int(line) for line in fh if line.strip())
    return GreedySequence(coefficients, rule, terms, frontier)
