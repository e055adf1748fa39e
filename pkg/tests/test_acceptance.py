"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the per-criterion
lines.  Every tolerance is pinned here; nothing is deferred to calibration.
"""

import itertools
import time

import pytest

from nonavg import (
    AvoidanceRule,
    ClosedForm,
    CoefficientTuple,
    behrend_lower_bound,
    check_residue_averaging,
    compare_bound_readings,
    count_zero_one_below,
    count_zero_one_below_dp,
    decompose,
    discover_closed_form,
    generate,
    is_valid,
    is_valid_by_cover,
    naive_generate,
    popcount_residue_pair,
    residue_averaging_witnesses,
    subset_sum_table,
    thue_morse_bit,
    uniform_family_parameters,
    verify_family_prefix,
    zero_one_contains,
    zero_one_count_bounds,
    closed_form_count_bounds,
    zero_one_nth,
)

D = AvoidanceRule.DISTINCT
N = AvoidanceRule.NOT_ALL_EQUAL


def report(num, text):
    print(f"criterion {num}: PASS - {text}")


def test_criterion_1_golden_prefix():
    """The 17-term prefix for the pair tuple, in under a second."""
    t0 = time.time()
    seq = generate(CoefficientTuple((1, 1)), D, max_terms=17)
    elapsed = time.time() - t0
    assert seq.terms == (0, 1, 3, 4, 9, 10, 12, 13, 27, 28, 30, 31, 36, 37, 39, 40, 81)
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    report(1, f"17-term golden prefix in {elapsed * 1000:.0f} ms")


def threes_and_zeros_member(x):
    """Direct predicate: x = M + r with 0 <= r <= 4, M in base 4 all 3s and 0s, ending in 0."""
    for r in range(5):
        m_part = x - r
        if m_part < 0:
            continue
        if m_part % 4 != 0:  # must end with digit 0
            continue
        y = m_part
        good = True
        while y:
            y, digit = divmod(y, 4)
            if digit not in (0, 3):
                good = False
                break
        if good:
            return True
    return False


def test_criterion_2_direct_predicate_equivalence():
    cf = ClosedForm(4, 12, range(5), CoefficientTuple((1, 1, 1)))
    mismatches = [x for x in range(10 ** 5) if cf.contains(x) != threes_and_zeros_member(x)]
    assert mismatches == []
    report(2, "closed-form membership matches the M+r predicate for all x < 10^5")


GATE_ROWS = {
    (1, 1, 1): (12, (0, 1, 2, 3, 4)),
    (1, 1, 2): (16, (0, 1, 2, 3, 4)),
    (1, 1, 1, 1): (122, (0, 1, 2, 3, 5, 7, 13, 26, 27, 28, 29, 31)),
    (1, 1, 2, 4): (29, (0, 1, 2, 3, 4)),
    (1, 1, 1, 1, 1): (25, (0, 1, 2, 3, 4, 5, 6)),
    (1, 1, 1, 1, 2): (31, (0, 1, 2, 3, 4, 5, 6)),
    (1, 1, 1, 1, 3): (30, (0, 1, 2, 3, 4, 5)),
    (1, 1, 2, 2, 2): (32, (0, 1, 2, 3, 4, 5)),
    (1, 1, 1, 2): (103, (0, 1, 2, 3, 4, 14, 18, 19, 20, 21)),
    (1, 1, 1, 2, 2): (106, (0, 1, 2, 3, 4, 14, 15, 16)),
}


def test_criterion_3_catalog_reproduction():
    t0 = time.time()
    for coeffs, (scale, residues) in GATE_ROWS.items():
        found = discover_closed_form(CoefficientTuple(coeffs), max_frontier=5000)
        assert found is not None, coeffs
        cf, rep = found
        assert (cf.scale, cf.residues) == (scale, residues), coeffs
        assert rep.overall
    elapsed = time.time() - t0
    assert elapsed < 600.0, f"took {elapsed:.1f}s"
    report(3, f"ten closed forms rediscovered exactly in {elapsed:.2f}s")


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8, 9])
def test_criterion_4_family_prefixes(m):
    t0 = time.time()
    assert verify_family_prefix(m)
    elapsed = time.time() - t0
    assert elapsed < 300.0, f"m={m} took {elapsed:.1f}s"
    report(4, f"family prefix m={m} matches its residue set in {elapsed:.2f}s")


@pytest.mark.parametrize("coeffs", [(1, 1), (1, 1, 1), (1, 1, 2), (1, 1, 2, 4)])
def test_criterion_5_digit_rule_equivalence(coeffs):
    e = CoefficientTuple(coeffs)
    got = naive_generate(e, N, 2000)
    want = [x for x in range(2001) if zero_one_contains(e, x)]
    assert got == want
    report(5, f"naive not-all-equal sequence for {e.text()} equals the 0/1-digit set up to 2000")


def test_criterion_6_counting_exactness():
    e4 = CoefficientTuple((1, 1, 1))
    assert count_zero_one_below(e4, 10 ** 10) == 131072
    assert count_zero_one_below_dp(e4, 10 ** 10) == 131072
    cf = ClosedForm(4, 12, range(5), e4)
    assert cf.count_below(10 ** 10) == 163840
    assert cf.count_below_dp(10 ** 10) == 163840
    e3 = CoefficientTuple((1, 1))
    assert count_zero_one_below(e3, 3 ** 4) == 2 ** 4
    report(6, "digit-walk counts at 10^10 match the independent digit DP and the power law")


def test_criterion_7_numeric_recomputation():
    value = behrend_lower_bound(4, 10 ** 10)
    assert abs(value - 3187) <= 0.01 * 3187
    readings = {r["label"]: r for r in compare_bound_readings(10 ** 10)["readings"]}
    base5 = readings["base5"]
    assert abs(base5["f_lower_ceil"] - 10133) <= 2
    assert abs(base5["h_lower_ceil"] - 15360) <= 0.005 * 15360
    literal = readings["base4-literal"]
    assert literal["f_lower_ceil"] == 50000
    assert literal["h_lower_ceil"] == 72169
    report(
        7,
        f"density formula {value:.0f} ~ 3187; base5 reading gives "
        f"{base5['f_lower_ceil']} ~ 10133 and {base5['h_lower_ceil']} ~ 15360; "
        f"literal reading {literal['f_lower_ceil']}/{literal['h_lower_ceil']} reported alongside",
    )


def test_criterion_8a_validity_equivalence_exhaustive():
    count = 0
    for length in range(2, 7):
        for coeffs in itertools.combinations_with_replacement(range(1, 9), length):
            e = CoefficientTuple(coeffs)
            assert is_valid(e) == is_valid_by_cover(e), coeffs
            if is_valid(e):
                table = subset_sum_table(e)
                assert sorted(table.entries) == list(range(e.weight))
                assert table.check()
            count += 1
    report(8, f"validity routes agree on all {count} tuples with entries <= 8, length <= 6")


def test_criterion_8b_residue_and_parity_laws():
    for coeffs in [(1, 1), (1, 1, 1), (1, 1, 2)]:
        e = CoefficientTuple(coeffs)
        for n in range(2 ** 16):
            a, b = popcount_residue_pair(e, n)
            assert a == b, (coeffs, n)
    e3 = CoefficientTuple((1, 1))
    for n in range(2 ** 16):
        assert thue_morse_bit(n) == zero_one_nth(e3, n) % 2
    report(8, "popcount residue law and bit-parity law hold for all n < 2^16")


def test_criterion_8c_decomposition_round_trip():
    for base, scale in [(4, 12), (2, 1), (9, 20)]:
        for x in range(10 ** 6):
            dec = decompose(x, base, scale)
            assert dec.value(base, scale) == x
    report(8, "decomposition round-trips for all x < 10^6 at bases 2, 4, 9")


def test_criterion_8d_sandwich_bounds():
    subjects = [
        (CoefficientTuple((1, 1)), ClosedForm(3, 1, [0])),
        (CoefficientTuple((1, 1, 1)), ClosedForm(4, 12, range(5))),
        (CoefficientTuple((1, 1, 2)), ClosedForm(5, 16, range(5))),
    ]
    for e, cf in subjects:
        for k in range(1, 11):
            n = 10 ** k
            rep = zero_one_count_bounds(e, n)
            assert rep.lower <= rep.exact <= rep.upper, (e.text(), n)
            if n > cf.scale:
                hrep = closed_form_count_bounds(cf, n)
                assert hrep.lower <= hrep.exact <= hrep.upper, (e.text(), n)
    report(8, "exact counts sit inside the analytic sandwich for n = 10..10^10")


def test_criterion_9_residue_averaging():
    for m in (4, 5, 6, 7, 9):
        assert check_residue_averaging(m), m
    witnesses = residue_averaging_witnesses(5)
    assert witnesses[7].values == (7, 0, 2, 3, 3)    # 7+0+2+3 = 4*3
    assert witnesses[13].values == (13, 3, 5, 7, 7)  # 13+3+5+7 = 4*7
    # every witness satisfies the relaxed constraint pattern
    for m in (4, 5, 6, 7, 9):
        _, residues = uniform_family_parameters(m)
        rset = set(residues)
        for r1, w in residue_averaging_witnesses(m).items():
            companions = w.values[1:-1]
            assert len(set(companions)) == len(companions)
            assert all(v in rset for v in w.values[1:])
            assert sum(w.values[:-1]) == (m - 1) * w.values[-1]
    report(9, "residue averaging holds for m in {4,5,6,7,9}, reproducing both explicit witnesses")
