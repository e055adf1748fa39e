"""Structure checks for the distinct-terms sequences and closed-form discovery.

A candidate description (scale c, residue set R) for a sequence must pass
two conditions before the closed form is accepted:

  (i)  an exact identity tying c to the largest residue and the coefficients;
  (ii) for every offset r1 in [0, c-1] and every slack j in [0, d-2], a
       subset of positions with coefficient sum j plus residues r2..rm
       solving the equation with the required distinctness pattern.

``discover_closed_form`` scans greedy prefixes for the least c whose prefix
passes both, which reproduces the known catalog below.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .closedform import ClosedForm
from .errors import InvalidTuple, UnsupportedM
from .greedy import extend, generate
from .solver import AvoidanceRule, _Budget, relaxed_representation
from .tuples import CoefficientTuple, is_valid


@dataclass(frozen=True)
class ConditionIResult:
    """Both sides of the scale identity."""

    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class CellResult:
    """Outcome for one (offset, slack) pair of the completeness condition."""

    r1: int
    j: int
    subset: tuple | None       # positions 2..m-1, empty tuple allowed; None on failure
    residues: tuple | None     # (r_2, ..., r_m) aligned with positions, averaged last

    @property
    def passed(self) -> bool:
        return self.residues is not None


@dataclass(frozen=True)
class ConditionReport:
    coefficients: CoefficientTuple
    scale: int
    residues: tuple
    cond_i: ConditionIResult
    cells: tuple

    @property
    def overall(self) -> bool:
        return self.cond_i.passed and all(cell.passed for cell in self.cells)

    def to_json_dict(self) -> dict:
        return {
            "tuple": self.coefficients.text(),
            "c": self.scale,
            "R": list(self.residues),
            "cond_i": {"lhs": self.cond_i.lhs, "rhs": self.cond_i.rhs, "pass": self.cond_i.passed},
            "cond_ii": [
                {
                    "r1": cell.r1,
                    "j": cell.j,
                    "H": list(cell.subset) if cell.subset is not None else None,
                    "witness": list(cell.residues) if cell.residues is not None else None,
                }
                for cell in self.cells
            ],
            "overall": self.overall,
        }


def check_scale_identity(coefficients, residues, scale) -> ConditionIResult:
    """scale == 1 + d*max(residues) - sum over k>=2 of d_k*(m-k-1), evaluated exactly."""
    if not is_valid(coefficients):
        raise InvalidTuple(f"{coefficients!r} is not valid")
    if not residues:
        raise ValueError("residues must be nonempty")
    coeffs = coefficients.coeffs
    d = coefficients.weight
    m = coefficients.m
    correction = sum(coeffs[k - 1] * (m - k - 1) for k in range(2, m))
    return ConditionIResult(lhs=scale, rhs=1 + d * max(residues) - correction)


def _distinct_value_tuples(positions, residues):
    """Position-ordered tuples of pairwise distinct residues, in lexicographic order."""
    k = len(positions)
    for values in product(residues, repeat=k):
        if len(set(values)) == k:
            yield values


class _SubsetTable:
    """Per position-subset: achievable residue sums with representative assignments."""

    def __init__(self, coeffs_by_position, residues):
        self.coeffs_by_position = coeffs_by_position
        self.residues = residues
        self._cache = {}

    def table(self, positions):
        """dict sum -> list of assignments (position-ordered tuples of distinct residues).

        Lists are kept small: a new assignment is stored only while it
        shrinks the intersection of stored value sets, which preserves, for
        every single value v, some stored assignment avoiding v whenever one
        exists for that sum.
        """
        if positions in self._cache:
            return self._cache[positions]
        coeffs = tuple(self.coeffs_by_position[p] for p in positions)
        out = {}
        inter = {}
        for values in _distinct_value_tuples(positions, self.residues):
            s = sum(c * v for c, v in zip(coeffs, values))
            if s not in out:
                out[s] = [values]
                inter[s] = set(values)
            elif inter[s]:
                shrunk = inter[s] & set(values)
                if shrunk != inter[s]:
                    out[s].append(values)
                    inter[s] = shrunk
        self._cache[positions] = out
        return out


def check_residue_completeness(coefficients, residues, scale, node_budget=None) -> ConditionReport:
    """Search every (offset, slack) cell for a witness; record the first per cell.

    Witnesses are canonical: smallest averaged residue first, then subset
    order, then stored assignment order.
    """
    if not is_valid(coefficients):
        raise InvalidTuple(f"{coefficients!r} is not valid")
    coeffs = coefficients.coeffs
    d = coefficients.weight
    m = coefficients.m
    rs = tuple(sorted(set(residues)))
    budget = _Budget(node_budget)
    positions = tuple(range(2, m))
    coeff_of = {p: coeffs[p - 1] for p in positions}

    subsets_by_slack = {j: [] for j in range(max(d - 1, 0))}
    for size in range(len(positions) + 1):
        for subset in combinations(positions, size):
            j = sum(coeff_of[p] for p in subset)
            if j <= d - 2:
                subsets_by_slack[j].append(subset)

    table = _SubsetTable(coeff_of, rs)
    cond_i = check_scale_identity(coefficients, rs, scale)

    cells = []
    for r1 in range(scale):
        for j in range(d - 1):
            found = None
            for r_m in rs:
                needed = d * r_m - r1
                if needed < 0:
                    continue
                for subset in subsets_by_slack[j]:
                    budget.spend()
                    inside = subset
                    outside = tuple(p for p in positions if p not in subset)
                    in_table = table.table(inside)
                    out_table = table.table(outside)
                    hit = None
                    for s_in in sorted(in_table):
                        rest = needed - s_in
                        if rest not in out_table:
                            continue
                        in_assign = None
                        for cand in in_table[s_in]:
                            if r_m not in cand:
                                in_assign = cand
                                break
                        if in_assign is None:
                            continue
                        hit = (in_assign, out_table[rest][0])
                        break
                    if hit is not None:
                        in_assign, out_assign = hit
                        values = {}
                        for p, v in zip(inside, in_assign):
                            values[p] = v
                        for p, v in zip(outside, out_assign):
                            values[p] = v
                        ordered = tuple(values[p] for p in positions) + (r_m,)
                        found = CellResult(r1, j, inside, ordered)
                        break
                if found is not None:
                    break
            if found is None:
                found = CellResult(r1, j, None, None)
            cells.append(found)
    return ConditionReport(coefficients, scale, rs, cond_i, tuple(cells))


def validate_cell(coefficients, cell: CellResult, residues) -> bool:
    """Re-validate a recorded witness against its constraint list, independent of the search."""
    if cell.residues is None or cell.subset is None:
        return False
    coeffs = coefficients.coeffs
    d = coefficients.weight
    m = coefficients.m
    positions = tuple(range(2, m))
    rset = set(residues)
    vals = dict(zip(positions, cell.residues[:-1]))
    r_m = cell.residues[-1]
    if any(v not in rset for v in cell.residues):
        return False
    if sum(coeffs[p - 1] for p in cell.subset) != cell.j:
        return False
    total = cell.r1 + sum(coeffs[p - 1] * vals[p] for p in positions)
    if total != d * r_m:
        return False
    inside = [vals[p] for p in cell.subset] + [r_m]
    if len(set(inside)) != len(inside):
        return False
    outside = [vals[p] for p in positions if p not in cell.subset]
    if len(set(outside)) != len(outside):
        return False
    return True


def discover_closed_form(
    coefficients,
    max_residues: int = 64,
    max_frontier: int = 80000,
    node_budget=None,
):
    """Scan greedy prefixes for the least scale passing both conditions.

    Residue sets are the prefixes {a_0..a_z} with candidate scale a_{z+1};
    z runs upward so the first hit has minimal scale.  Returns
    (ClosedForm, ConditionReport) or None when the caps are reached.
    """
    if not is_valid(coefficients):
        raise InvalidTuple(f"{coefficients!r} is not valid")
    seq = generate(
        coefficients, AvoidanceRule.DISTINCT, max_terms=2, max_value=max_frontier, node_budget=node_budget
    )
    for z in range(max_residues):
        if len(seq.terms) < z + 2:
            seq = extend(seq, max_terms=z + 2, max_value=max_frontier, node_budget=node_budget)
            if len(seq.terms) < z + 2:
                return None  # frontier cap reached before enough terms appeared
        rs = seq.terms[: z + 1]
        scale = seq.terms[z + 1]
        if not check_scale_identity(coefficients, rs, scale).passed:
            continue
        report = check_residue_completeness(coefficients, rs, scale, node_budget=node_budget)
        if report.overall:
            cf = ClosedForm(coefficients.base, scale, rs, coefficients)
            return cf, report
    return None


# ---------------------------------------------------------------------------
# The all-ones family: explicit parameters for every m >= 3.


def uniform_family_parameters(m: int):
    """(scale, residues) for the sequence avoiding plain averages of m-1 terms.

    Small odd sizes (3, 5, 7) are explicit; even sizes and odd sizes above 7
    come from the closed formulas in the catalog.
    """
    if m < 3:
        raise UnsupportedM(f"m must be at least 3, got {m}")
    if m == 3:
        return 1, (0,)
    if m == 5:
        return 122, (0, 1, 2, 3, 5, 7, 13, 26, 27, 28, 29, 31)
    if m == 7:
        return 219, (0, 1, 2, 3, 4, 5, 7, 10, 33, 34, 35, 36, 37, 38)
    n = m // 2
    if m % 2 == 0:
        return 2 * n * n + 3 * n - 2, tuple(range(2 * n + 1))
    base_set = list(range(2 * n)) + [2 * n + 1]
    shift = 2 * n * n + 5 * n
    residues = sorted(base_set + [3 * n + 1] + [v + shift for v in base_set])
    return 4 * n ** 3 + 12 * n * n + 5 * n, tuple(residues)


def verify_family_prefix(m: int, node_budget=None) -> bool:
    """Generate the greedy sequence below the family scale and compare with the residues."""
    scale, residues = uniform_family_parameters(m)
    seq = generate(
        CoefficientTuple.uniform(m),
        AvoidanceRule.DISTINCT,
        max_value=scale - 1,
        node_budget=node_budget,
    )
    return seq.terms == residues


def residue_averaging_witnesses(m: int, node_budget=None):
    """For each family residue r1, a relaxed witness averaging back into the set.

    r2..r_{m-1} are pairwise distinct residues, the averaged value is a
    residue and may repeat one of them.  Returns {r1: Witness or None}.
    """
    _, residues = uniform_family_parameters(m)
    coefficients = CoefficientTuple.uniform(m)
    out = {}
    for r1 in residues:
        out[r1] = relaxed_representation(r1, residues, coefficients, node_budget=node_budget)
    return out


def check_residue_averaging(m: int, node_budget=None) -> bool:
    """True iff every family residue admits a relaxed averaging witness."""
    return all(w is not None for w in residue_averaging_witnesses(m, node_budget).values())


# ---------------------------------------------------------------------------
# Catalog of confirmed closed forms (distinct-terms sequences, m <= 6).
#
# Each entry: coefficient tuple -> (scale, residues).  The base is always
# the tuple weight plus one.  Every row is reproduced by discovery, greedy
# generation, and the naive oracle; two widely circulated residue lists are
# corrected here because the sequences themselves disagree with them:
# (1,1,2,3) has residues {0,1,2,3,10,11,12} (not the (1,1,1,2,3) list) and
# (1,1,2,4,7) omits 5 (the first six terms are 0,1,2,3,4,6).

KNOWN_CLOSED_FORMS = {
    (1, 1, 1): (12, (0, 1, 2, 3, 4)),
    (1, 1, 2): (16, (0, 1, 2, 3, 4)),
    (1, 1, 1, 1): (122, (0, 1, 2, 3, 5, 7, 13, 26, 27, 28, 29, 31)),
    (1, 1, 1, 2): (103, (0, 1, 2, 3, 4, 14, 18, 19, 20, 21)),
    (1, 1, 2, 3): (81, (0, 1, 2, 3, 10, 11, 12)),
    (1, 1, 2, 4): (29, (0, 1, 2, 3, 4)),
    (1, 1, 1, 1, 1): (25, (0, 1, 2, 3, 4, 5, 6)),
    (1, 1, 1, 1, 2): (31, (0, 1, 2, 3, 4, 5, 6)),
    (1, 1, 1, 1, 3): (30, (0, 1, 2, 3, 4, 5)),
    (1, 1, 1, 1, 4): (51, (0, 1, 2, 3, 4, 6, 7)),
    (1, 1, 1, 2, 2): (106, (0, 1, 2, 3, 4, 14, 15, 16)),
    (1, 1, 1, 2, 3): (1170, (0, 1, 2, 3, 4, 14, 17, 31, 130, 131, 132, 133, 134, 144, 147)),
    (1, 1, 1, 3, 3): (38, (0, 1, 2, 3, 4, 5)),
    (1, 1, 1, 3, 4): (43, (0, 1, 2, 3, 4, 5)),
    (1, 1, 1, 3, 5): (48, (0, 1, 2, 3, 4, 5)),
    (1, 1, 1, 3, 6): (653, (0, 1, 2, 3, 4, 12, 34, 42, 48, 55)),
    (1, 1, 2, 2, 2): (32, (0, 1, 2, 3, 4, 5)),
    (1, 1, 2, 2, 3): (208, (0, 1, 2, 3, 4, 18, 19, 20, 24)),
    (1, 1, 2, 2, 5): (3622, (0, 1, 2, 3, 4, 19, 22, 28, 50, 300, 301, 302, 303, 304, 319, 322, 330)),
    (1, 1, 2, 2, 6): (52, (0, 1, 2, 3, 4, 5)),
    (1, 1, 2, 3, 3): (401, (0, 1, 2, 3, 4, 8, 37, 38, 39, 40, 41)),
    (1, 1, 2, 3, 4): (420, (0, 1, 2, 3, 4, 23, 35, 37, 39)),
    (1, 1, 2, 3, 7): (61, (0, 1, 2, 3, 4, 5)),
    (1, 1, 2, 4, 4): (50, (0, 1, 2, 3, 4, 5)),
    (1, 1, 2, 4, 7): (80, (0, 1, 2, 3, 4, 6)),
}


def catalog_closed_form(coefficients: CoefficientTuple) -> ClosedForm:
    """ClosedForm from the catalog; KeyError when the tuple is not cataloged."""
    scale, residues = KNOWN_CLOSED_FORMS[coefficients.coeffs]
    return ClosedForm(coefficients.base, scale, residues, coefficients)
