"""Digit-based closed forms: membership, enumeration, and exact counting.

Two families of sets appear here.  The zero-one family for a valid tuple E
is the set of integers whose base-(weight+1) digits are all 0 or 1.  A
``ClosedForm`` scales that family by a constant and adds a finite residue
set: its members are  scale * v + r  with v in the zero-one family and r a
residue.  Counting is done by digit walks, never by enumeration, so bounds
like 10^10 are instant; an independently coded digit DP cross-checks the
walks in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidTuple, Overflow
from .tuples import CoefficientTuple, is_valid

VALUE_LIMIT = 1 << 63


@dataclass(frozen=True)
class Decomposition:
    """x = scale * (digits read in the base) + remainder, digits least significant first."""

    remainder: int
    digits: tuple

    def value(self, base: int, scale: int) -> int:
        acc = 0
        for d in reversed(self.digits):
            acc = acc * base + d
        return scale * acc + self.remainder


def decompose(x: int, base: int, scale: int) -> Decomposition:
    """The unique decomposition of x >= 0 for base >= 2 and scale >= 1.

    remainder = x mod scale; digits are the base digits of the quotient,
    with no trailing zeros stored.
    """
    if x < 0:
        raise ValueError("x must be nonnegative")
    if base < 2:
        raise ValueError("base must be at least 2")
    if scale < 1:
        raise ValueError("scale must be positive")
    q, r = divmod(x, scale)
    digits = []
    while q:
        q, d = divmod(q, base)
        digits.append(d)
    return Decomposition(r, tuple(digits))


def _digits(x: int, base: int):
    out = []
    while x:
        x, d = divmod(x, base)
        out.append(d)
    return out


def zero_one_nth(coefficients: CoefficientTuple, n: int) -> int:
    """n-th member (0-indexed): write n in binary, read it in base weight+1."""
    if not is_valid(coefficients):
        raise InvalidTuple(f"{coefficients!r} is not valid")
    if n < 0:
        raise ValueError("index must be nonnegative")
    base = coefficients.base
    result = 0
    power = 1
    while n:
        if n & 1:
            result += power
        n >>= 1
        power *= base
    if result >= VALUE_LIMIT:
        raise Overflow(f"term does not fit in 63 bits")
    return result


def zero_one_contains(coefficients: CoefficientTuple, x: int) -> bool:
    """True iff every base-(weight+1) digit of x is 0 or 1."""
    if not is_valid(coefficients):
        raise InvalidTuple(f"{coefficients!r} is not valid")
    base = coefficients.base
    while x:
        x, d = divmod(x, base)
        if d > 1:
            return False
    return True


def _count_zero_one_below(n: int, base: int) -> int:
    """Digit walk: how many x < n have only 0/1 digits in the given base."""
    if n <= 0:
        return 0
    digits = _digits(n, base)  # least significant first
    count = 0
    for i in range(len(digits) - 1, -1, -1):
        d = digits[i]
        if d == 0:
            continue
        if d == 1:
            count += 1 << i
        else:
            count += 2 << i  # both 0 and 1 fit below this digit; prefix freed
            return count
    return count  # n itself is a member and is excluded (strict bound)


def _count_zero_one_below_dp(n: int, base: int) -> int:
    """Independent check of the digit walk: memoized position/tight recursion."""
    if n <= 0:
        return 0
    digits = tuple(reversed(_digits(n, base)))  # most significant first

    @lru_cache(maxsize=None)
    def rec(i: int, tight: bool) -> int:
        if i == len(digits):
            return 0 if tight else 1
        total = 0
        for v in (0, 1):
            if tight:
                if v < digits[i]:
                    total += rec(i + 1, False)
                elif v == digits[i]:
                    total += rec(i + 1, True)
            else:
                total += rec(i + 1, False)
        return total

    return rec(0, True)


def count_zero_one_below(coefficients: CoefficientTuple, n: int) -> int:
    """Exact count of zero-one family members strictly below n."""
    if not is_valid(coefficients):
        raise InvalidTuple(f"{coefficients!r} is not valid")
    return _count_zero_one_below(n, coefficients.base)


def count_zero_one_below_dp(coefficients: CoefficientTuple, n: int) -> int:
    """Same count via the independent digit DP (for cross-checking)."""
    if not is_valid(coefficients):
        raise InvalidTuple(f"{coefficients!r} is not valid")
    return _count_zero_one_below_dp(n, coefficients.base)


class ClosedForm:
    """Members are scale * v + r, v with 0/1 digits in the base, r a residue.

    Residues are stored sorted and deduplicated; they must include 0 and stay
    below the scale, which makes ``nth`` strictly increasing.
    """

    __slots__ = ("base", "scale", "residues", "coefficients")

    def __init__(self, base: int, scale: int, residues, coefficients: CoefficientTuple | None = None):
        if base < 2:
            raise ValueError("base must be at least 2")
        if scale < 1:
            raise ValueError("scale must be positive")
        rs = tuple(sorted(set(residues)))
        if not rs or rs[0] != 0:
            raise ValueError("residues must include 0")
        if rs[-1] >= scale:
            raise ValueError("residues must be below the scale")
        if any(r < 0 for r in rs):
            raise ValueError("residues must be nonnegative")
        if coefficients is not None:
            if not is_valid(coefficients):
                raise InvalidTuple(f"{coefficients!r} is not valid")
            if coefficients.base != base:
                raise ValueError("base must equal the tuple weight plus one")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "residues", rs)
        object.__setattr__(self, "coefficients", coefficients)

    def __setattr__(self, name, value):
        raise AttributeError("ClosedForm is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, ClosedForm)
            and (self.base, self.scale, self.residues) == (other.base, other.scale, other.residues)
        )

    def __hash__(self):
        return hash((self.base, self.scale, self.residues))

    def __repr__(self):
        return f"ClosedForm({self.text()!r})"

    @classmethod
    def from_text(cls, text: str, coefficients=None) -> "ClosedForm":
        """Parse the report syntax ``c=<int> base=<int> R=<csv>``."""
        fields = {}
        for part in text.split():
            key, _, value = part.partition("=")
            fields[key] = value
        try:
            scale = int(fields["c"])
            base = int(fields["base"])
            residues = [int(v) for v in fields["R"].split(",")]
        except (KeyError, ValueError) as exc:
            raise ValueError(f"cannot parse closed form {text!r}") from exc
        return cls(base, scale, residues, coefficients)

    def text(self) -> str:
        return f"c={self.scale} base={self.base} R={','.join(str(r) for r in self.residues)}"

    def _nth_scaled(self, q: int) -> int:
        result = 0
        power = 1
        while q:
            if q & 1:
                result += power
            q >>= 1
            power *= self.base
        return result

    def nth(self, n: int) -> int:
        """n-th member in increasing order (0-indexed)."""
        if n < 0:
            raise ValueError("index must be nonnegative")
        q, s = divmod(n, len(self.residues))
        value = self.scale * self._nth_scaled(q) + self.residues[s]
        if value >= VALUE_LIMIT:
            raise Overflow("term does not fit in 63 bits")
        return value

    def contains(self, x: int) -> bool:
        if x < 0:
            return False
        dec = decompose(x, self.base, self.scale)
        return dec.remainder in set(self.residues) and all(d <= 1 for d in dec.digits)

    def count_below(self, n: int) -> int:
        """Exact count of members strictly below n, by digit walk per residue."""
        total = 0
        for r in self.residues:
            if n <= r:
                continue
            bound = (n - r - 1) // self.scale + 1  # v < (n - r) / scale
            total += _count_zero_one_below(bound, self.base)
        return total

    def count_below_dp(self, n: int) -> int:
        """Independent digit-DP version of count_below (for cross-checking)."""
        total = 0
        for r in self.residues:
            if n <= r:
                continue
            bound = (n - r - 1) // self.scale + 1
            total += _count_zero_one_below_dp(bound, self.base)
        return total


def popcount_residue_pair(coefficients: CoefficientTuple, n: int):
    """(popcount(n) mod weight, n-th zero-one member mod weight); equality is the tested law."""
    d = coefficients.weight
    return (n.bit_count() % d, zero_one_nth(coefficients, n) % d)


def thue_morse_bit(n: int) -> int:
    """Parity of the number of 1-bits of n."""
    return n.bit_count() & 1
