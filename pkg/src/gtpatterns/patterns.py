"""Gelfand-Tsetlin patterns for the orthogonal group.

A pattern with k rows has row i of length (i+1)//2.  Even rows are weakly
decreasing non-negative integer vectors; odd rows may carry a sign on their
last entry.  Consecutive rows interlace after taking absolute values.

Rows are plain tuples of ints throughout; all counting is exact.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

Row = tuple[int, ...]
Pattern = tuple[Row, ...]


def row_length(i: int) -> int:
    """Length of row i of a pattern (rows are 1-indexed)."""
    return (i + 1) // 2


def abs_row(row: Row) -> Row:
    return tuple(abs(e) for e in row)


def is_weakly_decreasing(row: Row) -> bool:
    return all(row[i] >= row[i + 1] for i in range(len(row) - 1))


def is_nonneg_row(row: Row) -> bool:
    return is_weakly_decreasing(row) and all(e >= 0 for e in row)


def is_signed_row(row: Row) -> bool:
    """A weakly decreasing non-negative row whose last entry may be negative."""
    head, last = row[:-1], row[-1]
    if not is_nonneg_row(head):
        return False
    if head and abs(last) > head[-1]:
        return False
    return True


def row_value_ok(i: int, row: Row) -> bool:
    """Shape and sign constraints for a free-standing value of row i."""
    if len(row) != row_length(i):
        return False
    return is_signed_row(row) if i % 2 == 1 else is_nonneg_row(row)


def interlaces(lower: Row, upper: Row) -> bool:
    """Interlacing lower <= upper, with one extra inequality when the upper
    row is longer by one entry.

    Raises ValueError when the length gap is outside {0, 1}.
    """
    n = len(lower)
    if len(upper) not in (n, n + 1):
        raise ValueError(
            f"length gap must be 0 or 1, got lower={n}, upper={len(upper)}"
        )
    if not (is_weakly_decreasing(lower) and is_weakly_decreasing(upper)):
        raise ValueError("interlacing is defined for weakly decreasing rows")
    if any(lower[i] > upper[i] for i in range(n)):
        return False
    if any(upper[i + 1] > lower[i] for i in range(n if len(upper) == n + 1 else n - 1)):
        return False
    return True


def pattern_is_valid(pattern: Pattern) -> bool:
    """True iff shapes match and all consecutive absolute rows interlace."""
    k = len(pattern)
    if k < 1:
        return False
    for i, row in enumerate(pattern, start=1):
        if not row_value_ok(i, row):
            return False
    for i in range(1, k):
        if not interlaces(abs_row(pattern[i - 1]), abs_row(pattern[i])):
            return False
    return True


def _lower_row_boxes(upper: Row, length: int) -> list[tuple[int, int]]:
    """Per-coordinate [lo, hi] ranges for rows x with |x| interlacing upper."""
    n = len(upper)
    if length == n:
        return [(upper[i + 1] if i < n - 1 else 0, upper[i]) for i in range(n)]
    if length == n - 1:
        return [(upper[i + 1], upper[i]) for i in range(n - 1)]
    raise ValueError(f"target length must be {n - 1} or {n}, got {length}")


def enumerate_lower_rows(upper: Row, length: int, signed_last: bool) -> list[Row]:
    """All rows x of the given length with |x| interlacing upper, in
    lexicographic order.  With signed_last, every row whose last entry is
    m > 0 appears both as +m and -m.
    """
    if not is_nonneg_row(upper):
        raise ValueError(f"upper row must be non-negative weakly decreasing: {upper}")
    boxes = _lower_row_boxes(upper, length)
    rows: list[Row] = []
    for combo in itertools.product(*[range(lo, hi + 1) for lo, hi in boxes]):
        rows.append(combo)
        if signed_last and combo and combo[-1] > 0:
            rows.append(combo[:-1] + (-combo[-1],))
    rows.sort()
    return rows


@lru_cache(maxsize=None)
def count_patterns(k: int, lam: Row) -> int:
    """Number of Gelfand-Tsetlin patterns with k rows and top row lam."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not row_value_ok(k, lam):
        raise ValueError(f"invalid row-{k} value: {lam}")
    if k == 1:
        return 1
    signed = (k - 1) % 2 == 1
    total = 0
    for mu in enumerate_lower_rows(abs_row(lam), row_length(k - 1), signed):
        total += count_patterns(k - 1, mu)
    return total


def enumerate_patterns(k: int, lam: Row) -> Iterator[Pattern]:
    """All patterns with top row lam, by backtracking the counting recursion."""
    if not row_value_ok(k, lam):
        raise ValueError(f"invalid row-{k} value: {lam}")
    if k == 1:
        yield (lam,)
        return
    signed = (k - 1) % 2 == 1
    for mu in enumerate_lower_rows(abs_row(lam), row_length(k - 1), signed):
        for body in enumerate_patterns(k - 1, mu):
            yield body + (lam,)


def zero_pattern(k: int) -> Pattern:
    return tuple((0,) * row_length(i) for i in range(1, k + 1))


def weyl_dimension(d: int, lam: Row) -> int:
    """Dimension of the SO(d) irreducible with highest weight lam, by the
    Weyl product formula.  Independent of the pattern-counting recursion;
    the two must agree since dim V_lam = s_{d-1}(lam).
    """
    if d < 3:
        raise ValueError("d must be >= 3")
    r = d // 2
    if len(lam) != r:
        raise ValueError(f"lam must have length {r} for d={d}")
    if d % 2 == 1:
        if not is_nonneg_row(lam):
            raise ValueError(f"invalid SO({d}) highest weight: {lam}")
        # doubled weights keep everything integral: l_i = 2 lam_i + 2(r-i)+1
        l = [2 * lam[i] + 2 * (r - 1 - i) + 1 for i in range(r)]
        m = [2 * (r - 1 - i) + 1 for i in range(r)]
        dim = Fraction(1)
        for i in range(r):
            dim *= Fraction(l[i], m[i])
            for j in range(i + 1, r):
                dim *= Fraction(l[i] ** 2 - l[j] ** 2, m[i] ** 2 - m[j] ** 2)
    else:
        if not is_signed_row(lam):
            raise ValueError(f"invalid SO({d}) highest weight: {lam}")
        l = [lam[i] + (r - 1 - i) for i in range(r)]
        m = [r - 1 - i for i in range(r)]
        dim = Fraction(1)
        for i in range(r):
            for j in range(i + 1, r):
                dim *= Fraction(l[i] ** 2 - l[j] ** 2, m[i] ** 2 - m[j] ** 2)
    if dim.denominator != 1:
        raise AssertionError(f"non-integer Weyl dimension for d={d}, lam={lam}")
    return int(dim)
