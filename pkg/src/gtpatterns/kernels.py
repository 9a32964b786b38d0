"""Exact Markov kernels driving the pattern dynamics.

Everything here is evaluated in rational arithmetic: with q a Fraction,
every probability returned is a Fraction.  Kernels over infinite state
spaces are exposed as pointwise pmf evaluators; finite row materializers
carry an explicit tail deficit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from gtpatterns.patterns import (
    Row,
    abs_row,
    count_patterns,
    interlaces,
    is_nonneg_row,
    is_signed_row,
    row_length,
)

Q = Fraction


def _check_q(q: Fraction) -> Fraction:
    q = Fraction(q)
    if not 0 < q < 1:
        raise ValueError(f"q must be in (0,1), got {q}")
    return q


# ---------------------------------------------------------------------------
# elementary one-coordinate laws
# ---------------------------------------------------------------------------

def geometric_pmf(q: Fraction, x: int) -> Fraction:
    """P(xi = x) = q^x (1-q) for x >= 0."""
    q = _check_q(q)
    if x < 0:
        raise ValueError("x must be >= 0")
    return q**x * (1 - q)


def r_pmf(q: Fraction, x: int, y: int) -> Fraction:
    """Symmetrized two-sided geometric law: the law of |x + xi - xi'|."""
    q = _check_q(q)
    if x < 0 or y < 0:
        raise ValueError("x, y must be >= 0")
    c = (1 - q) / (1 + q)
    if y >= 1:
        return c * (q ** abs(x - y) + q ** (x + y))
    return c * q**x


def blocked_left_pmf(q: Fraction, a: int, x: int, y: int) -> Fraction:
    """Law of max(a, x - xi): a single leftward geometric jump blocked at a."""
    q = _check_q(q)
    if a > x:
        raise ValueError(f"need a <= x, got a={a}, x={x}")
    if not a <= y <= x:
        return Q(0)
    if y >= a + 1:
        return (1 - q) * q ** (x - y)
    return q ** (x - a)


def blocked_right_pmf(q: Fraction, b: int, x: int, y: int) -> Fraction:
    """Law of min(b, x + xi): a rightward geometric jump blocked at b."""
    q = _check_q(q)
    if x > b:
        raise ValueError(f"need x <= b, got x={x}, b={b}")
    if not x <= y <= b:
        return Q(0)
    if y <= b - 1:
        return (1 - q) * q ** (y - x)
    return q ** (b - x)


def reflected_right_pmf(q: Fraction, b: int, x: int, y: int) -> Fraction:
    """Law of min(b, |x + xi - xi'|): two-sided jump reflected at 0,
    blocked at b."""
    q = _check_q(q)
    if b < 0 or x < 0:
        raise ValueError("b, x must be >= 0")
    if not 0 <= y <= b:
        return Q(0)
    if y <= b - 1:
        if y > 0:
            return (1 - q) / (1 + q) * (q ** abs(y - x) + q ** (x + y))
        return (1 - q) / (1 + q) * q**x
    # y == b
    if y > 0:
        return q**b * (q**-x + q**x) / (1 + q)
    return Q(1)


def free_shift_pmf(q: Fraction, x: int, y: int) -> Fraction:
    """Unblocked rightward geometric jump: P(x, y) = (1-q) q^(y-x)."""
    q = _check_q(q)
    if y < x:
        return Q(0)
    return (1 - q) * q ** (y - x)


def _blocked_or_free_right(q: Fraction, b: int | None, x: int, y: int) -> Fraction:
    """P^{->b}(x, y) with b=None meaning no upper constraint."""
    if b is None:
        return free_shift_pmf(q, x, y)
    return blocked_right_pmf(q, b, x, y)


# ---------------------------------------------------------------------------
# Pieri-type tensor decomposition and the kernels it generates
# ---------------------------------------------------------------------------

def gamma_row(d: int, m: int) -> Row:
    """Highest weight (m, 0, ..., 0) of length d//2."""
    r = d // 2
    return (m,) + (0,) * (r - 1)


def s_dim(d: int, lam: Row) -> int:
    """dim V_lam for SO(d), computed as the pattern count s_{d-1}(lam)."""
    return count_patterns(d - 1, lam)


def _weight_ok(d: int, lam: Row) -> bool:
    if len(lam) != d // 2:
        return False
    return is_nonneg_row(lam) if d % 2 == 1 else is_signed_row(lam)


def _box_ranges(boxes: list[tuple[int, int]]) -> Iterator[tuple[int, ...]]:
    yield from itertools.product(*[range(lo, hi + 1) for lo, hi in boxes])


def _interlace_boxes_equal(lam: Row) -> list[tuple[int, int]]:
    """Ranges of c (same length as lam, non-negative) with c interlacing lam."""
    r = len(lam)
    return [(lam[i + 1] if i < r - 1 else 0, lam[i]) for i in range(r)]


def nu_pmf(q: Fraction, d: int, m: int) -> Fraction:
    """Jump-size mixing law: nu(m) = (1-q)^(d-1) q^m s_{d-1}(gamma_m)/(1+q)."""
    q = _check_q(q)
    if d < 3:
        raise ValueError("d must be >= 3")
    if m < 0:
        raise ValueError("m must be >= 0")
    return (1 - q) ** (d - 1) * q**m * s_dim(d, gamma_row(d, m)) / (1 + q)


def nu_tail_bound(q: Fraction, d: int, m_max: int) -> Fraction:
    """Rigorous upper bound on sum_{m > m_max} nu(m).

    Uses s_{d-1}(gamma_m) = C(m+d-2, d-2) + C(m+d-3, d-2), whose one-step
    growth ratio is at most (m+d-1)/(m+1); the tail is dominated by a
    geometric series once q (m+d-1)/(m+1) < 1.
    """
    q = _check_q(q)
    m = m_max + 1
    rho = q * Fraction(m + d - 1, m + 1)
    while rho >= 1:
        m += 1
        rho = q * Fraction(m + d - 1, m + 1)
    head = sum((nu_pmf(q, d, j) for j in range(m_max + 1, m)), Q(0))
    return head + nu_pmf(q, d, m) / (1 - rho)


def pieri_decompose(d: int, lam: Row, m: int) -> dict[Row, int]:
    """Multiplicities M_{lam, gamma_m}(beta) in V_lam (x) V_gamma_m for SO(d).

    Returns only the beta with non-zero multiplicity.
    """
    if d < 3:
        raise ValueError("d must be >= 3")
    if not _weight_ok(d, lam):
        raise ValueError(f"lam not a valid SO({d}) weight: {lam}")
    if m < 0:
        raise ValueError("m must be >= 0")
    r = d // 2
    mult: dict[Row, int] = {}
    if d % 2 == 1:
        # count (c, s) with c interlacing both lam and beta,
        # sum(lam_i - c_i + beta_i - c_i) + s = m, s = 0 when c_r = 0
        for c in _box_ranges(_interlace_boxes_equal(lam)):
            for s in (0, 1):
                if s == 1 and c[-1] == 0:
                    continue
                target = m - s - (sum(lam) - sum(c)) + sum(c)
                # beta with beta_i in [c_i, c_{i-1}] (c_0 unbounded),
                # sum(beta) = target
                for beta in _rows_with_sum(c, target):
                    mult[beta] = mult.get(beta, 0) + 1
    else:
        lam_abs = abs_row(lam)
        boxes = [(lam_abs[i + 1], lam_abs[i]) for i in range(r - 1)]
        for c in _box_ranges(boxes):
            base = sum(lam[: r - 1]) - 2 * sum(c)
            budget = m - base  # sum of beta_1..beta_{r-1} may not exceed this
            if budget < sum(c):
                continue
            for head in _rows_with_bounded_sum(c, budget):
                resid = budget - sum(head)  # = |lam_r - beta_r|
                cap = c[-1]  # |beta_r| <= c_{r-1}
                for beta_r in {lam[-1] - resid, lam[-1] + resid}:
                    if abs(beta_r) > cap:
                        continue
                    beta = head + (beta_r,)
                    if _weight_ok(d, beta):
                        mult[beta] = mult.get(beta, 0) + 1
    return mult


def _rows_with_sum(c: Row, total: int) -> Iterator[Row]:
    """Rows beta of len(c) with c_i <= beta_i <= c_{i-1} (c_0 unbounded) and
    sum(beta) = total."""
    r = len(c)
    if total < sum(c):
        return

    def rec(i: int, prev_c: int | None, remaining: int, acc: list[int]) -> Iterator[Row]:
        if i == r:
            if remaining == 0:
                yield tuple(acc)
            return
        lo = c[i]
        min_rest = sum(c[i + 1:])
        hi = remaining - min_rest
        if prev_c is not None:
            hi = min(hi, prev_c)
        for b in range(lo, hi + 1):
            acc.append(b)
            yield from rec(i + 1, c[i], remaining - b, acc)
            acc.pop()

    yield from rec(0, None, total, [])


def _rows_with_bounded_sum(c: Row, budget: int) -> Iterator[Row]:
    """Rows beta of len(c) with c_i <= beta_i <= c_{i-1} (c_0 unbounded)
    and sum(beta) <= budget."""
    r = len(c)

    def rec(i: int, prev_c: int | None, remaining: int, acc: list[int]) -> Iterator[Row]:
        if i == r:
            yield tuple(acc)
            return
        lo = c[i]
        hi = remaining - sum(c[i + 1:])
        if prev_c is not None:
            hi = min(hi, prev_c)
        for b in range(lo, hi + 1):
            acc.append(b)
            yield from rec(i + 1, c[i], remaining - b, acc)
            acc.pop()

    if budget >= sum(c):
        yield from rec(0, None, budget, [])


def mu_pmf(d: int, lam: Row, m: int, beta: Row) -> Fraction:
    """mu_m(lam, beta) = s_{d-1}(beta) M_{lam,gamma_m}(beta)
    / (s_{d-1}(lam) s_{d-1}(gamma_m))."""
    mult = pieri_decompose(d, lam, m).get(beta, 0)
    if mult == 0:
        return Q(0)
    return Fraction(s_dim(d, beta) * mult, s_dim(d, lam) * s_dim(d, gamma_row(d, m)))


# ---------------------------------------------------------------------------
# P_d: the one-step kernel on highest weights
# ---------------------------------------------------------------------------

def p_d_closed(q: Fraction, d: int, lam: Row, beta: Row) -> Fraction:
    """Closed form of the kernel P_d(lam, beta)."""
    q = _check_q(q)
    if not (_weight_ok(d, lam) and _weight_ok(d, beta)):
        raise ValueError(f"invalid SO({d}) weights: {lam}, {beta}")
    r = d // 2
    total = Q(0)
    if d % 2 == 1:
        ratio = Fraction(s_dim(d, beta), s_dim(d, lam))
        boxes = [
            (
                max(lam[i + 1] if i < r - 1 else 0, beta[i + 1] if i < r - 1 else 0),
                min(lam[i], beta[i]),
            )
            for i in range(r)
        ]
        if any(lo > hi for lo, hi in boxes):
            return Q(0)
        for c in _box_ranges(boxes):
            term = (1 - q) ** (d - 1) * ratio * q ** (sum(lam) + sum(beta) - 2 * sum(c))
            if c[-1] == 0:
                term /= 1 + q
            total += term
    else:
        lam_abs, beta_abs = abs_row(lam), abs_row(beta)
        ratio = Fraction(s_dim(d, beta), s_dim(d, lam))
        boxes = [
            (max(lam_abs[i + 1], beta_abs[i + 1]), min(lam_abs[i], beta_abs[i]))
            for i in range(r - 1)
        ]
        if any(lo > hi for lo, hi in boxes):
            return Q(0)
        expo_base = sum(lam[: r - 1]) + sum(beta[: r - 1]) + abs(lam[-1] - beta[-1])
        for c in _box_ranges(boxes):
            total += (
                (1 - q) ** (d - 1)
                / (1 + q)
                * ratio
                * q ** (expo_base - 2 * sum(c))
            )
    return total


def p_d_series(
    q: Fraction, d: int, lam: Row, beta: Row, m_max: int
) -> tuple[Fraction, Fraction]:
    """Series form P_d = sum_m mu_m(lam, beta) nu(m), truncated at m_max,
    with a rigorous bound on the neglected tail."""
    q = _check_q(q)
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    partial = sum((mu_pmf(d, lam, m, beta) * nu_pmf(q, d, m) for m in range(m_max + 1)), Q(0))
    return partial, nu_tail_bound(q, d, m_max)


# ---------------------------------------------------------------------------
# R_k: the top-row kernel
# ---------------------------------------------------------------------------

def r_k_pmf(q: Fraction, k: int, x: Row, y: Row) -> Fraction:
    """Transition kernel of the top row of a k-row pattern."""
    q = _check_q(q)
    if k < 1:
        raise ValueError("k must be >= 1")
    if not (is_nonneg_row(x) and is_nonneg_row(y)):
        raise ValueError("states must be non-negative weakly decreasing rows")
    if len(x) != row_length(k) or len(y) != row_length(k):
        raise ValueError(f"states must have length {row_length(k)}")
    if k == 1:
        return r_pmf(q, x[0], y[0])
    if k % 2 == 0:
        return p_d_closed(q, k + 1, x, y)
    value = p_d_closed(q, k + 1, x, y)
    if y[-1] != 0:
        y_tilde = y[:-1] + (-y[-1],)
        value += p_d_closed(q, k + 1, x, y_tilde)
    return value


# ---------------------------------------------------------------------------
# pair-state kernels S_k, L_k, Q_k
# ---------------------------------------------------------------------------

PairState = tuple[Row | None, Row]  # (z, y); z is ignored by S_k


def pair_state_ok(k: int, z: Row, y: Row) -> bool:
    """(z, y) lies in the pair state space of level k: z interlaces y,
    with len(z) = k//2 and len(y) = (k+1)//2."""
    if len(z) != k // 2 or len(y) != (k + 1) // 2:
        return False
    if not (is_nonneg_row(z) and is_nonneg_row(y)):
        return False
    return interlaces(z, y)


def s_k_pmf(q: Fraction, k: int, src: PairState, dst: tuple[Row, Row]) -> Fraction:
    """Pair-state kernel S_k((z, y), (z', y')).  Reads only y from src."""
    q = _check_q(q)
    if k < 1:
        raise ValueError("k must be >= 1")
    y = src[1]
    z2, y2 = dst
    if not pair_state_ok(k, z2, y2):
        return Q(0)
    if not (interlaces(z2, y) and interlaces(z2, y2)):
        return Q(0)
    ratio = Fraction(count_patterns(k, y2), count_patterns(k, y))
    if k % 2 == 0:
        r = k // 2
        expo = sum(y[i] + y2[i] - 2 * z2[i] for i in range(r))
        value = (1 - q) ** k * ratio * q**expo
        if z2[-1] == 0:
            value /= 1 + q
        return value
    r = (k + 1) // 2
    expo = sum(y[i] + y2[i] - 2 * z2[i] for i in range(r - 1))
    return (1 - q) ** (k - 1) * ratio * r_pmf(q, y[r - 1], y2[r - 1]) * q**expo


def l_k_pmf(k: int, src: tuple[Row, Row], dst: tuple[Row, Row, Row]) -> Fraction:
    """Link kernel L_k((z, y), (x, z, y)): conditionally uniform pattern-row
    draw below y, weighted 2:1 for a signed wall coordinate when k is even."""
    if k < 2:
        raise ValueError("k must be >= 2")
    z, y = src
    x, z2, y2 = dst
    if (z2, y2) != (z, y):
        return Q(0)
    if len(x) != k // 2 or not is_nonneg_row(x):
        return Q(0)
    if not interlaces(x, y):
        return Q(0)
    weight = 1
    if k % 2 == 0:
        weight = 1 if x[-1] == 0 else 2
    return Fraction(weight * count_patterns(k - 1, x), count_patterns(k, y))


def q_k_pmf(
    q: Fraction,
    k: int,
    src: tuple[Row, Row, Row],
    dst: tuple[Row, Row, Row],
) -> Fraction:
    """Joint kernel Q_k on (previous-row, half-step, full-step) triples."""
    q = _check_q(q)
    if k < 2:
        raise ValueError("k must be >= 2")
    u, z, y = src
    x, z2, y2 = dst
    if not (pair_state_ok(k, z, y) and pair_state_ok(k, z2, y2)):
        raise ValueError("pair components must lie in the level-k state space")
    if len(u) != k // 2 or len(x) != k // 2:
        raise ValueError(f"u and x must have length {k // 2}")
    if not (interlaces(u, y) and interlaces(x, y2)):
        raise ValueError("need u interlacing y and x interlacing y2")

    odd = k % 2 == 1
    r = (k + 1) // 2 if odd else k // 2
    # v ranges: v_i in [y2_{i+1}, min(x_i, z2_i)], v_0 = +infinity
    v_boxes = [(y2[i + 1], min(x[i], z2[i])) for i in range(r - 1)]
    if any(lo > hi for lo, hi in v_boxes):
        return Q(0)
    total = Q(0)
    for v in _box_ranges(v_boxes):
        ext = (None,) + v  # ext[i] = v_i with v_0 = None (unbounded)

        def v_min(a: int, i: int) -> int:
            return a if ext[i] is None else min(a, ext[i])

        term = s_k_pmf(q, k - 1, (None, u), (v, x))
        if term == 0:
            continue
        if odd:
            b = ext[r - 1]
            wall = (
                r_pmf(q, y[r - 1], y2[r - 1])
                if b is None
                else reflected_right_pmf(q, b, min(y[r - 1], b), y2[r - 1])
            )
            term *= wall
            for i in range(r - 1):
                term *= blocked_left_pmf(q, u[i], v_min(y[i], i), z2[i])
            for i in range(r - 1):
                term *= _blocked_or_free_right(q, ext[i], max(z2[i], x[i]), y2[i])
        else:
            for i in range(r):
                term *= blocked_left_pmf(q, u[i], v_min(y[i], i), z2[i])
            for i in range(r):
                term *= _blocked_or_free_right(q, ext[i], max(z2[i], x[i]), y2[i])
        total += term
    return total


# ---------------------------------------------------------------------------
# identity checkers
# ---------------------------------------------------------------------------

@dataclass
class IdentityReport:
    checked: int = 0
    violations: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_desintegration(q: Fraction, bound: int) -> IdentityReport:
    """Exhaustively verify the four summation identities behind the
    intertwining, for all admissible tuples with entries <= bound."""
    q = _check_q(q)
    if bound < 2:
        raise ValueError("bound must be >= 2")
    report = IdentityReport()

    def record(tag: str, args: tuple, lhs: Fraction, rhs: Fraction) -> None:
        report.checked += 1
        if lhs != rhs:
            report.violations.append((tag, args, lhs, rhs))

    # (1): sum_u (1 + [u>0]) R(u, x) P^{u<-}(y, z) over u in [0, z]
    for x in range(bound + 1):
        for y in range(1, bound + 1):
            for z in range(1, y + 1):
                lhs = sum(
                    (1 if u == 0 else 2) * r_pmf(q, u, x) * blocked_left_pmf(q, u, y, z)
                    for u in range(z + 1)
                )
                rhs = (1 - q) * (1 if x == 0 else 2) * q ** (max(x, z) + y - 2 * z)
                record("desintegration-1", (x, y, z), lhs, rhs)
    # (2): sum_u q^u P^{u<-}(x, y) over u in [a, y], for a <= y <= x
    for x in range(bound + 1):
        for y in range(x + 1):
            for a in range(y + 1):
                lhs = sum(q**u * blocked_left_pmf(q, u, x, y) for u in range(a, y + 1))
                record("desintegration-2", (x, y, a), lhs, q ** (x - y) * q**a)
    # (3): sum_v q^-v P^{->v}(x, y) over v in [y, a], for x <= y <= a
    for a in range(bound + 1):
        for y in range(a + 1):
            for x in range(y + 1):
                lhs = sum(
                    q**-v * blocked_right_pmf(q, v, x, y) for v in range(y, a + 1)
                )
                record("desintegration-3", (x, y, a), lhs, q ** (y - x) * q**-a)
    # (4): sum_v q^(max(v,y) - 2v) R^{->v}(min(y,v), y') over v in [y', a]
    for y in range(bound + 1):
        for a in range(1, bound + 1):
            for y2 in range(1, a + 1):
                lhs = sum(
                    q ** (max(v, y) - 2 * v)
                    * reflected_right_pmf(q, v, min(y, v), y2)
                    for v in range(y2, a + 1)
                )
                rhs = q**-a * r_pmf(q, y, y2) / (1 - q)
                record("desintegration-4", (y, a, y2), lhs, rhs)
    return report


def enumerate_pair_states(k: int, bound: int) -> list[tuple[Row, Row]]:
    """All (z, y) in the level-k pair space with coordinates <= bound."""
    states = []
    for y in _all_rows(row_length(k), bound):
        for z in _interlacing_rows(y, k // 2, bound):
            states.append((z, y))
    return states


def _all_rows(length: int, bound: int) -> list[Row]:
    if length == 0:
        return [()]
    return [
        row
        for row in itertools.product(range(bound + 1), repeat=length)
        if is_nonneg_row(row)
    ]


def _interlacing_rows(upper: Row, length: int, bound: int) -> list[Row]:
    return [
        row
        for row in _all_rows(length, bound)
        if interlaces(row, upper)
    ]


@dataclass
class IntertwiningReport:
    checked: int = 0
    max_discrepancy: Fraction = Q(0)
    violations: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.max_discrepancy == 0


def check_intertwining(q: Fraction, k: int, bound: int) -> IntertwiningReport:
    """Verify L_k Q_k = S_k L_k exactly on all states with coords <= bound."""
    q = _check_q(q)
    if k < 2:
        raise ValueError("k must be >= 2")
    report = IntertwiningReport()
    pairs = enumerate_pair_states(k, bound)
    for z, y in pairs:
        us = _interlacing_rows(y, k // 2, max(y) if y else 0)
        for z2, y2 in pairs:
            for x in _interlacing_rows(y2, k // 2, max(y2) if y2 else 0):
                lhs = sum(
                    (
                        l_k_pmf(k, (z, y), (u, z, y))
                        * q_k_pmf(q, k, (u, z, y), (x, z2, y2))
                        for u in us
                    ),
                    Q(0),
                )
                rhs = s_k_pmf(q, k, (z, y), (z2, y2)) * l_k_pmf(
                    k, (z2, y2), (x, z2, y2)
                )
                report.checked += 1
                gap = abs(lhs - rhs)
                if gap > report.max_discrepancy:
                    report.max_discrepancy = gap
                if gap != 0:
                    report.violations.append(((z, y), (x, z2, y2), lhs, rhs))
    return report


# ---------------------------------------------------------------------------
# finite-law container and n-step laws
# ---------------------------------------------------------------------------

@dataclass
class SparseLaw:
    """Finite map state -> probability with an explicit mass deficit."""

    support: dict
    tail_deficit: Fraction

    def total_mass(self) -> Fraction:
        return sum(self.support.values(), Q(0))

    def as_floats(self) -> dict:
        return {s: float(p) for s, p in self.support.items()}


class TruncationError(RuntimeError):
    def __init__(self, deficit: Fraction, tolerance: Fraction):
        self.deficit = deficit
        super().__init__(
            f"truncation deficit {float(deficit):.3e} exceeds tolerance "
            f"{float(tolerance):.3e}; increase the radius"
        )


def states_in_box(k: int, radius: int) -> list[Row]:
    """Non-negative weakly decreasing rows of length (k+1)//2, coords <= radius."""
    return _all_rows(row_length(k), radius)


def n_step_law(
    q: Fraction,
    k: int,
    n: int,
    radius: int,
    tolerance: Fraction | None = None,
) -> SparseLaw:
    """Law of the top row after n steps from zero, truncated to the box
    [0, radius].  The deficit is exact: R_k rows sum to one, so any mass
    missing from the box is mass that escaped it.
    """
    q = _check_q(q)
    if n < 1:
        raise ValueError("n must be >= 1")
    states = states_in_box(k, radius)
    zero = (0,) * row_length(k)
    law: dict[Row, Fraction] = {zero: Q(1)}
    row_cache: dict[Row, dict[Row, Fraction]] = {}
    for _ in range(n):
        new: dict[Row, Fraction] = {}
        for x, px in law.items():
            if px == 0:
                continue
            row = row_cache.get(x)
            if row is None:
                row = {y: r_k_pmf(q, k, x, y) for y in states}
                row_cache[x] = row
            for y, pxy in row.items():
                if pxy != 0:
                    new[y] = new.get(y, Q(0)) + px * pxy
        law = new
    deficit = 1 - sum(law.values(), Q(0))
    result = SparseLaw(support=law, tail_deficit=deficit)
    if tolerance is not None and deficit > tolerance:
        raise TruncationError(deficit, Fraction(tolerance))
    return result
