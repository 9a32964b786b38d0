"""Particle dynamics on Gelfand-Tsetlin patterns.

Two models share the same blocking/pushing geometry:

* a discrete-time model where free particles make geometric jumps left at
  half-integer times and right at integer times, while wall particles move
  by a symmetrized two-sided jump at integer times only;
* a continuous-time model where every particle attempts unit jumps after
  independent rate-1 exponential clocks.

The single-step updates are pure functions of (state, noise).  The Monte
Carlo simulators are vectorized over paths; a property test pins the
vectorized step to the scalar one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from gtpatterns.patterns import Pattern, Row, count_patterns, row_length, zero_pattern

INF = math.inf


@dataclass(frozen=True)
class NoiseDraw:
    """One full step worth of geometric draws, indexed by particle (l, j)."""

    xi_half: dict[tuple[int, int], int]
    xi_full: dict[tuple[int, int], int]

    @staticmethod
    def zero(k: int) -> "NoiseDraw":
        keys = [(l, j) for l in range(1, k + 1) for j in range(1, row_length(l) + 1)]
        return NoiseDraw({key: 0 for key in keys}, {key: 0 for key in keys})


def half_step_left(x: Pattern, noise: NoiseDraw) -> Pattern:
    """Leftward half-step: rows updated downward; free particles jump left
    blocked by the old configuration; pushed particles take the min with the
    upper-left neighbour's new position; wall particles only move if pushed."""
    k = len(x)
    new: list[Row] = []
    for l in range(1, k + 1):
        m = row_length(l)
        old = x[l - 1]
        upper_new = new[l - 2] if l >= 2 else None
        tilde = [
            min(old[i], upper_new[i - 1]) if (i >= 1 and upper_new is not None) else old[i]
            for i in range(m)
        ]
        row = list(tilde)
        blockers = x[l - 2] if l >= 2 else None
        for i in range(l // 2):
            row[i] = max(blockers[i], tilde[i] - noise.xi_half[(l, i + 1)])
        # odd rows: the wall particle keeps its pushed position
        new.append(tuple(row))
    return tuple(new)


def full_step_right(x_half: Pattern, noise: NoiseDraw) -> Pattern:
    """Rightward full-step from the half-step configuration.  Wall particles
    move by |x + xi - xi'| using the pre-drawn pair, blocked above-left."""
    k = len(x_half)
    new: list[Row] = []
    for l in range(1, k + 1):
        m = row_length(l)
        half = x_half[l - 1]
        upper_new = new[l - 2] if l >= 2 else None
        tilde = []
        for i in range(m):
            pushed_from = (
                upper_new[i] if upper_new is not None and i < len(upper_new) else 0
            )
            tilde.append(max(pushed_from, half[i]))
        row = list(tilde)
        upper_half = x_half[l - 2] if l >= 2 else None
        for i in range(l // 2):
            cap = upper_half[i - 1] if i >= 1 else INF
            row[i] = int(min(cap, tilde[i] + noise.xi_full[(l, i + 1)]))
        if l % 2 == 1:
            j = m - 1
            moved = abs(half[j] + noise.xi_full[(l, m)] - noise.xi_half[(l, m)])
            cap = upper_half[m - 2] if upper_half is not None else INF
            row[j] = int(min(moved, cap))
        new.append(tuple(row))
    return tuple(new)


def discrete_step(x: Pattern, noise: NoiseDraw) -> tuple[Pattern, Pattern]:
    """One full discrete step: (state at n+1/2, state at n+1)."""
    x_half = half_step_left(x, noise)
    return x_half, full_step_right(x_half, noise)


# ---------------------------------------------------------------------------
# vectorized discrete-time Monte Carlo
# ---------------------------------------------------------------------------

def geometric_draws(rng: np.random.Generator, q: float, size) -> np.ndarray:
    """Inverse-CDF geometric draws with pmf q^x (1-q), x >= 0."""
    u = rng.random(size)
    # guard u == 0 (log(0)); probability zero but numpy can return it
    u = np.where(u == 0.0, 0.5, u)
    return np.floor(np.log(u) / np.log(q)).astype(np.int64)


class DiscreteSimulation:
    """Vectorized simulation of the discrete-time model over many paths.

    State is held as one integer array of shape (n_paths,) per particle.
    """

    def __init__(self, q: Fraction | float, k: int, n_paths: int, seed: int):
        self.q = float(q)
        if not 0 < self.q < 1:
            raise ValueError("q must be in (0,1)")
        self.k = k
        self.n_paths = n_paths
        self.rng = np.random.default_rng(seed)
        self.state = {
            (l, j): np.zeros(n_paths, dtype=np.int64)
            for l in range(1, k + 1)
            for j in range(1, row_length(l) + 1)
        }
        self.half_state: dict[tuple[int, int], np.ndarray] = {}

    def step(self, noise: tuple[dict, dict] | None = None) -> None:
        k = self.k
        if noise is None:
            q, rng, n = self.q, self.rng, self.n_paths
            xi_half = {key: geometric_draws(rng, q, n) for key in self.state}
            xi_full = {key: geometric_draws(rng, q, n) for key in self.state}
        else:
            xi_half, xi_full = noise

        # left half-step
        old = self.state
        half: dict[tuple[int, int], np.ndarray] = {}
        for l in range(1, k + 1):
            m = row_length(l)
            for j in range(1, m + 1):
                tilde = old[(l, j)]
                if j >= 2:
                    tilde = np.minimum(tilde, half[(l - 1, j - 1)])
                if j <= l // 2:
                    half[(l, j)] = np.maximum(
                        old[(l - 1, j)], tilde - xi_half[(l, j)]
                    )
                else:
                    half[(l, j)] = tilde.copy()

        # right full-step
        new: dict[tuple[int, int], np.ndarray] = {}
        for l in range(1, k + 1):
            m = row_length(l)
            for j in range(1, m + 1):
                if l % 2 == 1 and j == m:
                    moved = np.abs(half[(l, j)] + xi_full[(l, j)] - xi_half[(l, j)])
                    if l >= 2:
                        moved = np.minimum(moved, half[(l - 1, j - 1)])
                    new[(l, j)] = moved
                else:
                    tilde = half[(l, j)]
                    if j <= len_row_above(l):
                        tilde = np.maximum(new[(l - 1, j)], tilde)
                    moved = tilde + xi_full[(l, j)]
                    if j >= 2:
                        moved = np.minimum(moved, half[(l - 1, j - 1)])
                    new[(l, j)] = moved
        self.half_state = half
        self.state = new

    def run(self, horizon: int) -> None:
        for _ in range(horizon):
            self.step()

    def row(self, l: int) -> np.ndarray:
        """Row l across paths, shape (n_paths, row_length(l))."""
        return np.stack(
            [self.state[(l, j)] for j in range(1, row_length(l) + 1)], axis=1
        )

    def half_row(self, l: int) -> np.ndarray:
        return np.stack(
            [self.half_state[(l, j)] for j in range(1, row_length(l) + 1)], axis=1
        )

    def patterns(self) -> list[Pattern]:
        rows = [self.row(l) for l in range(1, self.k + 1)]
        return [
            tuple(tuple(int(v) for v in rows[l][p]) for l in range(self.k))
            for p in range(self.n_paths)
        ]


def len_row_above(l: int) -> int:
    """Number of particles in row l-1 (0 when l = 1)."""
    return row_length(l - 1) if l >= 2 else 0


def simulate_discrete(
    q: Fraction | float,
    k: int,
    horizon: int,
    n_paths: int,
    seed: int,
    record_rows: tuple[int, ...] = (),
) -> dict:
    """Run n_paths independent trajectories from the zero pattern.

    Returns the final state arrays plus, for each l in record_rows, the row-l
    marginal at every integer time.
    """
    sim = DiscreteSimulation(q, k, n_paths, seed)
    recorded = {l: [sim.row(l)] for l in record_rows}
    for _ in range(horizon):
        sim.step()
        for l in record_rows:
            recorded[l].append(sim.row(l))
    return {"sim": sim, "rows": recorded}


# ---------------------------------------------------------------------------
# continuous-time model
# ---------------------------------------------------------------------------

def _particles(k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, k + 1) for j in range(1, row_length(i) + 1)]


def _ctmc_right(y: dict, k: int, i: int, j: int) -> None:
    """Rightward attempt of particle (i, j): blocked by the upper-left
    neighbour, otherwise pushes the maximal equal stack below it."""
    if i >= 2 and j >= 2 and y[(i, j)] == y[(i - 1, j - 1)]:
        return
    value = y[(i, j)]
    l = 0
    while (
        i + l + 1 <= k
        and j <= row_length(i + l + 1)
        and y[(i + l + 1, j)] == value
    ):
        l += 1
    for step in range(l + 1):
        y[(i + step, j)] += 1


def _ctmc_left(y: dict, k: int, i: int, j: int) -> None:
    """Leftward attempt of particle (i, j): wall particles reflect at zero,
    free particles are blocked below or push the maximal equal diagonal."""
    wall = i % 2 == 1 and j == (i + 1) // 2
    if wall:
        if y[(i, j)] == 0:
            _ctmc_right(y, k, i, j)
        else:
            y[(i, j)] -= 1
        return
    if y[(i, j)] == y[(i - 1, j)]:
        return
    value = y[(i, j)]
    l = 0
    while (
        i + l + 1 <= k
        and j + l + 1 <= row_length(i + l + 1)
        and y[(i + l + 1, j + l + 1)] == value
    ):
        l += 1
    for step in range(l + 1):
        y[(i + step, j + step)] -= 1


def ctmc_apply_event(y: dict, k: int, i: int, j: int, direction: str) -> None:
    if direction == "right":
        _ctmc_right(y, k, i, j)
    elif direction == "left":
        _ctmc_left(y, k, i, j)
    else:
        raise ValueError(f"unknown direction {direction!r}")


def ctmc_state_as_pattern(y: dict, k: int) -> Pattern:
    return tuple(
        tuple(y[(i, j)] for j in range(1, row_length(i) + 1))
        for i in range(1, k + 1)
    )


@dataclass
class CtmcResult:
    patterns: list[Pattern]
    # occupation time and outgoing jump counts of the top row, for
    # empirical generator estimates
    top_row_time: dict[Row, float]
    top_row_jumps: dict[tuple[Row, Row], int]


def ctmc_simulate(k: int, t_max: float, n_paths: int, seed: int) -> CtmcResult:
    """Event-driven simulation: each particle carries two rate-1 clocks, so
    the next event is exponential with the total rate and the mover is
    uniform among (particle, direction) pairs."""
    if t_max <= 0:
        raise ValueError("t_max must be > 0")
    rng = np.random.default_rng(seed)
    particles = _particles(k)
    total_rate = 2 * len(particles)
    finals: list[Pattern] = []
    top_time: dict[Row, float] = {}
    top_jumps: dict[tuple[Row, Row], int] = {}
    top = k
    for _ in range(n_paths):
        y = {p: 0 for p in particles}
        t = 0.0
        while True:
            dt = rng.exponential(1.0 / total_rate)
            if t + dt > t_max:
                row = ctmc_state_as_pattern(y, k)[top - 1]
                top_time[row] = top_time.get(row, 0.0) + (t_max - t)
                break
            idx = rng.integers(0, total_rate)
            i, j = particles[idx // 2]
            direction = "right" if idx % 2 == 0 else "left"
            before = ctmc_state_as_pattern(y, k)[top - 1]
            ctmc_apply_event(y, k, i, j, direction)
            after = ctmc_state_as_pattern(y, k)[top - 1]
            top_time[before] = top_time.get(before, 0.0) + dt
            if after != before:
                key = (before, after)
                top_jumps[key] = top_jumps.get(key, 0) + 1
            t += dt
        finals.append(ctmc_state_as_pattern(y, k))
    return CtmcResult(finals, top_time, top_jumps)


# ---------------------------------------------------------------------------
# generator of the top-row marginal
# ---------------------------------------------------------------------------

def generator_rate(k: int, lam: Row, beta: Row) -> Fraction:
    """Jump rate of the top-row process from lam to beta = lam +- e_i.

    Wall reflection doubles the rate out of a zero wall coordinate when k
    is odd.  Rows that leave the weight cone get rate 0.
    """
    r = row_length(k)
    if len(lam) != r or len(beta) != r:
        raise ValueError(f"rows must have length {r}")
    diffs = [beta[i] - lam[i] for i in range(r)]
    nonzero = [i for i, d in enumerate(diffs) if d != 0]
    if len(nonzero) != 1 or abs(diffs[nonzero[0]]) != 1:
        raise ValueError("beta must be a unit-step neighbour of lam")
    if not all(beta[i] >= beta[i + 1] for i in range(r - 1)) or beta[-1] < 0:
        return Fraction(0)
    rate = Fraction(count_patterns(k, beta), count_patterns(k, lam))
    if k % 2 == 1 and lam[-1] == 0 and beta[-1] == 1:
        rate *= 2
    return rate


def generator_matrix(k: int, radius: int) -> tuple[list[Row], np.ndarray]:
    """Substochastic generator of the top-row process restricted to the box
    of rows with coordinates <= radius.  The diagonal accounts for all
    outgoing rates, including jumps leaving the box, so the restricted
    semigroup underestimates probabilities and 1 - sum is a certified
    escape bound."""
    from gtpatterns.kernels import states_in_box

    states = states_in_box(k, radius)
    index = {s: n for n, s in enumerate(states)}
    a = np.zeros((len(states), len(states)))
    r = row_length(k)
    for s, lam in enumerate(states):
        out = 0.0
        for i in range(r):
            for sign in (1, -1):
                beta = tuple(
                    lam[j] + (sign if j == i else 0) for j in range(r)
                )
                if beta[i] < 0:
                    continue
                rate = float(generator_rate(k, lam, beta))
                if rate == 0.0:
                    continue
                out += rate
                if beta in index:
                    a[s, index[beta]] += rate
        a[s, s] -= out
    return states, a


def semigroup_law(k: int, radius: int, t: float) -> dict[Row, float]:
    """Law of the top-row process at time t from zero, via the truncated
    matrix exponential.  Substochastic: missing mass escaped the box."""
    from scipy.linalg import expm

    states, a = generator_matrix(k, radius)
    p = expm(t * a)
    zero = (0,) * row_length(k)
    row = p[states.index(zero)]
    return {s: float(row[n]) for n, s in enumerate(states) if row[n] > 0}
