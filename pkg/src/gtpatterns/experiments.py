"""Theorem-level experiments: Monte Carlo marginals against exact kernels,
and the two parameter limits of the discrete model."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from gtpatterns.dynamics import DiscreteSimulation, ctmc_simulate, semigroup_law
from gtpatterns.kernels import SparseLaw, n_step_law, r_k_pmf, s_k_pmf, states_in_box
from gtpatterns.patterns import Row, row_length
from gtpatterns.spectra import simulate_eigen_chain
from gtpatterns.stats import (
    empirical_law,
    exact_law_to_floats,
    ks_two_sample,
    rows_to_tuples,
    tv_distance,
)


@dataclass
class ComparisonReport:
    name: str
    statistic: str  # "tv" | "ks" | "max-abs"
    value: float
    threshold: float
    sample_sizes: tuple[int, ...]
    truncation_deficit: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.value <= self.threshold and self.truncation_deficit <= self.threshold

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.name}: {self.statistic}={self.value:.5f} "
            f"(threshold {self.threshold}, deficit {self.truncation_deficit:.2e}, "
            f"samples {self.sample_sizes})"
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "statistic": self.statistic,
            "value": self.value,
            "threshold": self.threshold,
            "passed": self.passed,
            "sample_sizes": list(self.sample_sizes),
            "truncation_deficit": self.truncation_deficit,
            "details": self.details,
        }


# ---------------------------------------------------------------------------
# exact pair-state iteration (the pair kernel reads only y from the source)
# ---------------------------------------------------------------------------

def pair_states_in_box(k: int, radius: int) -> list[tuple[Row, Row]]:
    from gtpatterns.kernels import enumerate_pair_states

    return enumerate_pair_states(k, radius)


def pair_n_step_law(q: Fraction, k: int, n: int, radius: int) -> SparseLaw:
    """Law of the (half-step, full-step) top-row pair after n steps from
    zero, truncated to the box.  Rows are cached per source y since the
    kernel does not read the source z."""
    q = Fraction(q)
    states = pair_states_in_box(k, radius)
    zero = ((0,) * (k // 2), (0,) * row_length(k))
    law: dict = {zero: Fraction(1)}
    rows_by_y: dict = {}
    for _ in range(n):
        new: dict = {}
        for (z, y), p in law.items():
            row = rows_by_y.get(y)
            if row is None:
                row = {
                    dst: s_k_pmf(q, k, (None, y), dst)
                    for dst in states
                }
                row = {dst: v for dst, v in row.items() if v != 0}
                rows_by_y[y] = row
            for dst, v in row.items():
                new[dst] = new.get(dst, Fraction(0)) + p * v
        law = new
    deficit = 1 - sum(law.values(), Fraction(0))
    return SparseLaw(support=law, tail_deficit=deficit)


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------

def experiment_markov_marginal(
    k: int,
    horizon: int,
    q: Fraction,
    n_paths: int,
    seed: int,
    radius: int,
    threshold: float,
    pair_check: bool = False,
    pair_radius: int | None = None,
) -> ComparisonReport:
    """Empirical law of the top row after `horizon` steps against the exact
    n-step law of the top-row kernel."""
    sim = DiscreteSimulation(q, k, n_paths, seed)
    sim.run(horizon)
    emp = empirical_law(rows_to_tuples(sim.row(k)))
    exact = n_step_law(Fraction(q), k, horizon, radius)
    tv = tv_distance(emp, exact_law_to_floats(exact.support))
    details = {}
    if pair_check:
        pr = pair_radius if pair_radius is not None else radius
        z_cols = k // 2
        half = sim.half_row(k)[:, :z_cols]
        pairs = [
            (tuple(int(v) for v in half[p]), tuple(int(v) for v in sim.row(k)[p]))
            for p in range(n_paths)
        ]
        pair_emp = empirical_law(pairs)
        pair_exact = pair_n_step_law(Fraction(q), k, horizon, pr)
        details["pair_tv"] = tv_distance(
            pair_emp, exact_law_to_floats(pair_exact.support)
        )
        details["pair_deficit"] = float(pair_exact.tail_deficit)
    return ComparisonReport(
        name=f"markov-marginal k={k} n={horizon} q={q}",
        statistic="tv",
        value=tv,
        threshold=threshold,
        sample_sizes=(n_paths,),
        truncation_deficit=float(exact.tail_deficit),
        details=details,
    )


def experiment_ctmc_marginal(
    k: int,
    t_max: float,
    n_paths: int,
    seed: int,
    radius: int,
    threshold: float,
) -> ComparisonReport:
    """Empirical top-row law of the exponential-clock model against the
    truncated matrix exponential of its generator."""
    res = ctmc_simulate(k, t_max, n_paths, seed)
    emp = empirical_law([p[k - 1] for p in res.patterns])
    ref = semigroup_law(k, radius, t_max)
    tv = tv_distance(emp, ref)
    return ComparisonReport(
        name=f"ctmc-marginal k={k} t={t_max}",
        statistic="tv",
        value=tv,
        threshold=threshold,
        sample_sizes=(n_paths,),
        truncation_deficit=float(1.0 - sum(ref.values())),
    )


def estimate_wall_rate(t_max: float, n_paths: int, seed: int) -> float:
    """Empirical jump rate 0 -> 1 of the single-particle model, which the
    wall reflection doubles to 2."""
    res = ctmc_simulate(1, t_max, n_paths, seed)
    time_at_zero = res.top_row_time.get((0,), 0.0)
    jumps = res.top_row_jumps.get(((0,), (1,)), 0)
    if time_at_zero == 0.0:
        raise RuntimeError("no occupation time at zero; increase n_paths")
    return jumps / time_at_zero


def experiment_small_q(
    k: int,
    big_n: int,
    t_max: float,
    n_paths_discrete: int,
    n_paths_ctmc: int,
    seed: int,
    threshold: float,
) -> ComparisonReport:
    """With q = 1/N the discrete model run for [N t] steps approaches the
    exponential-clock model at time t; compare full-pattern laws by TV."""
    sim = DiscreteSimulation(1.0 / big_n, k, n_paths_discrete, seed)
    sim.run(int(big_n * t_max))
    x_law = empirical_law(sim.patterns())
    res = ctmc_simulate(k, t_max, n_paths_ctmc, seed + 1)
    y_law = empirical_law(res.patterns)
    tv = tv_distance(x_law, y_law)
    return ComparisonReport(
        name=f"small-q k={k} N={big_n} t={t_max}",
        statistic="tv",
        value=tv,
        threshold=threshold,
        sample_sizes=(n_paths_discrete, n_paths_ctmc),
    )


def experiment_large_q(
    k: int,
    big_n: int,
    n_steps: int,
    n_samples: int,
    seed: int,
    threshold: float,
) -> ComparisonReport:
    """With q = 1 - 1/N the rescaled top row X^k(n)/N approaches the
    eigenvalue chain with d = k + 1; per-coordinate two-sample KS."""
    d = k + 1
    sim = DiscreteSimulation(1.0 - 1.0 / big_n, k, n_samples, seed)
    sim.run(n_steps)
    xs = sim.row(k) / big_n
    if k % 2 == 1:
        # the last top-row coordinate is signed; the eigenvalues are not
        xs = np.abs(xs)
    lam = simulate_eigen_chain(d, n_steps, n_samples, seed + 1)[n_steps - 1]
    per_coord = [
        ks_two_sample(xs[:, c], lam[:, c]) for c in range(row_length(k))
    ]
    return ComparisonReport(
        name=f"large-q k={k} N={big_n} n={n_steps}",
        statistic="ks",
        value=max(per_coord),
        threshold=threshold,
        sample_sizes=(n_samples, n_samples),
        details={"per_coordinate": per_coord},
    )
