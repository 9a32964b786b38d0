"""Discrete-time and continuous-time particle dynamics: single-step rules,
validity preservation, vectorized/scalar agreement, and the top-row generator."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gtpatterns.dynamics import (
    DiscreteSimulation,
    NoiseDraw,
    ctmc_apply_event,
    ctmc_simulate,
    ctmc_state_as_pattern,
    discrete_step,
    generator_matrix,
    generator_rate,
    geometric_draws,
    half_step_left,
    semigroup_law,
    zero_pattern,
)
from gtpatterns.patterns import pattern_is_valid, row_length

Q = Fraction


def noise_from_dicts(k, half, full):
    keys = [(l, j) for l in range(1, k + 1) for j in range(1, row_length(l) + 1)]
    return NoiseDraw(
        {key: half.get(key, 0) for key in keys},
        {key: full.get(key, 0) for key in keys},
    )


def abs_pattern_valid(pat):
    return pattern_is_valid(pat)


class TestDiscreteStep:
    def test_zero_noise_is_identity(self):
        for k in (1, 2, 3, 4, 5):
            x = zero_pattern(k)
            half, new = discrete_step(x, NoiseDraw.zero(k))
            assert half == x
            assert new == x

    def test_single_free_jump(self):
        # k = 2: the free particle jumps right by its draw
        x = ((0,), (0,))
        noise = noise_from_dicts(2, {}, {(2, 1): 3})
        _, new = discrete_step(x, noise)
        assert new == ((0,), (3,))

    def test_wall_two_sided_move(self):
        # the single wall particle moves by |x + xi - xi'|
        x = ((2,),)
        noise = noise_from_dicts(1, {(1, 1): 5}, {(1, 1): 1})
        half, new = discrete_step(x, noise)
        assert half == ((2,),)  # wall holds at half-time unless pushed
        assert new == ((2,),)  # |2 + 1 - 5| = 2

    def test_push_left_on_half_step(self):
        # row-2 particle jumping left drags the row-3 wall particle along
        # the diagonal below it
        x = ((0,), (2,), (2, 1))
        noise = noise_from_dicts(3, {(2, 1): 2}, {})
        half = half_step_left(x, noise)
        assert half == ((0,), (0,), (2, 0))

    def test_block_left_on_half_step(self):
        # row-2 particle blocked by the old row-1 position
        x = ((1,), (3,), (3, 1))
        noise = noise_from_dicts(3, {(2, 1): 5}, {})
        half = half_step_left(x, noise)
        assert half[1] == (1,)

    def test_push_right_on_full_step(self):
        # row-2 moving right pushes the row-3 particle sitting at its level
        x = ((0,), (1,), (1, 0))
        noise = noise_from_dicts(3, {}, {(2, 1): 2})
        _, new = discrete_step(x, noise)
        assert new[1] == (3,)
        assert new[2][0] == 3

    def test_block_right_on_full_step(self):
        # second row-4 particle capped by the half-time position of its
        # upper-left neighbour (3, 1)
        x = ((0,), (1,), (1, 0), (3, 1))
        noise = noise_from_dicts(4, {}, {(4, 2): 7})
        _, new = discrete_step(x, noise)
        assert new[3][1] == 1

    def test_leading_coordinate_unblocked(self):
        # the first top-row particle has no upper-left neighbour
        x = ((0,), (2,), (4, 0))
        noise = noise_from_dicts(3, {}, {(3, 1): 7})
        _, new = discrete_step(x, noise)
        assert new[2][0] == 11

    @given(
        k=st.integers(1, 5),
        seed=st.integers(0, 10**6),
        horizon=st.integers(1, 12),
    )
    @settings(max_examples=40, deadline=None)
    def test_preserves_validity(self, k, seed, horizon):
        rng = np.random.default_rng(seed)
        x = zero_pattern(k)
        keys = [
            (l, j) for l in range(1, k + 1) for j in range(1, row_length(l) + 1)
        ]
        for _ in range(horizon):
            noise = NoiseDraw(
                {key: int(geometric_draws(rng, 0.6, ())) for key in keys},
                {key: int(geometric_draws(rng, 0.6, ())) for key in keys},
            )
            half, x = discrete_step(x, noise)
            assert pattern_is_valid(x), x


class TestVectorizedSimulation:
    @given(k=st.integers(1, 5), seed=st.integers(0, 10**6))
    @settings(max_examples=20, deadline=None)
    def test_matches_scalar_step(self, k, seed):
        n_paths = 16
        rng = np.random.default_rng(seed)
        sim = DiscreteSimulation(0.5, k, n_paths, seed=seed + 1)
        keys = list(sim.state)
        scalars = [zero_pattern(k)] * n_paths
        for _ in range(3):
            xi_half = {key: geometric_draws(rng, 0.5, n_paths) for key in keys}
            xi_full = {key: geometric_draws(rng, 0.5, n_paths) for key in keys}
            sim.step((xi_half, xi_full))
            for p in range(n_paths):
                noise = NoiseDraw(
                    {key: int(xi_half[key][p]) for key in keys},
                    {key: int(xi_full[key][p]) for key in keys},
                )
                _, scalars[p] = discrete_step(scalars[p], noise)
            assert sim.patterns() == scalars

    def test_geometric_draws_distribution(self):
        rng = np.random.default_rng(7)
        draws = geometric_draws(rng, 0.5, 200_000)
        assert draws.min() == 0
        # P(xi = 0) = 1 - q = 0.5
        assert abs(np.mean(draws == 0) - 0.5) < 0.01
        assert abs(np.mean(draws) - 1.0) < 0.02  # mean q/(1-q) = 1


class TestCtmc:
    def test_right_pushes_stack(self):
        # rows 1..3 all at 0; the row-1 particle jumping right pushes the
        # whole equal column below it
        k = 3
        y = {(1, 1): 0, (2, 1): 0, (3, 1): 0, (3, 2): 0}
        ctmc_apply_event(y, k, 1, 1, "right")
        assert ctmc_state_as_pattern(y, k) == ((1,), (1,), (1, 0))

    def test_right_blocked_by_upper_left(self):
        k = 3
        y = {(1, 1): 0, (2, 1): 0, (3, 1): 0, (3, 2): 0}
        # (3, 2) sits level with its upper-left neighbour (2, 1): blocked
        ctmc_apply_event(y, k, 3, 2, "right")
        assert y[(3, 2)] == 0
        # (3, 1) has no upper-left neighbour and moves freely
        ctmc_apply_event(y, k, 3, 1, "right")
        assert y[(3, 1)] == 1

    def test_wall_reflection(self):
        y = {(1, 1): 0}
        ctmc_apply_event(y, 1, 1, 1, "left")
        assert y[(1, 1)] == 1  # reflected into a right attempt
        ctmc_apply_event(y, 1, 1, 1, "left")
        assert y[(1, 1)] == 0  # ordinary left move

    def test_left_blocked_by_row_above(self):
        k = 2
        y = {(1, 1): 1, (2, 1): 1}
        ctmc_apply_event(y, k, 2, 1, "left")
        assert y[(2, 1)] == 1  # blocked: equal to the particle above

    def test_final_patterns_valid(self):
        res = ctmc_simulate(4, 1.5, 200, seed=3)
        for pat in res.patterns:
            assert pattern_is_valid(pat)

    def test_interlacing_preserved_under_all_events(self):
        rng = np.random.default_rng(11)
        k = 5
        particles = [
            (i, j) for i in range(1, k + 1) for j in range(1, row_length(i) + 1)
        ]
        y = {p: 0 for p in particles}
        for _ in range(3000):
            i, j = particles[rng.integers(len(particles))]
            direction = "right" if rng.integers(2) == 0 else "left"
            ctmc_apply_event(y, k, i, j, direction)
            assert pattern_is_valid(ctmc_state_as_pattern(y, k))


class TestGenerator:
    def test_unit_rates_for_k1(self):
        # s_1 = 1 everywhere: rate 1, except doubled out of the wall at 0
        assert generator_rate(1, (0,), (1,)) == 2
        assert generator_rate(1, (2,), (3,)) == 1
        assert generator_rate(1, (2,), (1,)) == 1

    def test_rate_ratios(self):
        # k = 2: s_2(x) = 2x + 1
        assert generator_rate(2, (1,), (2,)) == Q(5, 3)
        assert generator_rate(2, (1,), (0,)) == Q(1, 3)

    def test_invalid_target_rejected(self):
        with pytest.raises(ValueError):
            generator_rate(2, (1,), (3,))

    def test_boundary_rate_zero(self):
        assert generator_rate(2, (0,), (-1,)) == 0

    def test_matrix_rows_nonpositive_sums(self):
        states, a = generator_matrix(2, 6)
        sums = a.sum(axis=1)
        assert np.all(sums <= 1e-12)
        # interior rows are conservative
        idx = states.index((3,))
        assert abs(sums[idx]) < 1e-12

    def test_semigroup_is_substochastic_law(self):
        law = semigroup_law(2, 15, 0.7)
        total = sum(law.values())
        assert 0.999 < total <= 1 + 1e-9
        assert all(v >= 0 for v in law.values())

    def test_empirical_generator_agrees(self):
        """The CTMC's empirical top-row jump rates match the ratio-of-dimensions
        generator."""
        res = ctmc_simulate(2, 2.0, 4000, seed=21)
        for lam, beta in [((0,), (1,)), ((1,), (2,)), ((1,), (0,))]:
            t = res.top_row_time.get(lam, 0.0)
            n = res.top_row_jumps.get((lam, beta), 0)
            assert t > 1.0
            assert abs(n / t - float(generator_rate(2, lam, beta))) < 0.15
