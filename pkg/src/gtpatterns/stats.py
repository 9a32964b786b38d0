"""Distance statistics and empirical-law helpers for the experiment harness."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def empirical_law(samples) -> dict:
    """Relative frequencies of hashable states."""
    counts: dict = {}
    for s in samples:
        counts[s] = counts.get(s, 0) + 1
    n = len(samples)
    if n == 0:
        raise ValueError("empty sample")
    return {s: c / n for s, c in counts.items()}


def rows_to_tuples(rows: np.ndarray) -> list[tuple]:
    return [tuple(int(v) for v in row) for row in rows]


def tv_distance(a: dict, b: dict) -> float:
    """Total variation distance (1/2) sum |a - b| over the union support.

    Truncation deficits of the inputs are not folded in; report them
    separately."""
    states = set(a) | set(b)
    return 0.5 * sum(abs(float(a.get(s, 0)) - float(b.get(s, 0))) for s in states)


def ks_two_sample(xs, ys) -> float:
    """Two-sample Kolmogorov-Smirnov statistic: sup |F_x - F_y|."""
    xs = np.sort(np.asarray(xs, dtype=float))
    ys = np.sort(np.asarray(ys, dtype=float))
    if xs.size == 0 or ys.size == 0:
        raise ValueError("empty sample")
    grid = np.concatenate([xs, ys])
    fx = np.searchsorted(xs, grid, side="right") / xs.size
    fy = np.searchsorted(ys, grid, side="right") / ys.size
    return float(np.max(np.abs(fx - fy)))


def law_support_as_scalars(law: dict) -> dict:
    """Collapse 1-tuple keys to plain ints, for 1-d state spaces."""
    out = {}
    for s, p in law.items():
        if isinstance(s, tuple) and len(s) == 1:
            s = s[0]
        out[s] = p
    return out


def exact_law_to_floats(law: dict) -> dict:
    return {s: float(p) for s, p in law.items()}


def fraction_or_float(text: str) -> Fraction | float:
    """Parse q from the CLI: 'num/den' is exact, a decimal is floating."""
    if "/" in text:
        return Fraction(text)
    return float(text)
