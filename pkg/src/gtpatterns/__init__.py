"""Interacting particle dynamics on orthogonal Gelfand-Tsetlin patterns."""

from gtpatterns.patterns import (
    count_patterns,
    enumerate_lower_rows,
    enumerate_patterns,
    interlaces,
    pattern_is_valid,
    weyl_dimension,
)

__all__ = [
    "count_patterns",
    "enumerate_lower_rows",
    "enumerate_patterns",
    "interlaces",
    "pattern_is_valid",
    "weyl_dimension",
]
