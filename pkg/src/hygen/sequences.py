"""Approximate sampling of the binary degree and size sequences.

In sparse regimes both sequences are sums of many nearly independent
Bernoulli indicators, so each entry is approximately Gaussian with mean and
variance equal to the corresponding expected weighted count. Degrees and
size counts are drawn independently of each other; any resulting
incompatibility is repaired downstream by the sequence matcher.
"""

from __future__ import annotations

import numpy as np

from .expectations import SizeRange, expected_degrees, expected_size_counts
from .model import ModelParams

__all__ = [
    "clt_degree_moments",
    "clt_size_moments",
    "sample_degree_sequence",
    "sample_size_sequence",
]


def clt_degree_moments(
    params: ModelParams, size_range: SizeRange | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Per-node (mean, variance) of the binary degree.

    To first order in the sparse regime both moments coincide with the
    expected weighted degree.
    """
    mean = expected_degrees(params, size_range)
    return mean, mean.copy()


def clt_size_moments(
    params: ModelParams, size_range: SizeRange | None = None
) -> dict[int, tuple[float, float]]:
    """Per-size (mean, variance) of the hyperedge counts."""
    return {n: (m, m) for n, m in expected_size_counts(params, size_range).items()}


def _round_counts(draws: np.ndarray) -> np.ndarray:
    # Rounded to the closest integer; negative draws clamp to zero because
    # the sequences are counts.
    return np.maximum(np.rint(draws), 0.0).astype(np.int64)


def sample_degree_sequence(
    params: ModelParams,
    rng: np.random.Generator,
    size_range: SizeRange | None = None,
) -> np.ndarray:
    """Independent Gaussian draw per node, rounded and clamped at zero."""
    mean, var = clt_degree_moments(params, size_range)
    return _round_counts(rng.normal(mean, np.sqrt(var)))


def sample_size_sequence(
    params: ModelParams,
    rng: np.random.Generator,
    size_range: SizeRange | None = None,
) -> dict[int, int]:
    """Independent Gaussian draw per hyperedge size, rounded and clamped."""
    moments = clt_size_moments(params, size_range)
    sizes = sorted(moments)
    means = np.array([moments[n][0] for n in sizes])
    counts = _round_counts(rng.normal(means, np.sqrt(means)))
    return {n: int(c) for n, c in zip(sizes, counts)}
