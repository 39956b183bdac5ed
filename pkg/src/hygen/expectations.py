"""Closed-form expected statistics of the model, evaluated in O(N K^2) time.

Every expectation here is a sum over the full space of possible hyperedges,
collapsed size by size into binomial coefficients times a single pair
interaction sum. Restricting the statistic to a band of hyperedge sizes only
changes the multiplicative constants, so the size range is a first-class
argument everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .model import ModelParams, log_binomial

__all__ = [
    "SizeRange",
    "expected_degrees",
    "expected_mean_degree",
    "expected_node_degree",
    "expected_size_counts",
    "pair_interaction_sum",
    "rescale_affinity",
]


@dataclass(frozen=True)
class SizeRange:
    """Inclusive band of hyperedge sizes entering a statistic."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 2:
            raise ValueError("size range must start at 2 or above")
        if self.hi < self.lo:
            raise ValueError(f"empty size range [{self.lo}, {self.hi}]")


def _resolve_range(params: ModelParams, size_range: SizeRange | None) -> tuple[int, int]:
    if size_range is None:
        return 2, params.max_size
    if size_range.hi > params.max_size:
        raise ValueError(
            f"size range up to {size_range.hi} exceeds max size {params.max_size}"
        )
    return size_range.lo, size_range.hi


def pair_interaction_sum(nodes, u, w) -> float:
    """Sum of u_i^T w u_j over unordered node pairs of a set, in O(|S|).

    Uses the identity sum_{i<j} u_i^T w u_j = (s^T w s - sum_i u_i^T w u_i)/2
    with s the membership total of the set, avoiding the quadratic double
    loop over pairs.
    """
    idx = np.asarray(list(nodes), dtype=np.intp)
    if idx.size < 2:
        return 0.0
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    sub = u[idx]
    total = sub.sum(axis=0)
    self_terms = float(np.einsum("ik,kq,iq->", sub, w, sub))
    return 0.5 * (float(total @ w @ total) - self_terms)


def _exp_sum(log_terms: list[float]) -> float:
    # Binomial sums combined in log space; they overflow 64-bit integers at
    # realistic N and D long before the float result does.
    if not log_terms:
        return 0.0
    return float(np.exp(logsumexp(log_terms)))


def _coef_pair_containing(params: ModelParams, lo: int, hi: int) -> float:
    """sum over sizes of C(N-2, n-2) / kappa_n."""
    n_nodes = params.n_nodes
    return _exp_sum(
        [log_binomial(n_nodes - 2, n - 2) - params.log_kappa(n) for n in range(lo, hi + 1)]
    )


def _coef_pair_bystander(params: ModelParams, lo: int, hi: int) -> float:
    """sum over sizes of C(N-3, n-3) / kappa_n (sizes below 3 drop out)."""
    n_nodes = params.n_nodes
    return _exp_sum(
        [
            log_binomial(n_nodes - 3, n - 3) - params.log_kappa(n)
            for n in range(max(lo, 3), hi + 1)
        ]
    )


def _coef_mean_degree(params: ModelParams, lo: int, hi: int) -> float:
    """sum over sizes of C(N-2, n-2) * n / kappa_n."""
    n_nodes = params.n_nodes
    return _exp_sum(
        [
            log_binomial(n_nodes - 2, n - 2) + np.log(n) - params.log_kappa(n)
            for n in range(lo, hi + 1)
        ]
    )


def expected_node_degree(
    node: int, params: ModelParams, size_range: SizeRange | None = None
) -> float:
    """Expected weighted degree of one node, without enumerating hyperedges.

    The first term covers pairs the node belongs to, the second the pairs of
    other nodes sharing a hyperedge with it as bystanders.
    """
    if not 0 <= node < params.n_nodes:
        raise ValueError(f"node {node} out of range")
    lo, hi = _resolve_range(params, size_range)
    containing = _coef_pair_containing(params, lo, hi)
    bystander = _coef_pair_bystander(params, lo, hi)
    own_pairs = float(params._uw[node] @ (params.membership_total - params.u[node]))
    others = np.concatenate([np.arange(node), np.arange(node + 1, params.n_nodes)])
    rest_pairs = pair_interaction_sum(others, params.u, params.w)
    return containing * own_pairs + bystander * rest_pairs


def expected_degrees(params: ModelParams, size_range: SizeRange | None = None) -> np.ndarray:
    """Expected weighted degree of every node at once.

    Same closed form as :func:`expected_node_degree`; the pair sum over the
    other nodes is obtained by subtracting each node's own pairs from the
    global pair interaction total.
    """
    lo, hi = _resolve_range(params, size_range)
    containing = _coef_pair_containing(params, lo, hi)
    bystander = _coef_pair_bystander(params, lo, hi)
    own_pairs = params._uw @ params.membership_total - params._self_affinity
    rest_pairs = params.total_pair_interaction - own_pairs
    return containing * own_pairs + bystander * rest_pairs


def expected_mean_degree(params: ModelParams, size_range: SizeRange | None = None) -> float:
    """Expected weighted degree averaged over all nodes."""
    lo, hi = _resolve_range(params, size_range)
    coef = _coef_mean_degree(params, lo, hi)
    return coef / params.n_nodes * params.total_pair_interaction


def expected_size_counts(
    params: ModelParams, size_range: SizeRange | None = None
) -> dict[int, float]:
    """Expected weighted number of hyperedges per size.

    Every node pair belongs to C(N-2, n-2) hyperedges of size n, so each
    per-size count is that coefficient over kappa_n times the global pair
    interaction sum.
    """
    lo, hi = _resolve_range(params, size_range)
    n_nodes = params.n_nodes
    total = params.total_pair_interaction
    out: dict[int, float] = {}
    for n in range(lo, hi + 1):
        log_coef = log_binomial(n_nodes - 2, n - 2) - params.log_kappa(n)
        out[n] = float(np.exp(log_coef)) * total
    return out


def rescale_affinity(
    params: ModelParams,
    target_mean_degree: float,
    size_range: SizeRange | None = None,
) -> ModelParams:
    """Scale the affinity so the expected mean degree hits a target exactly.

    The expected mean degree is linear in the affinity matrix, so a single
    multiplicative factor suffices.
    """
    current = expected_mean_degree(params, size_range)
    if current <= 0.0:
        raise ValueError("expected mean degree is zero; nothing to rescale")
    return params.with_affinity(params.w * (target_mean_degree / current))
