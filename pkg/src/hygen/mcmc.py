"""Degree- and size-preserving hyperedge reshuffling with MH acceptance.

Every step swaps the non-shared nodes of two hyperedges, which leaves all
hyperedge sizes and all node memberships unchanged, and accepts or rejects
the swap so the chain targets the conditional law of the binary
configuration given the two sequences. A binary configuration cannot
contain the same hyperedge twice, so proposals that would repeat an
existing hyperedge are rejected outright; repeats already present in the
start list can only separate, never multiply. Acceptance ratios are
evaluated in log space, falling back to a linearization of expm1 deep in
the sparse regime where forming the exponentials would lose all precision.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .matching import sequences_of
from .model import NEG_INF, ModelParams

__all__ = [
    "ChainState",
    "DEFAULT_TAU",
    "MCMCConfig",
    "acceptance_log_ratio",
    "mcmc_step",
    "run_chain",
    "shuffle_pair",
]

logger = logging.getLogger(__name__)

POS_INF = float("inf")

# Linearize expm1(x) ~ x once kappa/intensity exceeds 100; the relative error
# of the linearization is then below 0.5%.
DEFAULT_TAU = math.log(100.0)

_CHECK_EVERY = 10_000


@dataclass
class MCMCConfig:
    """Burn-in and intermediate step counts plus the linearization threshold."""

    n_burn_in: int = 100_000
    n_intermediate: int = 20_000
    tau: float = DEFAULT_TAU

    def __post_init__(self) -> None:
        if self.n_burn_in < 0:
            raise ValueError("burn-in steps must be nonnegative")
        if self.n_intermediate < 0:
            raise ValueError("intermediate steps must be nonnegative")
        if not self.tau > 0:
            raise ValueError("tau must be positive")


@dataclass
class ChainState:
    """Current binary configuration plus cumulative step counters.

    The edge list belongs to the chain; mutate it only through
    :func:`mcmc_step` so the internal multiplicity index stays in sync.
    """

    edges: list
    steps_taken: int = 0
    steps_accepted: int = 0
    _counts: Counter | None = field(default=None, repr=False, compare=False)

    def counts(self) -> Counter:
        if self._counts is None:
            self._counts = Counter(self.edges)
        return self._counts

    def acceptance_rate(self) -> float:
        return self.steps_accepted / self.steps_taken if self.steps_taken else 0.0


def shuffle_pair(e1, e2, rng: np.random.Generator):
    """Re-partition the non-shared nodes of two hyperedges.

    The partition is uniform over all ways of splitting the symmetric
    difference into groups of the original sizes, so both new hyperedges
    keep their sizes and every node keeps its total membership across the
    pair. A fully overlapping pair comes back unchanged.
    """
    shared = set(e1) & set(e2)
    pool = [v for v in e1 if v not in shared]
    n_first = len(pool)
    pool += [v for v in e2 if v not in shared]
    if not pool:
        return tuple(e1), tuple(e2)
    order = rng.permutation(len(pool))
    base = sorted(shared)
    new1 = tuple(sorted(base + [pool[t] for t in order[:n_first]]))
    new2 = tuple(sorted(base + [pool[t] for t in order[n_first:]]))
    return new1, new2


def _log_expm1(x: float) -> float:
    # log(e^x - 1); the direct expm1 overflows past ~709
    if x <= 0.0:
        return NEG_INF
    if x > 33.0:
        return x + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x))


def _factor_log_ratio(e_old, e_new, params: ModelParams, tau: float) -> float:
    """Log ratio of the existence factors expm1(intensity/kappa) of one swap.

    A proposal with zero intensity returns -inf (certain rejection). A
    current hyperedge with zero intensity makes the configuration itself
    carry zero density, which regular chains never reach; greedy initial
    configurations can contain such hyperedges, and the chain escapes them
    by accepting any positive-intensity replacement outright.
    """
    log_new = params.log_intensity(e_new)
    log_old = params.log_intensity(e_old)
    if log_old == NEG_INF:
        return 0.0 if log_new == NEG_INF else POS_INF
    if log_new == NEG_INF:
        return NEG_INF
    log_k = params.log_kappa(len(e_old))
    if log_k - log_old > tau or log_k - log_new > tau:
        # expm1(x) ~ x for x << 1; the normalization cancels at equal sizes
        return log_new - log_old
    return _log_expm1(math.exp(log_new - log_k)) - _log_expm1(math.exp(log_old - log_k))


def acceptance_log_ratio(e1, e2, new1, new2, params: ModelParams,
                         tau: float = DEFAULT_TAU) -> float:
    """Log MH acceptance ratio for replacing ``(e1, e2)`` with ``(new1, new2)``."""
    if len(e1) != len(new1) or len(e2) != len(new2):
        raise ValueError("a swap must preserve both hyperedge sizes")
    r1 = _factor_log_ratio(e1, new1, params, tau)
    r2 = _factor_log_ratio(e2, new2, params, tau)
    if r1 == NEG_INF or r2 == NEG_INF:
        return NEG_INF
    if r1 == POS_INF or r2 == POS_INF:
        return POS_INF
    return r1 + r2


def mcmc_step(state: ChainState, params: ModelParams, config: MCMCConfig,
              rng: np.random.Generator) -> ChainState:
    """One proposal: pick a uniform hyperedge pair, reshuffle, accept/reject.

    Proposals whose new hyperedges would repeat one already in the
    configuration are rejected; with fewer than two hyperedges the step is
    a no-op beyond the counter.
    """
    edges = state.edges
    m = len(edges)
    state.steps_taken += 1
    if m < 2:
        return state
    i = int(rng.integers(m))
    j = int(rng.integers(m - 1))
    if j >= i:
        j += 1
    e1, e2 = edges[i], edges[j]
    new1, new2 = shuffle_pair(e1, e2, rng)
    counts = state.counts()
    if new1 != e1 or new2 != e2:
        # multiplicity of each new hyperedge once e1, e2 are swapped out
        post1 = counts[new1] - (new1 == e1) - (new1 == e2) + 1 + (new1 == new2)
        post2 = counts[new2] - (new2 == e1) - (new2 == e2) + 1 + (new1 == new2)
        if post1 > 1 or post2 > 1:
            return state
    log_ratio = acceptance_log_ratio(e1, e2, new1, new2, params, config.tau)
    if log_ratio >= 0.0 or (log_ratio > NEG_INF and rng.random() < math.exp(log_ratio)):
        edges[i] = new1
        edges[j] = new2
        counts[e1] -= 1
        counts[e2] -= 1
        counts[new1] += 1
        counts[new2] += 1
        for key in (e1, e2):
            if counts[key] <= 0:
                counts.pop(key, None)
        state.steps_accepted += 1
    return state


def run_chain(state: ChainState, params: ModelParams, config: MCMCConfig,
              n_steps: int, rng: np.random.Generator) -> tuple[ChainState, float]:
    """Advance the chain ``n_steps``; returns the acceptance rate of this run.

    With debug logging enabled, the degree and size sequences are re-checked
    against their initial values every 10_000 steps.
    """
    check = logger.isEnabledFor(logging.DEBUG)
    if check:
        ref_d, ref_k = sequences_of(state.edges, params.n_nodes)
    taken_before = state.steps_taken
    accepted_before = state.steps_accepted
    for step in range(1, n_steps + 1):
        mcmc_step(state, params, config, rng)
        if check and step % _CHECK_EVERY == 0:
            d, k = sequences_of(state.edges, params.n_nodes)
            if not np.array_equal(d, ref_d) or k != ref_k:
                raise RuntimeError("reshuffling broke the sequence invariants")
    taken = state.steps_taken - taken_before
    rate = (state.steps_accepted - accepted_before) / taken if taken else 0.0
    return state, rate
