"""End-to-end sampling: sequences, matching, chain mixing, weighting.

A sampling job runs in three stages. First the binary degree and size
sequences are fixed, either drawn from their Gaussian approximations or
taken from user input, and matched into an initial hyperedge list. Second a
reshuffling chain mixes that list while preserving both sequences, with one
burn-in run up front and a block of intermediate steps between consecutive
samples. Third each emitted configuration receives positive integer
weights. With the exact dyadic path enabled (the default for unconditioned
jobs), size-2 hyperedges skip the approximate stages entirely and are drawn
fresh per sample from their exact Poisson law.

Samples stream lazily; nothing holds all of them in memory.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Iterator, Union

import numpy as np

from .expectations import SizeRange
from .matching import (
    PRIORITY_DEGREE,
    PRIORITY_SIZE,
    build_initial_configuration,
    sequences_of,
)
from .mcmc import ChainState, MCMCConfig, run_chain
from .model import Hypergraph, ModelParams, NEG_INF, ZeroIntensityError
from .sequences import sample_degree_sequence, sample_size_sequence
from .streams import stream
from .weights import sample_dyadic_exact, sample_weights

__all__ = [
    "EmptyConfigurationError",
    "FixedBoth",
    "FixedConfiguration",
    "FixedDegrees",
    "FixedSizes",
    "InitialConfiguration",
    "SamplingJob",
    "prepare_initial",
    "sample",
    "sample_conditioned_on_data",
]

logger = logging.getLogger(__name__)


class EmptyConfigurationError(ValueError):
    """Hyperedges of size three or more were requested but none could be built."""


@dataclass(frozen=True, eq=False)
class FixedDegrees:
    """Condition on a user-supplied binary degree sequence."""

    degrees: tuple


@dataclass(frozen=True, eq=False)
class FixedSizes:
    """Condition on a user-supplied size sequence (size -> count)."""

    sizes: dict


@dataclass(frozen=True, eq=False)
class FixedBoth:
    """Condition on both sequences; the priority one survives conflicts."""

    degrees: tuple
    sizes: dict
    priority: str = PRIORITY_SIZE


@dataclass(frozen=True, eq=False)
class FixedConfiguration:
    """Condition on an observed hyperedge configuration (binarized)."""

    edges: tuple


Conditioning = Union[None, FixedDegrees, FixedSizes, FixedBoth, FixedConfiguration]


@dataclass(frozen=True, eq=False)
class SamplingJob:
    """Everything one sampling run needs; immutable and reusable.

    ``exact_dyadic`` left at None resolves to on for unconditioned jobs and
    off otherwise; forcing it on under conditioning is rejected because
    fresh dyadic draws would break the conditioned sequences.
    """

    params: ModelParams
    mcmc: MCMCConfig = field(default_factory=MCMCConfig)
    n_samples: int = 1
    master_seed: int = 0
    conditioning: Conditioning = None
    exact_dyadic: bool | None = None

    def __post_init__(self) -> None:
        if self.n_samples < 1:
            raise ValueError("a job needs at least one sample")
        if self.exact_dyadic and self.conditioning is not None:
            raise ValueError(
                "exact dyadic sampling redraws size-2 hyperedges per sample "
                "and cannot honor conditioning; disable one of the two"
            )

    @property
    def effective_exact_dyadic(self) -> bool:
        if self.exact_dyadic is None:
            return self.conditioning is None
        return self.exact_dyadic


@dataclass(frozen=True)
class InitialConfiguration:
    """Outcome of the sequence stage: the list the chain starts from.

    ``degree_seq`` and ``size_seq`` are the sequences of the built list,
    which every emitted sample reproduces exactly. ``input_degrees`` and
    ``input_sizes`` are what the matcher was asked for (None when the job
    conditions on a full configuration).
    """

    edges: tuple
    degree_seq: np.ndarray
    size_seq: dict
    input_degrees: np.ndarray | None
    input_sizes: dict | None


def _validate_configuration(edges, params: ModelParams) -> list[tuple[int, ...]]:
    canonical = []
    for nodes in edges:
        e = tuple(sorted(int(v) for v in nodes))
        if len(e) < 2 or len(set(e)) != len(e):
            raise ValueError(f"invalid hyperedge {e} in conditioning data")
        if e[0] < 0 or e[-1] >= params.n_nodes:
            raise ValueError(f"hyperedge {e} outside the model's node range")
        if len(e) > params.max_size:
            raise ValueError(
                f"hyperedge of size {len(e)} exceeds the model max size "
                f"{params.max_size}"
            )
        canonical.append(e)
    for e in sorted(set(canonical)):
        if params.log_intensity(e) == NEG_INF:
            raise ZeroIntensityError(
                f"hyperedge {e} has zero intensity under these parameters; "
                "the start state would carry zero density"
            )
    return sorted(canonical)


def prepare_initial(job: SamplingJob) -> InitialConfiguration:
    """Run the sequence stage of a job and build the chain's start list."""
    params = job.params
    n = params.n_nodes
    cond = job.conditioning
    lowest = 3 if job.effective_exact_dyadic else 2

    if isinstance(cond, FixedConfiguration):
        edges = _validate_configuration(cond.edges, params)
        d, k = sequences_of(edges, n)
        return InitialConfiguration(tuple(edges), d, k, None, None)

    if job.effective_exact_dyadic and params.max_size < 3:
        return InitialConfiguration((), np.zeros(n, dtype=np.int64), {}, None, None)

    size_range = SizeRange(lowest, params.max_size)
    if isinstance(cond, FixedDegrees):
        degrees = np.asarray(cond.degrees, dtype=np.int64)
        sizes = sample_size_sequence(params, stream(job.master_seed, "size-seq"), size_range)
        priority = PRIORITY_DEGREE
    elif isinstance(cond, FixedSizes):
        degrees = sample_degree_sequence(params, stream(job.master_seed, "degree-seq"), size_range)
        sizes = {int(s): int(c) for s, c in cond.sizes.items()}
        priority = PRIORITY_SIZE
    elif isinstance(cond, FixedBoth):
        degrees = np.asarray(cond.degrees, dtype=np.int64)
        sizes = {int(s): int(c) for s, c in cond.sizes.items()}
        priority = cond.priority
    else:
        degrees = sample_degree_sequence(params, stream(job.master_seed, "degree-seq"), size_range)
        sizes = sample_size_sequence(params, stream(job.master_seed, "size-seq"), size_range)
        priority = PRIORITY_SIZE
    if len(degrees) != n:
        raise ValueError(f"degree sequence has {len(degrees)} entries, model has {n}")

    edges = build_initial_configuration(
        degrees, sizes, priority, params.max_size, stream(job.master_seed, "matcher")
    )
    higher_order_requested = sum(c for s, c in sizes.items() if s >= 3)
    if not edges and higher_order_requested > 0:
        raise EmptyConfigurationError(
            "hyperedges of size >= 3 were requested but the degree sequence "
            "admits none; nothing to mix"
        )
    d, k = sequences_of(edges, n)
    return InitialConfiguration(tuple(edges), d, k, degrees, sizes)


def sample_from_initial(job: SamplingJob,
                        initial: InitialConfiguration) -> Iterator[Hypergraph]:
    """Mix and weight an already prepared configuration, lazily."""
    params = job.params
    config = job.mcmc
    state = ChainState(list(initial.edges))
    chain_rng = stream(job.master_seed, "mcmc")
    run_chain(state, params, config, config.n_burn_in, chain_rng)
    for index in range(job.n_samples):
        _, rate = run_chain(state, params, config, config.n_intermediate, chain_rng)
        logger.info("sample=%d accept_rate=%.4f", index, rate)
        hg = sample_weights(list(state.edges), params,
                            stream(job.master_seed, "weights", index))
        if job.effective_exact_dyadic:
            pairs = sample_dyadic_exact(params, stream(job.master_seed, "dyadic", index))
            hg = Hypergraph.from_edges(
                params.n_nodes,
                list(hg.edges) + [p for p, _ in pairs],
                list(hg.weights) + [w for _, w in pairs],
            )
        yield hg


def sample(job: SamplingJob) -> Iterator[Hypergraph]:
    """Run a full sampling job; yields hypergraphs one by one."""
    return sample_from_initial(job, prepare_initial(job))


def sample_conditioned_on_data(job: SamplingJob,
                               dataset: Hypergraph) -> Iterator[Hypergraph]:
    """Sample with the dataset's binarized hyperedges as the start state.

    The sequence stage is skipped entirely; the dataset's degree and size
    sequences carry over to every sample unchanged, while the chain mixes
    which hyperedges realize them.
    """
    if dataset.n_nodes > job.params.n_nodes:
        raise ValueError(
            f"dataset spans {dataset.n_nodes} nodes, model only {job.params.n_nodes}"
        )
    if job.exact_dyadic:
        raise ValueError(
            "exact dyadic sampling cannot honor a conditioned configuration"
        )
    conditioned = replace(job, conditioning=FixedConfiguration(dataset.edges),
                          exact_dyadic=False)
    return sample(conditioned)
