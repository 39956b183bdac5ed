"""Hyperedge weights: zero-truncated Poisson draws and the exact dyadic path.

Existing hyperedges carry the law of a Poisson weight conditioned on being
positive. Those weights are drawn by inverse transform sampling through the
plain Poisson quantile function, never by rejection. Pairwise interactions
are cheap enough to sample exactly, one Poisson draw per node pair, which
the pipeline uses as a fast path for size-2 hyperedges.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy import stats

from .model import Hypergraph, ModelParams, NEG_INF, ZeroIntensityError

__all__ = ["sample_dyadic_exact", "sample_weights", "ztp_quantile"]

logger = logging.getLogger(__name__)


def ztp_quantile(p, lam):
    """Quantile of a Poisson conditioned on being positive.

    Returns the smallest v >= 1 whose Poisson cdf reaches
    ``exp(-lam) + p * (1 - exp(-lam))``, i.e. the plain Poisson quantile of
    the rescaled probability. p = 1 is clamped a hair below one rather than
    rejected. Scalars in, scalar out; arrays broadcast.
    """
    p_arr = np.asarray(p, dtype=float)
    lam_arr = np.asarray(lam, dtype=float)
    if np.any(~np.isfinite(lam_arr)) or np.any(lam_arr <= 0):
        raise ValueError("the Poisson mean must be positive and finite")
    if np.any((p_arr < 0) | (p_arr > 1)):
        raise ValueError("p must lie in [0, 1]")
    top = np.nextafter(1.0, 0.0)
    q = np.exp(-lam_arr) - np.expm1(-lam_arr) * np.minimum(p_arr, top)
    q = np.minimum(q, top)
    v = np.maximum(stats.poisson.ppf(q, lam_arr), 1.0)
    if p_arr.ndim == 0 and lam_arr.ndim == 0:
        return int(v)
    return v.astype(np.int64)


def sample_weights(config, params: ModelParams,
                   rng: np.random.Generator) -> Hypergraph:
    """Assign positive integer weights to a binary configuration.

    Repeated hyperedges collapse to a single one before weighting; the
    number of merged repeats is logged. A zero-intensity hyperedge in the
    configuration is an inconsistent state and raises.
    """
    edges = sorted({tuple(sorted(e)) for e in config})
    dropped = len(list(config)) - len(edges)
    if dropped:
        logger.info("merged %d repeated hyperedges before weighting", dropped)
    if not edges:
        return Hypergraph(params.n_nodes, (), ())
    rates = np.empty(len(edges))
    for t, nodes in enumerate(edges):
        log_mean = params.log_poisson_mean(nodes)
        if log_mean == NEG_INF:
            raise ZeroIntensityError(
                f"hyperedge {nodes} has zero intensity yet sits in the configuration"
            )
        rates[t] = math.exp(log_mean)
    drawn = ztp_quantile(rng.uniform(size=len(edges)), rates)
    return Hypergraph(params.n_nodes, tuple(edges),
                      tuple(int(x) for x in drawn))


def sample_dyadic_exact(params: ModelParams, rng: np.random.Generator,
                        block_rows: int | None = None):
    """Draw every node pair's weight from its exact Poisson law.

    Returns the positive draws as a list of ``((i, j), weight)`` with
    ``i < j``. Time and randomness are quadratic in the node count; row
    blocks bound the working memory.
    """
    n = params.n_nodes
    inv_kappa = math.exp(-params.log_kappa(2))
    u = params.u
    uw = params._uw
    if block_rows is None:
        block_rows = max(1, (1 << 22) // max(n, 1))
    out = []
    for a in range(0, n - 1, block_rows):
        b = min(a + block_rows, n - 1)
        # columns start at a+1 so only pairs with j > i are materialized
        lam = (uw[a:b] @ u[a + 1:].T) * inv_kappa
        rows = np.arange(a, b)[:, None]
        cols = np.arange(a + 1, n)[None, :]
        np.multiply(lam, cols > rows, out=lam)
        counts = rng.poisson(lam)
        rr, cc = np.nonzero(counts)
        for r, c, weight in zip(rr, cc, counts[rr, cc]):
            out.append(((int(a + r), int(a + 1 + c)), int(weight)))
    return out
