"""Structural statistics for comparing hypergraphs against model samples.

The statistics collected here are the usual goodness-of-fit battery for
higher-order data: the weighted clique-expansion adjacency, nesting counts
between consecutive hyperedge sizes, an eigenvector centrality on the dual
graph of hyperedges, the diagonal of the matrix exponential of the
adjacency as a node centrality, Jaccard similarity of hyperedge sets, and
community mixing summaries (entropy and majority share per hyperedge).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .model import Hypergraph

__all__ = [
    "EntropySummary",
    "PowerIterationError",
    "StatsReport",
    "adjacency",
    "community_entropy",
    "compute_stats_report",
    "dual_eigenvector_centrality",
    "hypergraph_entropy",
    "inclusion_counts",
    "jaccard",
    "majority_ratio",
    "subhypergraph_centrality",
]

# Dense eigendecompositions get slow and memory-hungry past this point.
DENSE_NODE_GUARD = 10_000


class PowerIterationError(RuntimeError):
    """Power iteration ran out of iterations; carries the last residual."""

    def __init__(self, residual: float, max_iter: int) -> None:
        super().__init__(
            f"no convergence within {max_iter} iterations (residual {residual:.3e})"
        )
        self.residual = residual


@lru_cache(maxsize=256)
def _triu_pairs(size: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(size, k=1)


def adjacency(hg: Hypergraph) -> sparse.csr_matrix:
    """Weighted clique-expansion adjacency.

    Entry (i, j) accumulates the weights of all hyperedges containing both
    nodes; the result is symmetric with a zero diagonal.
    """
    n = hg.n_nodes
    if not hg.edges:
        return sparse.csr_matrix((n, n), dtype=np.int64)
    rows, cols, vals = [], [], []
    for nodes, weight in zip(hg.edges, hg.weights):
        arr = np.asarray(nodes)
        r, c = _triu_pairs(len(arr))
        rows.append(arr[r])
        cols.append(arr[c])
        vals.append(np.full(len(r), weight, dtype=np.int64))
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    v = np.concatenate(vals)
    mat = sparse.coo_matrix(
        (np.concatenate([v, v]), (np.concatenate([r, c]), np.concatenate([c, r]))),
        shape=(n, n),
        dtype=np.int64,
    )
    return mat.tocsr()


def inclusion_counts(hg: Hypergraph) -> dict[int, int]:
    """Number of (e, f) pairs with |e| = n, |f| = n + 1 and e a subset of f.

    Weights are ignored and every inclusion pair counts once. Keys run over
    all sizes n from 2 up to one below the largest hyperedge size present.
    """
    by_size: dict[int, set[frozenset]] = {}
    for nodes in hg.edges:
        by_size.setdefault(len(nodes), set()).add(frozenset(nodes))
    if not by_size:
        return {}
    out = {n: 0 for n in range(2, max(by_size))}
    for size, bigger in by_size.items():
        smaller = by_size.get(size - 1)
        if not smaller:
            continue
        for f in bigger:
            for v in f:
                if f - {v} in smaller:
                    out[size - 1] += 1
    return out


def _dual_adjacency(hg: Hypergraph) -> sparse.csr_matrix:
    # Hyperedges become vertices, adjacent when they share at least one node.
    # Bucketing by node avoids the quadratic all-pairs intersection test.
    incident: dict[int, list[int]] = {}
    for t, nodes in enumerate(hg.edges):
        for v in nodes:
            incident.setdefault(v, []).append(t)
    pairs: set[tuple[int, int]] = set()
    for members in incident.values():
        for a_pos in range(len(members)):
            for b_pos in range(a_pos + 1, len(members)):
                pairs.add((members[a_pos], members[b_pos]))
    m = len(hg.edges)
    if not pairs:
        return sparse.csr_matrix((m, m), dtype=float)
    r = np.fromiter((p[0] for p in pairs), dtype=np.int64, count=len(pairs))
    c = np.fromiter((p[1] for p in pairs), dtype=np.int64, count=len(pairs))
    ones = np.ones(len(pairs))
    mat = sparse.coo_matrix(
        (np.concatenate([ones, ones]), (np.concatenate([r, c]), np.concatenate([c, r]))),
        shape=(m, m),
    )
    return mat.tocsr()


def dual_eigenvector_centrality(hg: Hypergraph, tol: float = 1e-10,
                                max_iter: int = 1000) -> np.ndarray:
    """Leading eigenvector of the dual graph, one entry per hyperedge.

    The dual connects hyperedges with non-empty intersection. The vector is
    computed by power iteration on the largest connected component
    (nonnegative, unit L2 norm); hyperedges outside that component score
    zero, and a dual without any edges scores all zeros.
    """
    m = len(hg.edges)
    if m == 0:
        return np.zeros(0)
    dual = _dual_adjacency(hg)
    if dual.nnz == 0:
        return np.zeros(m)
    _, labels = csgraph.connected_components(dual, directed=False)
    component = np.bincount(labels).argmax()
    idx = np.flatnonzero(labels == component)
    sub = dual[idx][:, idx]
    x = np.full(len(idx), 1.0 / math.sqrt(len(idx)))
    residual = math.inf
    for _ in range(max_iter):
        # The identity shift keeps the iteration from oscillating when the
        # component is bipartite; the leading eigenvector is unchanged.
        y = sub @ x + x
        y_norm = np.linalg.norm(y)
        x_new = y / y_norm
        residual = float(np.linalg.norm(x_new - x))
        x = x_new
        if residual <= tol:
            break
    else:
        raise PowerIterationError(residual, max_iter)
    out = np.zeros(m)
    out[idx] = np.abs(x)
    return out


def subhypergraph_centrality(hg: Hypergraph, mode: str = "normalized") -> np.ndarray:
    """Diagonal of the matrix exponential of the clique-expansion adjacency.

    Counts closed walks through each node with factorially decaying weights.
    Mode "normalized" (default) rescales the adjacency by its spectral
    radius before exponentiating, which keeps the exponentials finite on
    heavy graphs; "raw" uses the adjacency as is.
    """
    if mode not in ("raw", "normalized"):
        raise ValueError(f"mode must be 'raw' or 'normalized', got {mode!r}")
    if hg.n_nodes > DENSE_NODE_GUARD:
        raise ValueError(
            f"dense spectral computation capped at {DENSE_NODE_GUARD} nodes"
        )
    x = adjacency(hg).toarray().astype(float)
    vals, vecs = np.linalg.eigh(x)
    if mode == "normalized":
        radius = float(np.abs(vals).max()) if len(vals) else 0.0
        if radius > 0:
            vals = vals / radius
    return (vecs ** 2) @ np.exp(vals)


def jaccard(first: Hypergraph, second: Hypergraph) -> float:
    """Jaccard similarity of the two binary hyperedge sets (weights ignored).

    Two empty hypergraphs count as identical.
    """
    s1 = set(first.edges)
    s2 = set(second.edges)
    if not s1 and not s2:
        return 1.0
    return len(s1 & s2) / len(s1 | s2)


def _edge_labels(nodes, u) -> np.ndarray:
    rows = np.asarray(u, dtype=float)[list(nodes)]
    if np.any(~rows.any(axis=1)):
        raise ValueError("node with all-zero membership has no hard label")
    return rows.argmax(axis=1)


def community_entropy(nodes, u) -> float:
    """Entropy (natural log) of hard-label shares inside one hyperedge.

    Hard labels are the argmax of each membership row, ties toward the
    lower community index. Zero for a single-community hyperedge, at most
    log K overall.
    """
    labels = _edge_labels(nodes, u)
    counts = np.bincount(labels)
    shares = counts[counts > 0] / len(labels)
    return float(-(shares * np.log(shares)).sum())


def majority_ratio(nodes, u) -> float:
    """Share of the hyperedge's nodes carrying its most common hard label."""
    labels = _edge_labels(nodes, u)
    return float(np.bincount(labels).max() / len(labels))


@dataclass(frozen=True)
class EntropySummary:
    """Mean and histogram of per-hyperedge community entropies."""

    mean: float
    values: np.ndarray
    hist_counts: np.ndarray
    hist_edges: np.ndarray


def hypergraph_entropy(hg: Hypergraph, u, bins: int = 20) -> EntropySummary:
    """Community entropy of every hyperedge, aggregated."""
    values = np.array([community_entropy(nodes, u) for nodes in hg.edges])
    k = np.asarray(u).shape[1]
    top = math.log(k) if k > 1 else 1.0
    counts, edges = np.histogram(values, bins=bins, range=(0.0, top))
    mean = float(values.mean()) if len(values) else 0.0
    return EntropySummary(mean, values, counts, edges)


@dataclass(frozen=True)
class StatsReport:
    """Bundle of structural statistics of one hypergraph."""

    adjacency: sparse.csr_matrix
    inclusion_counts: dict[int, int]
    dual_centrality: np.ndarray
    subhypergraph_centrality: np.ndarray
    degree_seq: np.ndarray
    size_seq: dict[int, int]


def compute_stats_report(hg: Hypergraph, dual_tol: float = 1e-10,
                         dual_max_iter: int = 1000,
                         centrality_mode: str = "normalized") -> StatsReport:
    """All structural statistics of a hypergraph in one pass."""
    return StatsReport(
        adjacency=adjacency(hg),
        inclusion_counts=inclusion_counts(hg),
        dual_centrality=dual_eigenvector_centrality(hg, dual_tol, dual_max_iter),
        subhypergraph_centrality=subhypergraph_centrality(hg, centrality_mode),
        degree_seq=hg.degree_sequence(),
        size_seq=hg.size_sequence(),
    )
