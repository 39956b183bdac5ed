"""Core data structures: weighted hypergraphs and community model parameters.

A hypergraph holds hyperedges (sets of at least two distinct nodes) with
positive integer weights. The probabilistic model assigns each possible
hyperedge ``e`` an independent Poisson weight with mean ``intensity(e)``
divided by a size-dependent normalization, where the intensity is the sum of
bilinear membership interactions over all node pairs inside the hyperedge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import lgamma, log

import numpy as np

__all__ = [
    "AsymmetricAffinityError",
    "DuplicateNodeError",
    "Hypergraph",
    "InvalidMaxSizeError",
    "ModelParams",
    "NEG_INF",
    "Normalization",
    "ZeroIntensityError",
    "log_binomial",
    "log_default_kappa",
]

NEG_INF = float("-inf")

# Relative tolerance below which an affinity matrix counts as symmetric and is
# silently averaged with its transpose; beyond it we reject instead.
AFFINITY_SYMMETRY_RTOL = 1e-12


class AsymmetricAffinityError(ValueError):
    """Affinity matrix is not symmetric within tolerance."""


class InvalidMaxSizeError(ValueError):
    """Maximum hyperedge size lies outside [2, n_nodes]."""


class DuplicateNodeError(ValueError):
    """A hyperedge repeats a node id."""


class ZeroIntensityError(ValueError):
    """A stored hyperedge has zero intensity, i.e. probability zero."""


def log_binomial(n: int, k: int) -> float:
    """log of C(n, k) via log-gamma, never forming the raw binomial."""
    if k < 0 or k > n:
        return NEG_INF
    return lgamma(n + 1) - lgamma(k + 1) - lgamma(n - k + 1)


def log_default_kappa(size: int, n_nodes: int) -> float:
    """log of the default normalization n(n-1)/2 * C(N-2, n-2) for size n.

    The value is 1 at n = 2, so dyadic interactions keep their raw Poisson
    mean, and it grows with the number of hyperedges of size n that a fixed
    node pair can belong to.
    """
    if not 2 <= size <= n_nodes:
        raise ValueError(f"size {size} outside [2, {n_nodes}]")
    return log(size * (size - 1) / 2.0) + log_binomial(n_nodes - 2, size - 2)


@dataclass(frozen=True)
class Normalization:
    """Size-dependent normalization dividing hyperedge intensities.

    ``kind`` is one of ``"default"``, ``"binomial"``, ``"unit"`` or
    ``"table"``; a table carries explicit positive values for sizes
    ``2 .. max_size``.
    """

    kind: str = "default"
    table: tuple[float, ...] | None = None

    KINDS = ("default", "binomial", "unit", "table")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown normalization kind {self.kind!r}")
        if self.kind == "table":
            if not self.table:
                raise ValueError("table normalization needs explicit values")
            values = tuple(float(v) for v in self.table)
            if any(not math.isfinite(v) or v <= 0 for v in values):
                raise ValueError("normalization values must be positive and finite")
            object.__setattr__(self, "table", values)
        elif self.table is not None:
            raise ValueError(f"normalization kind {self.kind!r} takes no table")

    def log_values(self, max_size: int, n_nodes: int) -> np.ndarray:
        """log normalization per size, indexed by size (entries < 2 are NaN)."""
        out = np.full(max_size + 1, np.nan)
        sizes = range(2, max_size + 1)
        if self.kind == "default":
            out[2:] = [log_default_kappa(n, n_nodes) for n in sizes]
        elif self.kind == "binomial":
            out[2:] = [log_binomial(n_nodes - 2, n - 2) for n in sizes]
        elif self.kind == "unit":
            out[2:] = 0.0
        else:
            if len(self.table) != max_size - 1:
                raise ValueError(
                    f"normalization table has {len(self.table)} entries, "
                    f"expected {max_size - 1} for sizes 2..{max_size}"
                )
            out[2:] = np.log(self.table)
        return out


@lru_cache(maxsize=256)
def _triu_pairs(size: int) -> tuple[np.ndarray, np.ndarray]:
    # Upper-triangle index pairs in row-major (lexicographic) order.
    return np.triu_indices(size, k=1)


class ModelParams:
    """Validated parameters of the community interaction model.

    ``u`` is the (N, K) nonnegative membership matrix, ``w`` the (K, K)
    symmetric nonnegative affinity, ``max_size`` the largest hyperedge size
    the model generates, and ``normalization`` the per-size constants
    dividing the Poisson means. Construction validates everything and the
    instance is immutable afterwards, so it can be shared across workers.
    """

    def __init__(
        self,
        u,
        w,
        max_size: int,
        normalization: Normalization | None = None,
    ) -> None:
        u = np.ascontiguousarray(np.asarray(u, dtype=float))
        w = np.asarray(w, dtype=float).copy()
        if u.ndim != 2:
            raise ValueError("membership matrix must be 2-D")
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("affinity matrix must be square")
        if u.shape[1] != w.shape[0]:
            raise ValueError(
                f"membership has {u.shape[1]} communities, affinity {w.shape[0]}"
            )
        if not np.all(np.isfinite(u)) or not np.all(np.isfinite(w)):
            raise ValueError("parameters must be finite")
        if np.any(u < 0) or np.any(w < 0):
            raise ValueError("parameters must be nonnegative")
        asym = np.abs(w - w.T).max()
        scale = np.abs(w).max()
        if asym > AFFINITY_SYMMETRY_RTOL * scale:
            raise AsymmetricAffinityError(
                f"affinity asymmetry {asym:.3e} exceeds {AFFINITY_SYMMETRY_RTOL} "
                "relative tolerance"
            )
        w = (w + w.T) / 2.0
        n_nodes = u.shape[0]
        max_size = int(max_size)
        if max_size < 2 or max_size > n_nodes:
            raise InvalidMaxSizeError(
                f"max hyperedge size {max_size} outside [2, {n_nodes}]"
            )
        if normalization is None:
            normalization = Normalization()

        self.u = u
        self.w = w
        self.max_size = max_size
        self.normalization = normalization
        # u w, so that u_i^T w u_j == _uw[i] . u[j]
        self._uw = u @ w
        # u_i^T w u_i per node, needed by the O(N) pair-sum identity
        self._self_affinity = np.einsum("ik,ik->i", self._uw, u)
        self._log_kappa = normalization.log_values(max_size, n_nodes)
        self.membership_total = u.sum(axis=0)
        self.total_pair_interaction = 0.5 * float(
            self.membership_total @ w @ self.membership_total
            - self._self_affinity.sum()
        )
        for arr in (self.u, self.w, self._uw, self._self_affinity,
                    self._log_kappa, self.membership_total):
            arr.setflags(write=False)

    @property
    def n_nodes(self) -> int:
        return self.u.shape[0]

    @property
    def n_communities(self) -> int:
        return self.w.shape[0]

    def with_affinity(self, w) -> "ModelParams":
        """Copy of the parameters with a different affinity matrix."""
        return ModelParams(self.u, w, self.max_size, self.normalization)

    def log_kappa(self, size: int) -> float:
        """log of the normalization constant for hyperedges of a given size."""
        if not 2 <= size <= self.max_size:
            raise ValueError(f"size {size} outside [2, {self.max_size}]")
        return float(self._log_kappa[size])

    def intensity(self, nodes) -> float:
        """Sum of pairwise membership interactions inside one hyperedge.

        Pairs are accumulated in lexicographic order, so repeated calls on
        the same node set reproduce the same floating-point value.
        """
        size = len(nodes)
        if size < 2:
            raise ValueError("a hyperedge needs at least two nodes")
        if min(nodes) < 0 or max(nodes) >= self.n_nodes:
            raise ValueError("node id out of range")
        if size == 2:
            i, j = nodes
            return float(self._uw[i] @ self.u[j])
        idx = np.asarray(nodes, dtype=np.intp)
        pair = self._uw[idx] @ self.u[idx].T
        rows, cols = _triu_pairs(size)
        return float(pair[rows, cols].sum())

    def log_intensity(self, nodes) -> float:
        """log of the intensity; -inf marks a probability-zero hyperedge."""
        lam = self.intensity(nodes)
        return log(lam) if lam > 0.0 else NEG_INF

    def log_poisson_mean(self, nodes) -> float:
        """log(intensity / normalization); -inf when the intensity is zero."""
        return self.log_intensity(nodes) - self.log_kappa(len(nodes))

    def existence_probability(self, nodes) -> float:
        """Probability that the hyperedge carries positive weight."""
        lp = self.log_poisson_mean(nodes)
        if lp == NEG_INF:
            return 0.0
        if lp > 700.0:  # exp would overflow; probability saturates anyway
            return 1.0
        return float(-np.expm1(-math.exp(lp)))


def _canonical_edge(nodes) -> tuple[int, ...]:
    out = tuple(sorted(int(v) for v in nodes))
    if len(set(out)) != len(out):
        raise DuplicateNodeError(f"hyperedge {out} repeats a node")
    return out


@dataclass(frozen=True)
class Hypergraph:
    """Weighted hypergraph over dense integer node ids ``0 .. n_nodes - 1``.

    Hyperedges are ascending node tuples listed in lexicographic order, each
    with a positive integer weight; absent hyperedges are never stored. Use
    :meth:`from_edges` to build from arbitrary input order.
    """

    n_nodes: int
    edges: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n_nodes < 0:
            raise ValueError("node count must be nonnegative")
        if len(self.edges) != len(self.weights):
            raise ValueError("edges and weights differ in length")
        prev = None
        for nodes, weight in zip(self.edges, self.weights):
            if len(nodes) < 2:
                raise ValueError(f"hyperedge {nodes} smaller than two nodes")
            if any(nodes[t] >= nodes[t + 1] for t in range(len(nodes) - 1)):
                raise ValueError(f"hyperedge {nodes} not in ascending node order")
            if nodes[0] < 0 or nodes[-1] >= self.n_nodes:
                raise ValueError(f"hyperedge {nodes} has node ids outside range")
            if weight < 1:
                raise ValueError(f"hyperedge {nodes} has non-positive weight")
            if prev is not None and nodes <= prev:
                if nodes == prev:
                    raise ValueError(f"duplicate hyperedge {nodes}")
                raise ValueError("hyperedges not in lexicographic order")
            prev = nodes

    @classmethod
    def from_edges(cls, n_nodes: int, edges, weights=None) -> "Hypergraph":
        """Build from hyperedges in any order; weights default to one."""
        canon = [_canonical_edge(e) for e in edges]
        if weights is None:
            weights = [1] * len(canon)
        weights = [int(x) for x in weights]
        order = sorted(range(len(canon)), key=canon.__getitem__)
        return cls(
            int(n_nodes),
            tuple(canon[t] for t in order),
            tuple(weights[t] for t in order),
        )

    @classmethod
    def from_multiset(cls, n_nodes: int, edges, weights=None) -> "Hypergraph":
        """Like :meth:`from_edges` but repeated node sets merge by weight sum."""
        edges = list(edges)
        if weights is None:
            weights = [1] * len(edges)
        merged: dict[tuple[int, ...], int] = {}
        for nodes, weight in zip(edges, weights):
            key = _canonical_edge(nodes)
            merged[key] = merged.get(key, 0) + int(weight)
        keys = sorted(merged)
        return cls(int(n_nodes), tuple(keys), tuple(merged[k] for k in keys))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degree_sequence(self) -> np.ndarray:
        """Per-node count of hyperedges containing the node (weights ignored)."""
        d = np.zeros(self.n_nodes, dtype=np.int64)
        for nodes in self.edges:
            for v in nodes:
                d[v] += 1
        return d

    def size_sequence(self) -> dict[int, int]:
        """Count of hyperedges per hyperedge size (weights ignored)."""
        k: dict[int, int] = {}
        for nodes in self.edges:
            k[len(nodes)] = k.get(len(nodes), 0) + 1
        return k

    def binary(self) -> "Hypergraph":
        """The same hypergraph with every weight set to one."""
        return Hypergraph(self.n_nodes, self.edges, (1,) * len(self.edges))
