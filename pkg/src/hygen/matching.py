"""Greedy construction of a hyperedge list from degree and size sequences.

Two independently chosen sequences need not admit a common hypergraph. The
builder therefore reproduces one of them, the priority sequence, exactly,
and bends the other as little as the greedy construction allows. When the
sequences are compatible, both come out untouched.
"""

from __future__ import annotations

import heapq

import numpy as np

__all__ = [
    "PRIORITY_DEGREE",
    "PRIORITY_SIZE",
    "build_initial_configuration",
    "extract_hyperedge",
    "sequences_of",
]

PRIORITY_DEGREE = "degree"
PRIORITY_SIZE = "size"


def _check_priority(priority: str) -> None:
    if priority not in (PRIORITY_DEGREE, PRIORITY_SIZE):
        raise ValueError(f"priority must be 'degree' or 'size', got {priority!r}")


class _DegreePool:
    """Max-heap over remaining degrees with lazy invalidation.

    Ordering: higher remaining degree first, ties toward the lower node id.
    Entries go stale when a node's degree changes; stale entries are skipped
    on pop, which keeps each extraction at O(log N) amortized.
    """

    def __init__(self, degrees: np.ndarray) -> None:
        self.degrees = degrees
        self.n_positive = int(np.count_nonzero(degrees > 0))
        self.heap = [(-int(d), int(v)) for v, d in enumerate(degrees) if d > 0]
        heapq.heapify(self.heap)

    def take_top(self, count: int) -> list[int]:
        """Pop up to ``count`` distinct nodes with the highest degrees."""
        out: list[int] = []
        while len(out) < count and self.heap:
            neg_d, v = heapq.heappop(self.heap)
            if -neg_d == self.degrees[v] and self.degrees[v] > 0:
                out.append(v)
        return out

    def consume(self, nodes: list[int]) -> None:
        """Decrement the degree of each node and requeue the positive ones."""
        for v in nodes:
            d = int(self.degrees[v]) - 1
            self.degrees[v] = d
            if d > 0:
                heapq.heappush(self.heap, (-d, v))
            else:
                self.n_positive -= 1


def _extract(pool: _DegreePool, size: int, priority: str,
             rng: np.random.Generator) -> list[int]:
    chosen = pool.take_top(size)
    padded: list[int] = []
    if priority == PRIORITY_SIZE and len(chosen) < size:
        # Not enough positive-degree nodes: fill up with uniformly chosen
        # zero-degree nodes so the requested size is honored. The chosen
        # nodes all have positive degree, so the pools are disjoint.
        zeros = np.flatnonzero(pool.degrees == 0)
        padded = [int(v) for v in rng.choice(zeros, size=size - len(chosen),
                                             replace=False)]
    pool.consume(chosen)
    return sorted(chosen + padded)


def extract_hyperedge(size: int, degrees: np.ndarray, priority: str,
                      rng: np.random.Generator) -> list[int]:
    """Draw one hyperedge, decrementing the remaining degrees in place.

    Degree priority returns the up-to-``size`` positive-degree nodes with
    the highest remaining degrees, possibly fewer than requested. Size
    priority pads with uniformly chosen zero-degree nodes so exactly
    ``size`` distinct nodes come back. Only selected positive-degree nodes
    are decremented.
    """
    _check_priority(priority)
    if size < 2:
        raise ValueError("hyperedge size must be at least 2")
    if size > len(degrees):
        raise ValueError(f"hyperedge size {size} exceeds node count {len(degrees)}")
    return _extract(_DegreePool(degrees), size, priority, rng)


def build_initial_configuration(
    degrees,
    size_counts: dict[int, int],
    priority: str,
    max_size: int,
    rng: np.random.Generator,
) -> list[tuple[int, ...]]:
    """Greedy hyperedge list realizing the priority sequence exactly.

    Sizes are drained in increasing order, always taking the nodes with the
    highest remaining degrees; draws that come back with fewer than two
    nodes are discarded. With degree priority, leftover degrees are spent
    afterwards on hyperedges of uniformly random size until fewer than two
    nodes have degree left. The input degree sequence is not modified.
    """
    _check_priority(priority)
    degrees = np.asarray(degrees, dtype=np.int64).copy()
    if degrees.ndim != 1:
        raise ValueError("degree sequence must be 1-D")
    if np.any(degrees < 0):
        raise ValueError("degrees must be nonnegative")
    if max_size > len(degrees):
        raise ValueError("max size exceeds node count")
    for s, count in size_counts.items():
        if s < 2 or s > max_size:
            raise ValueError(f"size {s} outside [2, {max_size}]")
        if count < 0:
            raise ValueError("size counts must be nonnegative")

    pool = _DegreePool(degrees)
    edges: list[tuple[int, ...]] = []
    for s in range(2, max_size + 1):
        for _ in range(int(size_counts.get(s, 0))):
            nodes = _extract(pool, s, priority, rng)
            if len(nodes) > 1:
                edges.append(tuple(nodes))
    if priority == PRIORITY_DEGREE:
        # The size sequence is exhausted; keep drawing random-size hyperedges
        # until at most one node has remaining degree.
        while pool.n_positive >= 2:
            hi = min(pool.n_positive, max_size)
            s = int(rng.integers(2, hi + 1))
            edges.append(tuple(_extract(pool, s, priority, rng)))
    return edges


def sequences_of(edges, n_nodes: int) -> tuple[np.ndarray, dict[int, int]]:
    """Binary degree and size sequences of a hyperedge list."""
    d = np.zeros(n_nodes, dtype=np.int64)
    k: dict[int, int] = {}
    for nodes in edges:
        for v in nodes:
            if not 0 <= v < n_nodes:
                raise ValueError(f"node id {v} outside [0, {n_nodes})")
            d[v] += 1
        k[len(nodes)] = k.get(len(nodes), 0) + 1
    return d, k
