"""Reading and writing hyperedge lists and model parameter files.

Hyperedge files are UTF-8 text with one hyperedge per line in the form
``WEIGHT<TAB>node node node ...`` with LF line endings; writers emit node
ids in ascending order and hyperedges in lexicographic order, so a write
followed by a read reproduces the hypergraph exactly. Binary configurations
use weight 1 on every line.

Parameter files are a single JSON document with fields ``N``, ``K``,
``max_size``, ``u`` (N rows of K reals), ``w`` (K rows of K reals) and
``kappa`` (one of ``"default"``, ``"binomial"``, ``"unit"``, or an explicit
array of positive values for sizes 2..max_size).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .model import Hypergraph, ModelParams, Normalization

__all__ = [
    "HyperedgeFileError",
    "ingest_hypergraph",
    "load_params",
    "relabel_edges",
    "save_params",
    "write_hypergraph",
]


class HyperedgeFileError(ValueError):
    """A hyperedge file line could not be parsed."""


def ingest_hypergraph(path, n_nodes: int | None = None) -> Hypergraph:
    """Read a hyperedge file; the node count defaults to max id plus one."""
    edges: list[list[int]] = []
    weights: list[int] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise HyperedgeFileError(
                    f"{path}:{lineno}: expected 'WEIGHT<TAB>node node ...'"
                )
            try:
                weight = int(parts[0])
                nodes = [int(tok) for tok in parts[1].split()]
            except ValueError:
                raise HyperedgeFileError(
                    f"{path}:{lineno}: non-integer field"
                ) from None
            if weight <= 0:
                raise HyperedgeFileError(
                    f"{path}:{lineno}: weight must be positive, got {weight}"
                )
            if len(set(nodes)) != len(nodes):
                raise HyperedgeFileError(
                    f"{path}:{lineno}: duplicate node in hyperedge"
                )
            if len(nodes) < 2:
                raise HyperedgeFileError(
                    f"{path}:{lineno}: a hyperedge needs at least two nodes"
                )
            edges.append(nodes)
            weights.append(weight)
    if n_nodes is None:
        n_nodes = max((max(e) for e in edges), default=-1) + 1
    return Hypergraph.from_edges(n_nodes, edges, weights)


def write_hypergraph(hg: Hypergraph, path) -> None:
    """Write the canonical hyperedge file for a hypergraph."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for nodes, weight in zip(hg.edges, hg.weights):
            fh.write(f"{weight}\t{' '.join(map(str, nodes))}\n")


def relabel_edges(edges) -> tuple[list[list[int]], list]:
    """Map arbitrary sortable node labels onto dense 0-based ids.

    Returns the relabeled hyperedges and the label table, where the table
    index is the assigned node id.
    """
    edges = [list(e) for e in edges]
    labels = sorted({v for e in edges for v in e})
    table = {label: t for t, label in enumerate(labels)}
    return [[table[v] for v in e] for e in edges], labels


def _parse_kappa(value, max_size: int) -> Normalization:
    if isinstance(value, str):
        return Normalization(kind=value)
    return Normalization(kind="table", table=tuple(float(v) for v in value))


def load_params(path) -> ModelParams:
    """Read and validate a JSON parameter document."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    for key in ("N", "K", "max_size", "u", "w"):
        if key not in doc:
            raise ValueError(f"parameter file misses field {key!r}")
    u = np.asarray(doc["u"], dtype=float)
    w = np.asarray(doc["w"], dtype=float)
    n, k = int(doc["N"]), int(doc["K"])
    if u.shape != (n, k):
        raise ValueError(f"membership shape {u.shape} does not match (N, K) = {(n, k)}")
    if w.shape != (k, k):
        raise ValueError(f"affinity shape {w.shape} does not match (K, K) = {(k, k)}")
    max_size = int(doc["max_size"])
    normalization = _parse_kappa(doc.get("kappa", "default"), max_size)
    return ModelParams(u, w, max_size, normalization)


def save_params(params: ModelParams, path) -> None:
    """Write a parameter document that :func:`load_params` reads back."""
    norm = params.normalization
    kappa = list(norm.table) if norm.kind == "table" else norm.kind
    doc = {
        "N": params.n_nodes,
        "K": params.n_communities,
        "max_size": params.max_size,
        "u": params.u.tolist(),
        "w": params.w.tolist(),
        "kappa": kappa,
    }
    Path(path).write_text(json.dumps(doc), encoding="utf-8")
