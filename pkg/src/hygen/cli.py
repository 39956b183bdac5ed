"""Command line interface: ``hygen sample | stats | expected-stats``.

The log level is taken from the HYGEN_LOG environment variable (default
INFO); per-sample acceptance rates go to the log.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .expectations import expected_degrees, expected_mean_degree, expected_size_counts
from .io import ingest_hypergraph, load_params, write_hypergraph
from .matching import PRIORITY_DEGREE, PRIORITY_SIZE
from .mcmc import MCMCConfig
from .metrics import community_entropy, compute_stats_report, majority_ratio
from .pipeline import (
    FixedBoth,
    FixedConfiguration,
    FixedDegrees,
    FixedSizes,
    SamplingJob,
    prepare_initial,
    sample_from_initial,
)

logger = logging.getLogger("hygen.cli")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hygen",
        description="Sample weighted hypergraphs with community structure "
                    "and compute comparison statistics.",
    )
    parser.add_argument("--version", action="version", version=f"hygen {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sample = sub.add_parser("sample", help="draw hypergraph samples")
    p_sample.add_argument("--params", required=True, help="JSON parameter file")
    p_sample.add_argument("--degree-seq", help="fix the degree sequence (one integer per line)")
    p_sample.add_argument("--size-seq", help="fix the size sequence ('size count' lines)")
    p_sample.add_argument("--priority", choices=(PRIORITY_DEGREE, PRIORITY_SIZE),
                          default=PRIORITY_SIZE,
                          help="sequence preserved exactly when both are fixed")
    p_sample.add_argument("--condition-on",
                          help="hyperedge file whose binarized configuration starts the chain")
    p_sample.add_argument("--samples", type=int, default=1)
    p_sample.add_argument("--seed", type=int, default=None,
                          help="master seed (default: drawn from system entropy)")
    p_sample.add_argument("--burn-in", type=int, default=None)
    p_sample.add_argument("--intermediate-steps", type=int, default=None)
    p_sample.add_argument("--tau", type=float, default=None,
                          help="log-ratio threshold for the sparse linearization")
    p_sample.add_argument("--exact-dyadic", choices=("on", "off"), default=None,
                          help="draw size-2 hyperedges exactly (default: on "
                               "unless conditioning)")
    p_sample.add_argument("--dump-sequences", metavar="PATH",
                          help="write the stage-one sequences to PATH.degrees.txt "
                               "and PATH.sizes.txt")
    p_sample.add_argument("--out", required=True, help="output directory")

    p_stats = sub.add_parser("stats", help="structural statistics of a hypergraph")
    p_stats.add_argument("--input", required=True, help="hyperedge file")
    p_stats.add_argument("--params", required=True, help="JSON parameter file")
    p_stats.add_argument("--out", required=True, help="output directory")

    p_exp = sub.add_parser("expected-stats",
                           help="closed-form expected statistics of the model")
    p_exp.add_argument("--params", required=True, help="JSON parameter file")
    return parser


def _read_degree_file(path) -> list[int]:
    lines = Path(path).read_text(encoding="utf-8").split()
    return [int(tok) for tok in lines]


def _read_size_file(path) -> dict[int, int]:
    out: dict[int, int] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        size, count = line.split()
        out[int(size)] = int(count)
    return out


def _build_conditioning(args, params):
    if args.condition_on:
        if args.degree_seq or args.size_seq:
            raise SystemExit(
                "--condition-on already fixes both sequences; "
                "--degree-seq/--size-seq cannot be combined with it"
            )
        data = ingest_hypergraph(args.condition_on, n_nodes=params.n_nodes)
        return FixedConfiguration(data.edges)
    degrees = _read_degree_file(args.degree_seq) if args.degree_seq else None
    sizes = _read_size_file(args.size_seq) if args.size_seq else None
    if degrees is not None and sizes is not None:
        return FixedBoth(tuple(degrees), sizes, priority=args.priority)
    if degrees is not None:
        return FixedDegrees(tuple(degrees))
    if sizes is not None:
        return FixedSizes(sizes)
    return None


def _cmd_sample(args) -> int:
    params = load_params(args.params)
    conditioning = _build_conditioning(args, params)
    mcmc_kwargs = {}
    if args.burn_in is not None:
        mcmc_kwargs["n_burn_in"] = args.burn_in
    if args.intermediate_steps is not None:
        mcmc_kwargs["n_intermediate"] = args.intermediate_steps
    if args.tau is not None:
        mcmc_kwargs["tau"] = args.tau
    seed = args.seed
    if seed is None:
        seed = int(np.random.SeedSequence().entropy) % (2 ** 64)
        logger.info("seed=%d (drawn from system entropy)", seed)
    exact_dyadic = None if args.exact_dyadic is None else args.exact_dyadic == "on"
    job = SamplingJob(
        params=params,
        mcmc=MCMCConfig(**mcmc_kwargs),
        n_samples=args.samples,
        master_seed=seed,
        conditioning=conditioning,
        exact_dyadic=exact_dyadic,
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    initial = prepare_initial(job)
    if args.dump_sequences:
        base = Path(args.dump_sequences)
        degrees = initial.input_degrees
        sizes = initial.input_sizes
        if degrees is None:
            degrees, sizes = initial.degree_seq, initial.size_seq
        Path(f"{base}.degrees.txt").write_text(
            "".join(f"{d}\n" for d in degrees), encoding="utf-8")
        Path(f"{base}.sizes.txt").write_text(
            "".join(f"{s} {c}\n" for s, c in sorted(sizes.items())),
            encoding="utf-8")
    for index, hg in enumerate(sample_from_initial(job, initial)):
        path = out_dir / f"sample_{index:05d}.txt"
        write_hypergraph(hg, path)
        logger.info("wrote %s (%d hyperedges)", path, hg.n_edges)
    return 0


def _write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _cmd_stats(args) -> int:
    params = load_params(args.params)
    hg = ingest_hypergraph(args.input, n_nodes=params.n_nodes)
    report = compute_stats_report(hg)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    adj = report.adjacency.tocoo()
    _write_csv(out_dir / "adjacency.csv", ("i", "j", "X_ij"),
               ((int(i), int(j), int(v)) for i, j, v in zip(adj.row, adj.col, adj.data)
                if i < j))
    _write_csv(out_dir / "inclusion_counts.csv", ("size", "count"),
               sorted(report.inclusion_counts.items()))
    _write_csv(out_dir / "dual_centrality.csv", ("hyperedge", "centrality"),
               enumerate(report.dual_centrality))
    _write_csv(out_dir / "subhypergraph_centrality.csv", ("node", "centrality"),
               enumerate(report.subhypergraph_centrality))
    _write_csv(
        out_dir / "community_mixing.csv",
        ("hyperedge", "entropy", "majority_ratio"),
        ((t, community_entropy(e, params.u), majority_ratio(e, params.u))
         for t, e in enumerate(hg.edges)),
    )
    summary = {
        "n_nodes": hg.n_nodes,
        "n_hyperedges": hg.n_edges,
        "degree_seq": report.degree_seq.tolist(),
        "size_seq": {str(s): c for s, c in sorted(report.size_seq.items())},
        "inclusion_counts": {str(s): c for s, c in sorted(report.inclusion_counts.items())},
    }
    (out_dir / "report.json").write_text(json.dumps(summary, indent=2),
                                         encoding="utf-8")
    logger.info("wrote statistics for %d hyperedges to %s", hg.n_edges, out_dir)
    return 0


def _cmd_expected_stats(args) -> int:
    params = load_params(args.params)
    counts = expected_size_counts(params)
    doc = {
        "mean_degree": expected_mean_degree(params),
        "per_node_degree": expected_degrees(params).tolist(),
        "sizes": sorted(counts),
        "per_size_mean_counts": [counts[s] for s in sorted(counts)],
    }
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def main(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("HYGEN_LOG", "INFO").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    if args.command == "sample":
        return _cmd_sample(args)
    if args.command == "stats":
        return _cmd_stats(args)
    return _cmd_expected_stats(args)


if __name__ == "__main__":
    raise SystemExit(main())
