import json

import numpy as np
import pytest

from hygen.cli import main
from hygen.io import ingest_hypergraph, save_params, write_hypergraph
from hygen.model import ModelParams


@pytest.fixture
def params_file(tmp_path):
    rng = np.random.default_rng(7)
    u = np.zeros((20, 2))
    u[np.arange(20), np.arange(20) % 2] = 1.0
    w = np.array([[2.0, 0.5], [0.5, 2.0]])
    save_params(ModelParams(u, w, 4), tmp_path / "params.json")
    return tmp_path / "params.json"


class TestExpectedStats:
    def test_emits_json(self, params_file, capsys):
        assert main(["expected-stats", "--params", str(params_file)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["per_node_degree"]) == 20
        assert doc["sizes"] == [2, 3, 4]
        assert doc["mean_degree"] == pytest.approx(np.mean(doc["per_node_degree"]))
        assert len(doc["per_size_mean_counts"]) == 3


class TestSample:
    def test_writes_samples_and_sequences(self, params_file, tmp_path):
        out = tmp_path / "out"
        code = main([
            "sample",
            "--params", str(params_file),
            "--samples", "2",
            "--seed", "11",
            "--burn-in", "200",
            "--intermediate-steps", "50",
            "--dump-sequences", str(tmp_path / "seq"),
            "--out", str(out),
        ])
        assert code == 0
        files = sorted(out.iterdir())
        assert [f.name for f in files] == ["sample_00000.txt", "sample_00001.txt"]
        degrees = (tmp_path / "seq.degrees.txt").read_text().split()
        assert len(degrees) == 20
        sizes = (tmp_path / "seq.sizes.txt").read_text().splitlines()
        assert all(len(line.split()) == 2 for line in sizes)

    def test_deterministic_across_runs(self, params_file, tmp_path):
        outs = []
        for name in ("a", "b"):
            out = tmp_path / name
            main([
                "sample", "--params", str(params_file), "--seed", "13",
                "--burn-in", "100", "--intermediate-steps", "20",
                "--out", str(out),
            ])
            outs.append((out / "sample_00000.txt").read_bytes())
        assert outs[0] == outs[1]

    def test_condition_on_data(self, params_file, tmp_path):
        data_path = tmp_path / "data.txt"
        (tmp_path / "out").mkdir()
        data_edges = [(0, 2), (1, 3), (0, 4, 6), (5, 7, 9)]
        from hygen.model import Hypergraph

        write_hypergraph(Hypergraph.from_edges(20, data_edges), data_path)
        code = main([
            "sample", "--params", str(params_file),
            "--condition-on", str(data_path),
            "--seed", "17", "--burn-in", "500", "--intermediate-steps", "100",
            "--out", str(tmp_path / "out"),
        ])
        assert code == 0
        sample = ingest_hypergraph(tmp_path / "out" / "sample_00000.txt", n_nodes=20)
        data = ingest_hypergraph(data_path, n_nodes=20)
        assert sample.degree_sequence().tolist() == data.degree_sequence().tolist()
        assert sample.size_sequence() == data.size_sequence()

    def test_conditioning_flags_conflict(self, params_file, tmp_path):
        (tmp_path / "d.txt").write_text("1\n" * 20)
        (tmp_path / "data.txt").write_text("1\t0 1\n")
        with pytest.raises(SystemExit):
            main([
                "sample", "--params", str(params_file),
                "--condition-on", str(tmp_path / "data.txt"),
                "--degree-seq", str(tmp_path / "d.txt"),
                "--out", str(tmp_path / "out"),
            ])

    def test_degree_seq_flag(self, params_file, tmp_path):
        degrees = [2] * 10 + [0] * 10
        (tmp_path / "d.txt").write_text("".join(f"{d}\n" for d in degrees))
        out = tmp_path / "out"
        main([
            "sample", "--params", str(params_file),
            "--degree-seq", str(tmp_path / "d.txt"),
            "--seed", "19", "--burn-in", "100", "--intermediate-steps", "10",
            "--out", str(out),
        ])
        hg = ingest_hypergraph(out / "sample_00000.txt", n_nodes=20)
        assert hg.degree_sequence().tolist() == degrees


class TestStats:
    def test_writes_report_and_csvs(self, params_file, tmp_path):
        from hygen.model import Hypergraph

        hg = Hypergraph.from_edges(20, [(0, 2), (0, 2, 4), (1, 3), (2, 4)], [2, 1, 1, 3])
        write_hypergraph(hg, tmp_path / "h.txt")
        out = tmp_path / "stats"
        code = main([
            "stats", "--input", str(tmp_path / "h.txt"),
            "--params", str(params_file), "--out", str(out),
        ])
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["n_hyperedges"] == 4
        assert report["size_seq"] == {"2": 3, "3": 1}
        # the size-3 hyperedge contains two of the size-2 hyperedges
        assert report["inclusion_counts"] == {"2": 2}
        for name in (
            "adjacency.csv",
            "inclusion_counts.csv",
            "dual_centrality.csv",
            "subhypergraph_centrality.csv",
            "community_mixing.csv",
        ):
            assert (out / name).exists()
        adjacency_rows = (out / "adjacency.csv").read_text().splitlines()
        assert adjacency_rows[0] == "i,j,X_ij"
        assert "0,2,3" in adjacency_rows  # weight 2 + 1 from the nested edge
