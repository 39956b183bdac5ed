import numpy as np
import pytest

from hygen.expectations import rescale_affinity
from hygen.matching import sequences_of
from hygen.mcmc import MCMCConfig
from hygen.metrics import jaccard
from hygen.model import Hypergraph, ModelParams, Normalization, ZeroIntensityError
from hygen.pipeline import (
    EmptyConfigurationError,
    FixedBoth,
    FixedConfiguration,
    FixedDegrees,
    FixedSizes,
    SamplingJob,
    prepare_initial,
    sample,
    sample_conditioned_on_data,
)
from hygen.streams import stream


def community_params(n_nodes=30, n_comm=3, max_size=5, diag=1.0, off=0.3,
                     target_degree=None):
    u = np.zeros((n_nodes, n_comm))
    u[np.arange(n_nodes), np.arange(n_nodes) % n_comm] = 1.0
    w = np.full((n_comm, n_comm), off)
    np.fill_diagonal(w, diag)
    params = ModelParams(u, w, max_size)
    if target_degree is not None:
        params = rescale_affinity(params, target_degree)
    return params


class TestSamplingJob:
    def test_needs_at_least_one_sample(self):
        with pytest.raises(ValueError):
            SamplingJob(community_params(), n_samples=0)

    def test_exact_dyadic_conflicts_with_conditioning(self):
        with pytest.raises(ValueError):
            SamplingJob(
                community_params(),
                conditioning=FixedSizes({3: 2}),
                exact_dyadic=True,
            )

    def test_exact_dyadic_resolution(self):
        params = community_params()
        assert SamplingJob(params).effective_exact_dyadic is True
        assert SamplingJob(params, exact_dyadic=False).effective_exact_dyadic is False
        job = SamplingJob(params, conditioning=FixedSizes({3: 2}))
        assert job.effective_exact_dyadic is False


class TestPrepareInitial:
    def test_unconditioned_skips_dyadic_sizes(self):
        job = SamplingJob(community_params(target_degree=6.0), master_seed=3)
        initial = prepare_initial(job)
        assert all(len(e) >= 3 for e in initial.edges)
        assert sorted(initial.input_sizes) == [3, 4, 5]

    def test_fixed_sizes_reproduced(self):
        sizes = {2: 4, 3: 3}
        job = SamplingJob(
            community_params(target_degree=4.0),
            conditioning=FixedSizes(sizes),
            master_seed=5,
        )
        initial = prepare_initial(job)
        assert initial.size_seq == sizes

    def test_fixed_degrees_reproduced(self):
        degrees = tuple([2] * 10 + [0] * 20)
        job = SamplingJob(
            community_params(target_degree=4.0),
            conditioning=FixedDegrees(degrees),
            master_seed=7,
        )
        initial = prepare_initial(job)
        assert initial.degree_seq.tolist() == list(degrees)

    def test_fixed_both_compatible(self):
        edges = [(0, 1), (0, 2, 3), (4, 5)]
        d, k = sequences_of(edges, 30)
        job = SamplingJob(
            community_params(),
            conditioning=FixedBoth(tuple(d), k),
            master_seed=9,
        )
        initial = prepare_initial(job)
        assert initial.degree_seq.tolist() == d.tolist()
        assert initial.size_seq == k

    def test_fixed_configuration(self):
        edges = ((0, 1, 2), (3, 4))
        job = SamplingJob(
            community_params(),
            conditioning=FixedConfiguration(edges),
            master_seed=11,
        )
        initial = prepare_initial(job)
        assert initial.edges == edges
        assert initial.input_degrees is None

    def test_fixed_configuration_zero_intensity_rejected(self):
        params = community_params(diag=1.0, off=0.0)  # cross-community pairs die
        job = SamplingJob(
            params,
            conditioning=FixedConfiguration(((0, 1),)),  # communities 0 and 1
            master_seed=13,
        )
        with pytest.raises(ZeroIntensityError):
            prepare_initial(job)

    def test_empty_configuration_error(self):
        job = SamplingJob(
            community_params(),
            conditioning=FixedBoth(tuple([0] * 30), {3: 2}, priority="degree"),
            master_seed=15,
        )
        with pytest.raises(EmptyConfigurationError):
            prepare_initial(job)

    def test_degree_length_checked(self):
        job = SamplingJob(
            community_params(),
            conditioning=FixedDegrees((1, 1)),
            master_seed=17,
        )
        with pytest.raises(ValueError):
            prepare_initial(job)

    def test_oversized_hyperedge_rejected(self):
        job = SamplingJob(
            community_params(max_size=3),
            conditioning=FixedConfiguration(((0, 1, 2, 3),)),
        )
        with pytest.raises(ValueError):
            prepare_initial(job)


class TestSample:
    def test_deterministic_bitwise(self):
        params = community_params(target_degree=5.0)
        mcmc = MCMCConfig(n_burn_in=500, n_intermediate=100)
        runs = []
        for _ in range(2):
            job = SamplingJob(params, mcmc=mcmc, n_samples=2, master_seed=21)
            runs.append(list(sample(job)))
        assert runs[0] == runs[1]

    def test_prefix_stable_when_more_samples_requested(self):
        params = community_params(target_degree=5.0)
        mcmc = MCMCConfig(n_burn_in=200, n_intermediate=50)
        short = list(sample(SamplingJob(params, mcmc=mcmc, n_samples=2, master_seed=23)))
        long = list(sample(SamplingJob(params, mcmc=mcmc, n_samples=4, master_seed=23)))
        assert long[:2] == short

    def test_zero_affinity_dyadic_yields_empty_samples(self):
        params = ModelParams(np.ones((12, 2)), np.zeros((2, 2)), 4)
        job = SamplingJob(params, mcmc=MCMCConfig(n_burn_in=10, n_intermediate=5),
                          n_samples=2, master_seed=25)
        for hg in sample(job):
            assert hg.n_edges == 0

    def test_sequences_constant_across_stream(self):
        params = community_params(target_degree=6.0)
        job = SamplingJob(
            params,
            mcmc=MCMCConfig(n_burn_in=300, n_intermediate=200),
            n_samples=3,
            master_seed=27,
            exact_dyadic=False,
        )
        initial = prepare_initial(job)
        for hg in sample(job):
            assert hg.degree_sequence().tolist() == initial.degree_seq.tolist()
            assert hg.size_sequence() == initial.size_seq

    def test_dyadic_edges_fresh_per_sample(self):
        params = community_params(target_degree=6.0)
        job = SamplingJob(params, mcmc=MCMCConfig(n_burn_in=100, n_intermediate=50),
                          n_samples=2, master_seed=29)
        first, second = list(sample(job))
        pairs_a = {e for e in first.edges if len(e) == 2}
        pairs_b = {e for e in second.edges if len(e) == 2}
        assert pairs_a != pairs_b

    def test_mcmc_zero_steps_keeps_start_state(self):
        edges = ((0, 1), (2, 3), (4, 5, 6))
        job = SamplingJob(
            community_params(),
            mcmc=MCMCConfig(n_burn_in=0, n_intermediate=0),
            conditioning=FixedConfiguration(edges),
            master_seed=31,
        )
        (hg,) = list(sample(job))
        assert hg.edges == edges


class TestConditionOnData:
    def _dataset(self, params, seed=33):
        job = SamplingJob(params, mcmc=MCMCConfig(n_burn_in=500, n_intermediate=100),
                          master_seed=seed, exact_dyadic=False)
        (hg,) = list(sample(job))
        return hg

    def test_sequences_match_dataset(self):
        params = community_params(target_degree=6.0)
        data = self._dataset(params)
        job = SamplingJob(params, mcmc=MCMCConfig(n_burn_in=2000, n_intermediate=500),
                          n_samples=2, master_seed=35)
        for hg in sample_conditioned_on_data(job, data):
            assert hg.degree_sequence().tolist() == data.degree_sequence().tolist()
            assert hg.size_sequence() == data.size_sequence()

    def test_chain_moves_away_from_data(self):
        params = community_params(n_nodes=60, target_degree=6.0)
        data = self._dataset(params, seed=37)
        job = SamplingJob(params, mcmc=MCMCConfig(n_burn_in=5000, n_intermediate=1000),
                          n_samples=1, master_seed=39)
        (hg,) = list(sample_conditioned_on_data(job, data))
        assert jaccard(hg, data) < 1.0

    def test_node_count_guard(self):
        params = community_params(n_nodes=10)
        big = Hypergraph.from_edges(11, [(0, 10)])
        with pytest.raises(ValueError):
            sample_conditioned_on_data(SamplingJob(params), big)

    def test_explicit_dyadic_rejected(self):
        params = community_params()
        data = Hypergraph.from_edges(30, [(0, 3)])
        job = SamplingJob(params, exact_dyadic=True)
        with pytest.raises(ValueError):
            sample_conditioned_on_data(job, data)


class TestStreams:
    def test_streams_are_stable(self):
        a = stream(99, "mcmc").random(4)
        b = stream(99, "mcmc").random(4)
        assert np.array_equal(a, b)

    def test_streams_differ_by_stage_and_index(self):
        base = stream(99, "mcmc").random(4)
        assert not np.array_equal(base, stream(99, "weights").random(4))
        assert not np.array_equal(base, stream(99, "mcmc", 1).random(4))
        assert not np.array_equal(base, stream(100, "mcmc").random(4))

    def test_seed_bounds(self):
        with pytest.raises(ValueError):
            stream(-1, "mcmc")
        with pytest.raises(ValueError):
            stream(2 ** 64, "mcmc")
