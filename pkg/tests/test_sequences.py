import itertools
import math

import numpy as np
import pytest

from hygen.expectations import SizeRange
from hygen.model import ModelParams, Normalization
from hygen.sequences import (
    clt_degree_moments,
    clt_size_moments,
    sample_degree_sequence,
    sample_size_sequence,
)


def brute_rate(edge, params):
    nodes = list(edge)
    lam = sum(
        float(params.u[nodes[a]] @ params.w @ params.u[nodes[b]])
        for a in range(len(nodes))
        for b in range(a + 1, len(nodes))
    )
    return lam / math.exp(params.log_kappa(len(edge)))


def random_params(rng, n_nodes=6, n_comm=2, max_size=4, scale=1.0):
    u = rng.random((n_nodes, n_comm)) * scale
    w = rng.random((n_comm, n_comm))
    w = (w + w.T) / 2
    return ModelParams(u, w, max_size)


class TestDegreeMoments:
    def test_zero_membership(self):
        params = ModelParams(np.zeros((5, 2)), np.eye(2), 3)
        mean, var = clt_degree_moments(params)
        assert np.all(mean == 0.0)
        assert np.all(var == 0.0)

    def test_matches_enumeration(self):
        rng = np.random.default_rng(61)
        params = random_params(rng)
        mean, var = clt_degree_moments(params)
        for i in range(6):
            brute = sum(
                brute_rate(e, params)
                for size in (2, 3, 4)
                for e in itertools.combinations(range(6), size)
                if i in e
            )
            assert mean[i] == pytest.approx(brute, rel=1e-9)
            assert var[i] == mean[i]

    def test_uniform_pairwise_closed_form(self):
        # every pair interacts with strength c, dyadic only, no normalization
        c = 0.3
        u = np.full((7, 1), math.sqrt(c))
        params = ModelParams(u, np.eye(1), 2, Normalization("unit"))
        mean, _ = clt_degree_moments(params)
        assert np.allclose(mean, (7 - 1) * c)


class TestSizeMoments:
    def test_uniform_interaction_closed_form(self):
        # with the default normalization the per-size count is
        # c * N * (N - 1) / (size * (size - 1))
        c, n = 0.8, 9
        u = np.full((n, 1), math.sqrt(c))
        params = ModelParams(u, np.eye(1), 4)
        moments = clt_size_moments(params)
        for size in (2, 3, 4):
            expected = c * n * (n - 1) / (size * (size - 1))
            assert moments[size][0] == pytest.approx(expected, rel=1e-9)

    def test_pairwise_count_is_pair_count(self):
        u = np.ones((10, 1))
        params = ModelParams(u, np.eye(1), 2)
        moments = clt_size_moments(params)
        assert moments[2][0] == pytest.approx(45.0)

    def test_zero_affinity(self):
        params = ModelParams(np.ones((6, 2)), np.zeros((2, 2)), 4)
        assert all(m == 0.0 for m, _ in clt_size_moments(params).values())

    def test_range_restriction(self):
        rng = np.random.default_rng(67)
        params = random_params(rng, max_size=5)
        moments = clt_size_moments(params, SizeRange(3, 5))
        assert sorted(moments) == [3, 4, 5]


class TestSampling:
    def test_degenerate_gaussian_is_deterministic(self):
        # zero variance collapses the draw onto the mean
        u = np.full((5, 1), math.sqrt(3.0 / 4.0))
        params = ModelParams(u, np.eye(1), 2, Normalization("unit"))
        mean, _ = clt_degree_moments(params)
        assert np.allclose(mean, 3.0)
        rng = np.random.default_rng(0)
        fake = ModelParams(np.zeros((5, 1)), np.eye(1), 2)
        assert np.all(sample_degree_sequence(fake, rng) == 0)

    def test_outputs_are_nonnegative_integers(self):
        rng = np.random.default_rng(71)
        params = random_params(rng, scale=0.3)
        for _ in range(20):
            d = sample_degree_sequence(params, rng)
            assert d.dtype == np.int64
            assert np.all(d >= 0)
            k = sample_size_sequence(params, rng)
            assert all(c >= 0 for c in k.values())

    def test_dyadic_only_size_keys(self):
        rng = np.random.default_rng(73)
        params = random_params(rng, max_size=2)
        assert sorted(sample_size_sequence(params, rng)) == [2]

    def test_sampler_self_consistency(self):
        # empirical mean over many draws stays within three standard errors
        rng = np.random.default_rng(79)
        params = random_params(rng, n_nodes=8, scale=1.5)
        mean, var = clt_degree_moments(params)
        n_draws = 10_000
        draws = np.stack([sample_degree_sequence(params, rng) for _ in range(n_draws)])
        for i in range(8):
            se = math.sqrt(var[i] / n_draws)
            # rounding adds at most 0.5 bias on top of the Monte Carlo error
            assert abs(draws[:, i].mean() - mean[i]) < 3 * se + 0.5

    def test_size_sampler_self_consistency(self):
        rng = np.random.default_rng(83)
        params = random_params(rng, n_nodes=10, scale=1.2)
        moments = clt_size_moments(params)
        n_draws = 10_000
        counts = np.array([sample_size_sequence(params, rng)[2] for _ in range(n_draws)])
        mean, var = moments[2]
        se = math.sqrt(var / n_draws)
        assert abs(counts.mean() - mean) < 3 * se + 0.5

    def test_deterministic_under_seed(self):
        rng_a = np.random.default_rng(97)
        rng_b = np.random.default_rng(97)
        params = random_params(np.random.default_rng(89))
        assert np.array_equal(
            sample_degree_sequence(params, rng_a),
            sample_degree_sequence(params, rng_b),
        )
        assert sample_size_sequence(params, rng_a) == sample_size_sequence(params, rng_b)


class TestSparseRegimeValidity:
    def test_moments_match_bernoulli_sums_within_one_percent(self):
        # when every existence probability is tiny, the first-order moments
        # agree with the exact sums of Bernoulli means
        rng = np.random.default_rng(101)
        u = rng.random((7, 2)) * 0.05
        w = rng.random((2, 2)) * 0.05
        w = (w + w.T) / 2
        params = ModelParams(u, w, 4)
        rates = {
            e: brute_rate(e, params)
            for size in (2, 3, 4)
            for e in itertools.combinations(range(7), size)
        }
        assert max(rates.values()) < 0.01
        mean, _ = clt_degree_moments(params)
        for i in range(7):
            exact = sum(-math.expm1(-r) for e, r in rates.items() if i in e)
            assert mean[i] == pytest.approx(exact, rel=0.01)
        moments = clt_size_moments(params)
        for size in (2, 3, 4):
            exact = sum(-math.expm1(-r) for e, r in rates.items() if len(e) == size)
            assert moments[size][0] == pytest.approx(exact, rel=0.01)
