"""Exact-distribution samplers and the deterministic Monte Carlo driver."""

import math

import numpy as np
import pytest

from specrad import exact_cdf, samplers
from specrad.errors import WorkBudgetError
from specrad.norming import GinibreProduct, Spherical, TruncatedUnitary
from specrad.samplers import (
    RandomStream,
    SampleBatch,
    run_monte_carlo,
    sample_gamma,
    sample_product_log_radius,
    sample_spherical_radius,
    sample_truncated_radius,
)
from specrad.specfun import reg_inc_gamma_lower

from _util import ks_distance

EULER_GAMMA = 0.5772156649015329


class TestRandomStream:
    def test_same_pair_same_output(self):
        a = RandomStream(42, 7).generator.random(5)
        b = RandomStream(42, 7).generator.random(5)
        assert np.array_equal(a, b)

    def test_distinct_pairs_differ(self):
        a = RandomStream(42, 7).generator.random(5)
        b = RandomStream(42, 8).generator.random(5)
        c = RandomStream(43, 7).generator.random(5)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_u64_validation(self):
        with pytest.raises(ValueError):
            RandomStream(-1, 0)
        with pytest.raises(ValueError):
            RandomStream(0, 2**64)
        RandomStream(2**64 - 1, 0)  # top of range is fine


class TestSampleGamma:
    def test_mean_and_variance(self):
        rng = RandomStream(1, 0)
        draws = np.array([sample_gamma(7.0, rng) for _ in range(100_000)])
        assert abs(float(np.mean(draws)) - 7.0) <= 0.05
        assert abs(float(np.var(draws)) - 7.0) <= 0.3

    def test_cdf_against_incomplete_gamma(self):
        rng = RandomStream(2, 0)
        draws = np.array([sample_gamma(3.0, rng) for _ in range(20_000)])
        d = ks_distance(draws, lambda xs: np.array([reg_inc_gamma_lower(3.0, x) for x in xs]))
        assert d <= 0.015

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            sample_gamma(0.0, RandomStream(0, 0))


class TestSphericalSampler:
    def test_deterministic(self):
        r1 = sample_spherical_radius(50, RandomStream(9, 3))
        r2 = sample_spherical_radius(50, RandomStream(9, 3))
        assert r1 == r2

    def test_n1_median(self):
        draws = np.array(
            [sample_spherical_radius(1, RandomStream(3, i)) for i in range(20_000)]
        )
        # the n=1 cdf r^2/(1+r^2) has median exactly 1
        assert abs(float(np.median(draws)) - 1.0) <= 0.03

    def test_against_exact_cdf(self):
        batch = run_monte_carlo(Spherical(20), 20_000, master_seed=11)
        d = ks_distance(batch.statistics, exact_cdf.exact_cdf_fn(Spherical(20)))
        assert d <= 0.015


class TestTruncatedSampler:
    def test_n2_p1_is_uniform_square(self):
        draws = np.array(
            [sample_truncated_radius(2, 1, RandomStream(4, i)) for i in range(100_000)]
        )
        assert abs(float(np.mean(draws**2)) - 0.5) <= 0.01

    def test_support(self):
        draws = [sample_truncated_radius(7, 3, RandomStream(5, i)) for i in range(500)]
        assert all(0.0 <= r <= 1.0 for r in draws)

    def test_against_exact_cdf(self):
        batch = run_monte_carlo(TruncatedUnitary(60, 30), 20_000, master_seed=12)
        d = ks_distance(batch.statistics, exact_cdf.exact_cdf_fn(TruncatedUnitary(60, 30)))
        assert d <= 0.015

    def test_monotone_coupling_in_p(self):
        ps = [5, 10, 20, 39]
        for i in range(300):
            radii = samplers._truncated_radii_coupled(40, ps, RandomStream(21, i))
            assert all(radii[j] <= radii[j + 1] + 1e-15 for j in range(len(ps) - 1))


class TestProductSampler:
    def test_n1_k1_exponential(self):
        draws = np.array(
            [sample_product_log_radius(1, 1, RandomStream(6, i)) for i in range(100_000)]
        )
        # 2 log R = log Exp(1): P(R <= 1) = 1 - e^-1
        frac = float(np.mean(draws <= 0.0))
        assert abs(frac - (1.0 - math.exp(-1.0))) <= 0.005

    def test_n1_k3_mean(self):
        draws = np.array(
            [sample_product_log_radius(1, 3, RandomStream(8, i)) for i in range(100_000)]
        )
        assert abs(float(np.mean(2.0 * draws)) - (-3.0 * EULER_GAMMA)) <= 0.02

    def test_against_exact_cdf(self):
        batch = run_monte_carlo(GinibreProduct(10, 1), 20_000, master_seed=13)
        radii = np.exp(batch.statistics)
        d = ks_distance(radii, exact_cdf.exact_cdf_fn(GinibreProduct(10, 1)))
        assert d <= 0.015

    def test_k2_against_exact_cdf(self):
        batch = run_monte_carlo(GinibreProduct(8, 2), 20_000, master_seed=14)
        radii = np.exp(batch.statistics)
        d = ks_distance(radii, exact_cdf.exact_cdf_fn(GinibreProduct(8, 2)))
        assert d <= 0.015

    def test_block_size_invariance(self, monkeypatch):
        full = sample_product_log_radius(40, 5, RandomStream(15, 2))
        monkeypatch.setattr(samplers, "_PRODUCT_BLOCK_ELEMS", 64)
        blocked = sample_product_log_radius(40, 5, RandomStream(15, 2))
        assert full == blocked


class TestRunMonteCarlo:
    def test_worker_count_invariance(self):
        a = run_monte_carlo(Spherical(100), 1000, master_seed=7, workers=1)
        b = run_monte_carlo(Spherical(100), 1000, master_seed=7, workers=8)
        assert np.array_equal(a.statistics, b.statistics)

    def test_single_rep(self):
        batch = run_monte_carlo(Spherical(5), 1, master_seed=0)
        assert batch.reps == 1
        assert batch.statistics.shape == (1,)

    def test_replicate_indexing_gives_prefix_property(self):
        longer = run_monte_carlo(GinibreProduct(6, 2), 100, master_seed=3)
        shorter = run_monte_carlo(GinibreProduct(6, 2), 40, master_seed=3)
        assert np.array_equal(longer.statistics[:40], shorter.statistics)

    def test_truncated_support_at_scale(self):
        batch = run_monte_carlo(TruncatedUnitary(2000, 1000), 100_000, master_seed=42)
        assert np.all(batch.statistics >= 0.0)
        assert np.all(batch.statistics <= 1.0)

    def test_budget_enforced(self):
        with pytest.raises(WorkBudgetError) as exc:
            run_monte_carlo(GinibreProduct(1000, 1000), 10_000, master_seed=0)
        assert exc.value.required > exc.value.budget

    def test_budget_disabled(self):
        batch = run_monte_carlo(Spherical(3), 5, master_seed=0, budget=None)
        assert batch.reps == 5

    def test_batch_validation(self):
        with pytest.raises(ValueError):
            SampleBatch(
                spec=Spherical(3),
                statistics=np.array([1.0, math.nan]),
                seed=0,
                reps=2,
            )
        with pytest.raises(ValueError):
            SampleBatch(spec=Spherical(3), statistics=np.array([1.0]), seed=0, reps=2)
