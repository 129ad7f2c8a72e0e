import math

import numpy as np
import pytest
from pydantic import ValidationError

from cltscope_core.errors import InvalidInputError
from cltscope_core.settings import Settings
from cltscope_kit.dist_model import TwoPoint, FinitePMF, FinitePopulation, compute_moments
from cltscope_kit.case_studies import (
    SimConfig,
    MonteCarloSampler,
    block_generator,
    empirical_quantile,
    empirical_tail_fraction,
    empirical_quantile_band,
    simulate_standardized_means,
)
from cltscope_kit.case_studies.simulation import BLOCK_SIZE


def test_symmetric_coin_single_play_is_plus_or_minus_one():
    coin = TwoPoint(v1=-1.0, v2=1.0, p=0.5)
    sample = simulate_standardized_means(coin, SimConfig(n=1, replicates=1000, seed=1))
    assert sample.shape == (1000,)
    assert set(np.round(sample, 12).tolist()) == {-1.0, 1.0}


def test_standardized_mean_has_unit_scale(red_black):
    replicates = 50_000
    sample = simulate_standardized_means(
        red_black, SimConfig(n=20, replicates=replicates, seed=2024)
    )
    assert abs(sample.mean()) < 3 / math.sqrt(replicates)
    assert abs(sample.std() - 1.0) < 3 / math.sqrt(2 * replicates)


@pytest.mark.parametrize(
    "dist",
    [
        FinitePopulation(values=(1.0, 2.0, 2.0, 7.0)),
        FinitePMF(support=(0.0, 1.0, 5.0), probs=(0.5, 0.3, 0.2)),
    ],
    ids=["population", "pmf"],
)
def test_single_draws_land_on_standardized_support(dist):
    ms = compute_moments(dist)
    support, _ = dist.atoms()
    sample = simulate_standardized_means(dist, SimConfig(n=1, replicates=500, seed=3))
    allowed = (support - ms.mu) / ms.sigma
    assert np.all(np.min(np.abs(sample[:, None] - allowed[None, :]), axis=1) < 1e-12)


def test_sample_depends_on_seed_only(red_black):
    cfg = SimConfig(n=15, replicates=3 * BLOCK_SIZE + 17, seed=99)
    serial = MonteCarloSampler(red_black).sample(cfg)
    chunked = MonteCarloSampler(red_black, Settings(threads=1)).sample(
        cfg.model_copy(update={"parallel_chunks": 3})
    )
    threaded = MonteCarloSampler(red_black, Settings(threads=4)).sample(
        cfg.model_copy(update={"parallel_chunks": 4})
    )
    assert serial.size == cfg.replicates
    np.testing.assert_array_equal(serial, chunked)
    np.testing.assert_array_equal(serial, threaded)


def test_different_seeds_differ(red_black):
    first = simulate_standardized_means(red_black, SimConfig(n=5, replicates=100, seed=1))
    second = simulate_standardized_means(red_black, SimConfig(n=5, replicates=100, seed=2))
    assert not np.array_equal(first, second)


def test_block_generators_are_independent_streams():
    a = block_generator(5, 0).random(4)
    b = block_generator(5, 1).random(4)
    np.testing.assert_array_equal(a, block_generator(5, 0).random(4))
    assert not np.array_equal(a, b)


@pytest.mark.parametrize(
    "fields",
    [
        {"n": 0, "replicates": 10, "seed": 1},
        {"n": 1, "replicates": 0, "seed": 1},
        {"n": 1, "replicates": 10, "seed": -1},
        {"n": 1, "replicates": 10, "seed": 1, "parallel_chunks": 0},
    ],
)
def test_sim_config_validation(fields):
    with pytest.raises(ValidationError):
        SimConfig(**fields)


def test_empirical_quantile_is_left_continuous_inverse():
    sample = np.array([4.0, 1.0, 3.0, 2.0])
    assert empirical_quantile(sample, 0.5) == 2.0
    assert empirical_quantile(sample, 0.51) == 3.0
    assert empirical_quantile(sample, 0.01) == 1.0
    assert empirical_quantile(sample, 0.99) == 4.0


def test_tail_fraction():
    sample = np.array([-1.0, 0.0, 1.0, 2.0])
    assert empirical_tail_fraction(sample, 0.0) == 0.5
    assert empirical_tail_fraction(sample, 1e9) == 0.0


def test_quantile_band_of_normal_sample():
    sample = np.random.default_rng(3).standard_normal(200_000)
    band = empirical_quantile_band(sample, 0.9995)
    assert band.estimate == pytest.approx(3.291, abs=0.1)
    assert band.lower <= band.estimate <= band.upper


def test_empty_sample_is_rejected():
    empty = np.array([])
    with pytest.raises(InvalidInputError):
        empirical_quantile(empty, 0.5)
    with pytest.raises(InvalidInputError):
        empirical_tail_fraction(empty, 0.0)
    with pytest.raises(InvalidInputError):
        empirical_quantile_band(empty, 0.5)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1])
def test_quantile_level_must_be_open_unit(p):
    with pytest.raises(InvalidInputError):
        empirical_quantile(np.array([1.0, 2.0]), p)
