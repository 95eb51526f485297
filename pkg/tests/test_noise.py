"""Noise distribution, sampling convergence, and subsampling weights."""

import numpy as np
import pytest

from wordassoc import Vocabulary, build_noise_distribution
from wordassoc.embed import kernels
from wordassoc.embed.noise import NoiseDistribution, keep_probabilities


def test_powered_probabilities_two_words():
    vocab = Vocabulary(["a", "b"], [3, 1], 1)
    dist = build_noise_distribution(vocab, power=0.75)
    # 3^0.75 / (3^0.75 + 1)
    assert dist.probabilities[0] == pytest.approx(0.6950761249684393, abs=1e-15)
    assert float(dist.probabilities.sum()) == pytest.approx(1.0, abs=1e-12)
    assert dist.cumulative[-1] == 1.0


def test_powered_probabilities_three_words():
    vocab = Vocabulary(["a", "b", "c"], [4, 1, 1], 1)
    dist = build_noise_distribution(vocab, power=0.75)
    np.testing.assert_allclose(
        dist.probabilities,
        [0.5857864376269051, 0.20710678118654754, 0.20710678118654754],
        rtol=0, atol=1e-15)


def test_power_zero_is_uniform():
    vocab = Vocabulary(["a", "b", "c", "d"], [40, 3, 2, 1], 1)
    dist = build_noise_distribution(vocab, power=0.0)
    np.testing.assert_allclose(dist.probabilities, 0.25, rtol=0, atol=0)


def test_negative_power_rejected():
    vocab = Vocabulary(["a", "b"], [3, 1], 1)
    with pytest.raises(ValueError):
        build_noise_distribution(vocab, power=-0.1)


def test_sample_id_boundaries():
    vocab = Vocabulary(["a", "b"], [1, 1], 1)
    dist = build_noise_distribution(vocab, power=1.0)
    assert dist.sample_id(0.0) == 0
    assert dist.sample_id(0.499999) == 0
    assert dist.sample_id(0.5) == 1
    assert dist.sample_id(0.999999) == 1


def test_noise_distribution_validation():
    bad = np.array([0.5, 0.4])
    with pytest.raises(ValueError):
        NoiseDistribution(probabilities=bad, cumulative=np.cumsum(bad))


def test_sampling_converges_to_probabilities():
    """Frequencies over 1e6 seeded draws sit within 3 sigma of p(w)."""
    counts = [900, 120, 40, 8, 5]
    vocab = Vocabulary(["a", "b", "c", "d", "e"], counts, 1)
    dist = build_noise_distribution(vocab, power=0.75)
    n = 1_000_000
    u = np.empty(n, np.float64)
    kernels.lcg_fill_uniform(u, np.uint64(12345))
    drawn = np.searchsorted(dist.cumulative, u, side="right")
    got = np.bincount(drawn, minlength=len(vocab))
    for i, p in enumerate(dist.probabilities):
        sigma = np.sqrt(n * p * (1 - p))
        assert abs(got[i] - n * p) < 3 * sigma, f"word {i}"


def test_keep_probabilities_disabled():
    counts = np.array([100, 10, 1])
    np.testing.assert_array_equal(keep_probabilities(counts, None), 1.0)
    np.testing.assert_array_equal(keep_probabilities(counts, 0), 1.0)


def test_keep_probabilities_formula():
    # single dominant word at corpus fraction 0.2, threshold 1e-3
    counts = np.array([200, 800])
    keep = keep_probabilities(counts, 1e-3)
    assert keep[0] == pytest.approx(0.07571067811865476, abs=1e-15)


def test_keep_probabilities_rare_words_capped_at_one():
    counts = np.array([1000, 2, 1])
    keep = keep_probabilities(counts, 1e-3)
    assert keep[0] < 1.0
    assert keep[1] == 1.0 and keep[2] == 1.0


def test_keep_probabilities_negative_threshold():
    with pytest.raises(ValueError):
        keep_probabilities(np.array([5, 5]), -1e-3)
