import numpy as np
import pytest

from wordassoc import Hyperparams, build_vocabulary

import synthgen


@pytest.fixture(scope="session")
def two_topic():
    """(slice, topic_a_words, topic_b_words), 400 pure-topic sentences."""
    return synthgen.two_topic_slice(seed=11)


@pytest.fixture(scope="session")
def two_topic_vocab(two_topic):
    slice_, _, _ = two_topic
    return build_vocabulary(slice_, min_count=5)


@pytest.fixture
def tiny_hp():
    # small everything so kernel-vs-reference runs stay fast
    return Hyperparams(dimension=8, window=2, epochs=2, negative=3,
                       min_count=1, buckets=64, seed=9)


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)
