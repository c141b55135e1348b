import numpy as np
import pytest

from biso.dto.channel_spec import load_channel
from biso.models.channel import (
    bec,
    bec_with_capacity,
    bsc,
    bsc_with_capacity,
    capacity,
    equalize_capacity,
    from_rows,
    match_capacities,
    random_channel,
)


# CHANNELS


@pytest.fixture(scope="function")
def bsc_011():
    return bsc(0.11)


@pytest.fixture(scope="function")
def bec_03():
    return bec(0.3)


@pytest.fixture(scope="function")
def ternary():
    return from_rows([0.6, 0.3, 0.1], [0.1, 0.3, 0.6], label="ternary")


@pytest.fixture(scope="function")
def counterexample_raw():
    return load_channel("@counterexample_a"), load_channel("@counterexample_b")


@pytest.fixture(scope="function")
def counterexample(counterexample_raw):
    a, b, _ = match_capacities(*counterexample_raw)
    return a, b


@pytest.fixture(scope="function")
def ternary_partners(ternary):
    c = capacity(ternary)
    return bec_with_capacity(c), bsc_with_capacity(c)


@pytest.fixture(scope="function")
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="function")
def equalized_pair():
    """Random channel pairs, the stronger one erased down to the common capacity."""

    def make(rng, n_pairs=None, zero=None):
        def one():
            n = int(rng.integers(1, 5)) if n_pairs is None else n_pairs
            z = bool(rng.random() < 0.5) if zero is None else zero
            return random_channel(rng, n_pairs=n, zero=z)

        ch1, ch2 = one(), one()
        c1, c2 = capacity(ch1), capacity(ch2)
        if c1 > c2:
            ch1 = equalize_capacity(ch1, c2, "erase")
        else:
            ch2 = equalize_capacity(ch2, c1, "erase")
        return ch1, ch2

    return make
