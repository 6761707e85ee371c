import numpy as np
import pytest

from src.utils.splitmix import SplitMix64, derive_seed, mix64


def test_reference_outputs_for_seed_zero():
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert rng.next_u64() == 0x6E789E6AA1B965F4
    assert rng.next_u64() == 0x06C45D188009454F


def test_state_wraps_to_64_bits():
    rng = SplitMix64(-1)
    assert rng.state == (1 << 64) - 1
    assert 0 <= rng.next_u64() < (1 << 64)
    assert 0 <= mix64(1 << 70) < (1 << 64)


def test_uniform_stays_in_range():
    rng = SplitMix64(42)
    samples = [rng.uniform(-2.0, 3.0) for _ in range(500)]
    assert min(samples) >= -2.0 and max(samples) < 3.0
    assert 0.0 <= SplitMix64(1).uniform() < 1.0


def test_randint_includes_both_ends():
    rng = SplitMix64(5)
    seen = {rng.randint(2, 4) for _ in range(200)}
    assert seen == {2, 3, 4}
    with pytest.raises(ValueError):
        rng.randint(3, 2)


def test_permutation_and_choice():
    rng = SplitMix64(9)
    assert sorted(rng.permutation(7)) == list(range(7))
    assert rng.choice(["a"]) == "a"


def test_orthogonal_matrix():
    Q = SplitMix64(3).orthogonal(5)
    assert np.allclose(Q.T @ Q, np.eye(5), atol=1e-13)


def test_same_seed_same_stream():
    first, second = SplitMix64(123), SplitMix64(123)
    assert [first.next_u64() for _ in range(10)] == [second.next_u64() for _ in range(10)]
    assert np.array_equal(SplitMix64(8).normal_array((3, 2)), SplitMix64(8).normal_array((3, 2)))


def test_derive_seed_gives_distinct_streams():
    seeds = [derive_seed(20170429, index) for index in range(100)]
    assert len(set(seeds)) == 100
    assert derive_seed(1, 0) != derive_seed(2, 0)
    assert derive_seed(1, 3) == derive_seed(1, 3)
