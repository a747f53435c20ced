import numpy as np
import pytest

from pathorder.simulate import NoisePlan


class TestNoisePlan:

    def test_shape(self):
        assert NoisePlan(1, 7, 3, 0.01).increments(0).shape == (7, 3)

    def test_reproducible(self):
        plan = NoisePlan(42, 16, 2, 0.01)
        assert np.array_equal(plan.increments(3), NoisePlan(42, 16, 2, 0.01).increments(3))

    def test_random_access(self):
        plan = NoisePlan(42, 8, 1, 0.01)
        forward = [plan.increments(k) for k in range(6)]
        assert np.array_equal(plan.increments(4), forward[4])
        assert not np.array_equal(forward[4], forward[5])

    @pytest.mark.parametrize('other', [dict(seed=43), dict(replication=1)])
    def test_independent_streams(self, other):
        kwargs = dict(seed=42, n_particles=8, m=1, dt=0.01, replication=0)
        base = NoisePlan(**kwargs).increments(0)
        kwargs.update(other)
        assert not np.array_equal(base, NoisePlan(**kwargs).increments(0))

    def test_variance(self):
        dw = NoisePlan(0, 20_000, 1, 0.04).increments(0)
        assert abs(dw.mean()) < 0.01
        assert dw.var() == pytest.approx(0.04, rel=0.05)

    @pytest.mark.parametrize('n', [6, 7])
    def test_antithetic(self, n):
        dw = NoisePlan(5, n, 2, 0.01, antithetic=True).increments(2)
        assert dw.shape == (n, 2)
        assert np.array_equal(dw[1::2], -dw[0:n - n % 2:2])

    def test_invalid(self):
        with pytest.raises(ValueError):
            NoisePlan(0, 0, 1, 0.1)
