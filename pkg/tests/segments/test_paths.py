import numpy as np
import pytest

from pathorder.common.helpers import DimensionError, GridError
from pathorder.segments import (PathSegment, TimeGrid, Trajectory, batch_leq, batch_sup_norm, leq, meet,
                                segment_at, sup_norm)


class TestPathSegment:

    def test_immutable(self):
        seg = PathSegment([[1., 2., 3.]])
        with pytest.raises(ValueError):
            seg.values[0, 0] = 5.

    def test_source_not_shared(self):
        arr = np.zeros((1, 3))
        seg = PathSegment(arr)
        arr[0, 0] = 1.
        assert seg.values[0, 0] == 0.

    def test_constant(self):
        seg = PathSegment.constant([1., 2.], 3, 2)
        assert seg.shape == (2, 3)
        assert np.all(seg.values[1] == 2.)
        assert np.all(seg.current == [1., 2.])

    def test_arithmetic(self):
        a = PathSegment([[1., 2.]])
        b = PathSegment([[0.5, 0.5]])
        assert a - b == PathSegment([[0.5, 1.5]])
        assert 2 * b == PathSegment([[1., 1.]])
        assert b <= a
        with pytest.raises(DimensionError):
            _ = a + PathSegment([[1., 2., 3.]])


class TestOrder:

    @pytest.mark.parametrize("xi, eta, expected", [([[0., 0.]], [[0., 0.]], True),
                                                   ([[0., 1.]], [[1., 1.]], True),
                                                   ([[0., 1.]], [[1., 0.99]], False)])
    def test_leq(self, xi, eta, expected):
        assert leq(PathSegment(xi), PathSegment(eta)) is expected

    def test_meet_is_greatest_lower_bound(self, rng):
        xi = PathSegment(rng.normal(size=(2, 4)))
        eta = PathSegment(rng.normal(size=(2, 4)))
        low = meet(xi, eta)
        assert low <= xi and low <= eta
        assert meet(xi, xi) == xi

    def test_leq_partial_order(self, rng):
        # Values in {0, 1} make ordered pairs and triples common
        segments = [PathSegment(rng.integers(0, 2, size=(1, 3)).astype(float)) for _ in range(12)]
        for a in segments:
            assert leq(a, a)
            for b in segments:
                if leq(a, b) and leq(b, a):
                    assert a == b
                for c in segments:
                    if leq(a, b) and leq(b, c):
                        assert leq(a, c)

    def test_leq_chain(self, rng):
        for _ in range(20):
            a = PathSegment(rng.normal(size=(2, 4)))
            b = a + PathSegment(np.abs(rng.normal(size=(2, 4))))
            c = b + PathSegment(np.abs(rng.normal(size=(2, 4))))
            assert leq(a, c)
            assert not leq(c, a) or a == c

    def test_meet_is_greatest(self, rng):
        for _ in range(20):
            xi = PathSegment(rng.normal(size=(2, 4)))
            eta = PathSegment(rng.normal(size=(2, 4)))
            low = meet(xi, eta)
            zeta = low - PathSegment(np.abs(rng.normal(size=(2, 4))) * rng.integers(0, 2, size=(2, 4)))
            assert leq(zeta, xi) and leq(zeta, eta)
            assert leq(zeta, low)
            assert meet(xi, eta) == meet(eta, xi)

        segments = [PathSegment(rng.integers(0, 3, size=(1, 2)).astype(float)) for _ in range(10)]
        for xi in segments:
            for eta in segments:
                low = meet(xi, eta)
                for zeta in segments:
                    if leq(zeta, xi) and leq(zeta, eta):
                        assert leq(zeta, low)

    def test_batch_leq(self):
        lower = np.array([[[0., 0.]], [[1., 1.]]])
        upper = np.array([[[0.5, 0.5]], [[2., 0.]]])
        assert batch_leq(lower, upper).tolist() == [[True, False], [False, False]]

    def test_sup_norm(self):
        assert sup_norm(PathSegment([[3., -5.], [4., 0.]])) == 5.
        assert np.allclose(batch_sup_norm(np.array([[[1., -2.]], [[0., 0.]]])), [2., 0.])

    @pytest.mark.parametrize("dim", [1, 3])
    def test_sup_norm_axioms(self, rng, dim):
        for _ in range(20):
            xi = PathSegment(rng.normal(size=(dim, 5)))
            eta = PathSegment(rng.normal(size=(dim, 5)))
            scale = rng.normal()
            assert sup_norm(xi * scale) == pytest.approx(abs(scale) * sup_norm(xi))
            assert sup_norm(xi + eta) <= sup_norm(xi) + sup_norm(eta) + 1e-12
            assert sup_norm(xi - xi) == 0.
            assert sup_norm(xi) > 0.


class TestTrajectory:

    def test_segment_at(self):
        grid = TimeGrid(0, 0.5, 0.25, 0.25)
        traj = Trajectory([[0., 1., 2., 3.]], grid)
        assert segment_at(traj, 0.) == PathSegment([[0., 1.]])
        assert segment_at(traj, 0.5) == PathSegment([[2., 3.]])
        with pytest.raises(GridError):
            segment_at(traj, -0.25)

    def test_segment_shift(self, rng):
        grid = TimeGrid(0, 1, 0.25, 0.5)
        traj = Trajectory(rng.normal(size=(2, grid.K + 1)), grid)
        for k in range(grid.n_steps):
            now = segment_at(traj, grid.step_time(k))
            later = segment_at(traj, grid.step_time(k + 1))
            assert np.array_equal(later.values[:, :-1], now.values[:, 1:])
            assert np.array_equal(later.current, traj.values[:, grid.L + k + 1])

    def test_wrong_length(self):
        with pytest.raises(DimensionError):
            Trajectory([[0., 1.]], TimeGrid(0, 0.5, 0.25, 0.25))
