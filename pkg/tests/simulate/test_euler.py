import numpy as np
import pytest

from pathorder.coeffs import CoeffModel
from pathorder.common.helpers import BlowUpError, DimensionError
from pathorder.common.namedtuples import SimConfig
from pathorder.measures import Coupling
from pathorder.segments import PathSegment, TimeGrid
from pathorder.simulate import NoisePlan, euler_step, init_cloud, simulate_pair

GRID = TimeGrid(0, 1, 0.125, 0.25)
SIM = SimConfig(N=16, seed=9, m=1)


def model(b, sigma="1", grid=GRID):
    return CoeffModel.from_sources([b], [[sigma]], 1, 1, grid)


def dirac(value=1., other=None):
    other = value if other is None else other
    return Coupling.dirac(PathSegment(np.full((1, GRID.L + 1), value)),
                          PathSegment(np.full((1, GRID.L + 1), other)))


class TestEuler:

    def test_shared_noise(self):
        models = model("-x[1](0) + x[1](-0.25)", "1 + 0.5 * tanh(x[1](0))")
        cloud = simulate_pair(GRID, (models, models), dirac(), SIM)
        assert cloud.complete
        assert np.array_equal(cloud.x, cloud.xbar)

    def test_reproducible(self):
        pair = model("E[x[1](0)] - x[1](0)"), model("1")
        first = simulate_pair(GRID, pair, dirac(0., 1.), SIM)
        again = simulate_pair(GRID, pair, dirac(0., 1.), SIM)
        assert np.array_equal(first.x, again.x)
        assert np.array_equal(first.xbar, again.xbar)

    def test_pure_noise(self):
        cloud = simulate_pair(GRID, (model("0"), model("0")), dirac(0.), SIM)
        noise = NoisePlan(SIM.seed, SIM.N, 1, GRID.dt)
        total = sum(noise.increments(k) for k in range(GRID.n_steps))
        assert cloud.x[:, 0, -1] == pytest.approx(total[:, 0], abs=1e-12)

    def test_mean_field_decay(self):
        cloud = simulate_pair(GRID, (model("-E[x[1](0)]", "0"), model("0", "0")), dirac(1.), SIM)
        assert cloud.x[:, 0, -1] == pytest.approx((1 - GRID.dt) ** GRID.n_steps)
        assert np.all(cloud.xbar[:, 0, GRID.L:] == 1.)

    def test_delay(self):
        cloud = simulate_pair(GRID, (model("x[1](-0.25)", "0"), model("0", "0")), dirac(1.), SIM)
        # lagged value read from the constant history up to t = 0.25
        assert cloud.x[0, 0, GRID.L:GRID.L + 4] == pytest.approx([1., 1.125, 1.25, 1.375])
        assert cloud.x[0, 0, GRID.L + 4] == pytest.approx(1.375 + 0.125 * 1.125)

    def test_blow_up(self):
        with pytest.raises(BlowUpError) as e:
            simulate_pair(GRID, (model("0"), model("1 / (x[1](0) - 1)")), dirac(1.), SIM)
        assert (e.value.particle, e.value.step, e.value.system) == (0, 0, 'Xbar')

    def test_overflow(self):
        with pytest.raises(BlowUpError) as e:
            simulate_pair(GRID, (model("exp(exp(x[1](0)))", "0"), model("0")), dirac(10.), SIM)
        assert e.value.system == 'X'

    def test_step_order(self):
        cloud = init_cloud(dirac(), 4, 0, GRID)
        noise = NoisePlan(0, 4, 1, GRID.dt)
        with pytest.raises(ValueError):
            euler_step(cloud, 1, (model("0"), model("0")), noise)
        euler_step(cloud, 0, (model("0"), model("0")), noise)
        assert cloud.steps_done == 1
        assert not np.isnan(cloud.window(1)).any()

    def test_grid_mismatch(self):
        other = model("0", grid=TimeGrid(0, 2, 0.125, 0.25))
        with pytest.raises(DimensionError):
            simulate_pair(GRID, (other, other), dirac(), SIM)

    def test_brownian_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            simulate_pair(GRID, (model("0"), model("0")), dirac(), SIM._replace(m=2))
