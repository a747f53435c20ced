import math

import numpy as np
import pytest

from pathorder.cli import scenario_from_dict
from pathorder.coeffs import CoeffModel
from pathorder.common.helpers import DominanceError, GridError, ProbeError
from pathorder.common.namedtuples import SimConfig
from pathorder.measures import Coupling, EmpiricalMeasure
from pathorder.orderlab import ScenarioSpec, build_necessity_scenario, drift_gap_probe
from pathorder.segments import PathSegment, TimeGrid

GRID = TimeGrid(0, 0.01, 0.001, 0.25)
N_COLS = GRID.L + 1


def const(value, d=1):
    return PathSegment.constant(value, N_COLS, d)


def cloud(*values):
    return EmpiricalMeasure([const(v) for v in values])


@pytest.fixture
def template():
    pair = (CoeffModel.from_sources(["x[1](0)"], [["1"]], 1, 1, GRID),
            CoeffModel.from_sources(["x[1](0) + 2"], [["1"]], 1, 1, GRID))
    return ScenarioSpec(GRID, pair, Coupling.dirac(const(0.), const(0.)), SimConfig(N=300, seed=1, m=1))


@pytest.fixture
def shift_spec(scenario_dict, input_files):
    data = scenario_dict('necessity_shift')
    data['sim']['N'] = 400
    return scenario_from_dict(data, input_files)


class TestBuildNecessityScenario:

    def test_mixture(self, template):
        spec = build_necessity_scenario(const(0.), const(0.), cloud(-1., 1.), cloud(2., 0.), 0.25, template,
                                        s_values=[0.002])
        assert len(spec.initial) == 3
        assert spec.initial.weights.tolist() == pytest.approx([0.375, 0.375, 0.25])
        assert spec.initial.is_ordered()
        assert spec.necessity.eps == 0.25
        assert spec.necessity.s_values == (0.002,)
        assert spec.initial_desc['type'] == 'necessity'
        assert spec.tag_pair[0] == const(0.)

    @pytest.mark.parametrize('xi, eta, mu, nu, eps, error', [
        (0., 0., (0.,), (1.,), 0., ValueError),
        (0., 0., (0.,), (1.,), 1., ValueError),
        (1., 0., (0.,), (1.,), 0.5, DominanceError),
        (0., 1., (0.,), (1.,), 0.5, ValueError),
        (0., 0., (1.,), (0.,), 0.5, DominanceError),
    ])
    def test_premises(self, template, xi, eta, mu, nu, eps, error):
        with pytest.raises(error):
            build_necessity_scenario(const(xi), const(eta), cloud(*mu), cloud(*nu), eps, template)

    def test_lag_zero_only(self, template):
        eta = PathSegment(np.concatenate([np.ones((1, N_COLS - 1)), np.zeros((1, 1))], axis=1))
        spec = build_necessity_scenario(const(0.), eta, cloud(0.), cloud(0.), 0.5, template)
        assert spec.tag_pair[1] == eta

    def test_coordinate_range(self, template):
        with pytest.raises(ValueError):
            build_necessity_scenario(const(0.), const(0.), cloud(0.), cloud(0.), 0.5, template, coordinate=2)


class TestDriftGapProbe:

    def test_constant_shift(self, shift_spec):
        report = drift_gap_probe(shift_spec)
        assert report.coordinate == 1
        assert [p.s for p in report.points] == [0.001, 0.002, 0.004]
        assert report.direct_gap == pytest.approx(1.)
        for point in report.points:
            assert point.gap == pytest.approx(1., abs=1e-9)
            assert point.g_mean == pytest.approx(math.expm1(5 * point.s), rel=1e-6)
            assert 0 < point.n_tagged < 400
        assert report.agrees

    def test_negative_gap(self, template):
        spec = build_necessity_scenario(const(0.), const(0.), cloud(-1., 0.), cloud(0., 1.), 0.5, template,
                                        s_values=[0.001, 0.003])
        report = drift_gap_probe(spec)
        assert report.direct_gap == pytest.approx(-2.)
        assert report.points[0].gap == pytest.approx(-2., abs=1e-9)
        assert report.points[0].g_mean is None
        assert report.agrees

    def test_overrides(self, shift_spec):
        report = drift_gap_probe(shift_spec, s_values=[0.003, 0.001], g_n=None)
        assert [p.s for p in report.points] == [0.001, 0.003]

    def test_deterministic(self, shift_spec):
        assert drift_gap_probe(shift_spec) == drift_gap_probe(shift_spec)

    @pytest.mark.parametrize('s', [0.0015, 0.02, 0., -0.001])
    def test_off_grid(self, shift_spec, s):
        with pytest.raises(GridError):
            drift_gap_probe(shift_spec, s_values=[s])

    def test_no_tagged(self, shift_spec):
        with pytest.raises(ProbeError):
            drift_gap_probe(shift_spec.replace(tag_pair=(const(5.), const(5.))))

    def test_not_necessity(self, template):
        with pytest.raises(ValueError):
            drift_gap_probe(template, s_values=[0.001])
