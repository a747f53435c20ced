from concurrent.futures import ThreadPoolExecutor

import pytest

from pathorder.coeffs import CoeffModel
from pathorder.common.helpers import DimensionError
from pathorder.common.namedtuples import ProbeConfig
from pathorder.conditions import check_diffusion_structure, check_drift_order
from pathorder.conditions.probes import WITNESS_LIMIT
from pathorder.segments import TimeGrid

GRID = TimeGrid(0, 1, 0.25, 0.5)
CFG = ProbeConfig(num_probes=60, time_points=(0., 0.5), seed=11)


def model(drift, diffusion, d=1, m=1):
    return CoeffModel.from_sources(drift, diffusion, d, m, GRID)


class TestDriftOrder:

    @pytest.mark.parametrize('b, bbar', [
        ("-x[1](0) + x[1](-0.25)", "-x[1](0) + x[1](-0.25) + 1"),
        ("x[1](-0.5) - E[supnorm] * 0", "x[1](-0.5)"),
        ("tanh(E[x[1](-0.25)])", "tanh(E[x[1](-0.25)]) + t"),
        ("-x[1](0)", "-x[1](0)"),
    ])
    def test_ordered(self, b, bbar):
        assert check_drift_order(model([b], [["1"]]), model([bbar], [["1"]]), CFG) == []

    def test_lag_mismatch(self):
        violations = check_drift_order(model(["x[1](-0.25)"], [["1"]]), model(["x[1](-0.5)"], [["1"]]), CFG)
        assert violations
        assert all(v.kind == 'drift-order' and v.coordinate == 1 and v.column is None for v in violations)
        assert all(v.gap > CFG.tolerance for v in violations)
        assert [v.probe for v in violations] == sorted(v.probe for v in violations)

    def test_cross_coordinate_decreasing(self):
        b = model(["-x[2](0)", "0"], [["1"], ["1"]], d=2)
        violations = check_drift_order(b, b, CFG)
        assert {v.coordinate for v in violations} == {1}

    def test_witness_pruned(self):
        violations = check_drift_order(model(["1"], [["1"]]), model(["0"], [["1"]]), CFG)
        assert len(violations) == CFG.num_probes
        assert all('xi' in v.witness for v in violations[:WITNESS_LIMIT])
        assert all('xi' not in v.witness for v in violations[WITNESS_LIMIT:])
        assert all(v.witness['seed'] == CFG.seed for v in violations)
        assert isinstance(violations[0].witness['mu'], list)

    def test_executor_invariant(self):
        b, bbar = model(["x[1](-0.25)"], [["1"]]), model(["x[1](-0.5)"], [["1"]])
        with ThreadPoolExecutor(3) as executor:
            assert check_drift_order(b, bbar, CFG, executor) == check_drift_order(b, bbar, CFG)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            check_drift_order(model(["0"], [["1"]]), model(["0", "0"], [["1"], ["1"]], d=2), CFG)


class TestDiffusionStructure:

    @pytest.mark.parametrize('sigma', ["1", "x[1](0)", "0.3 * tanh(x[1](0)) + t"])
    def test_admissible(self, sigma):
        assert check_diffusion_structure(model(["0"], [[sigma]]), model(["1"], [[sigma]]), CFG) == []

    def test_inequal(self):
        violations = check_diffusion_structure(model(["0"], [["1"]]), model(["0"], [["2"]]), CFG)
        assert {v.kind for v in violations} == {'sigma-equality'}
        assert violations[0].gap == pytest.approx(1.)
        assert violations[0].column == 1

    @pytest.mark.parametrize('sigma', ["x[1](-0.25)", "E[x[1](0)]", "1 + 0 * E[supnorm] + x[1](-0.5)"])
    def test_history_dependence(self, sigma):
        violations = check_diffusion_structure(model(["0"], [[sigma]]), model(["0"], [[sigma]]), CFG)
        assert violations
        assert {v.kind for v in violations} == {'sigma-structure'}

    def test_other_coordinate(self):
        sigma = [["x[2](0)"], ["1"]]
        violations = check_diffusion_structure(model(["0", "0"], sigma, d=2), model(["0", "0"], sigma, d=2), CFG)
        assert {(v.coordinate, v.column) for v in violations} == {(1, 1)}

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            check_diffusion_structure(model(["0"], [["1"]]), model(["0"], [["1", "1"]], m=2), CFG)


VIOLATING_DRIFTS = [
    (["x[1](-0.25)"], ["x[1](-0.5)"], 1),
    (["-E[x[1](0)]"], ["-E[x[1](0)]"], 1),
    (["-max(x[1](-0.5) - 2, 0)"], ["-max(x[1](-0.5) - 2, 0)"], 1),
    (["-x[2](0)", "0"], ["-x[2](0)", "0"], 2),
]
VIOLATING_DIFFUSIONS = [[["x[1](-0.25)"]], [["E[x[1](0)]"]]]


def detection_rate(check, seeds):
    return sum(bool(check(ProbeConfig(num_probes=1000, seed=seed))) for seed in seeds) / len(seeds)


class TestCompleteness:

    def test_threshold_drift_violation(self):
        b = model(["-max(x[1](-0.5) - 2, 0)"], [["1"]])
        assert detection_rate(lambda cfg: check_drift_order(b, b, cfg), range(5)) == 1.

    @pytest.mark.acceptance
    @pytest.mark.parametrize('b, bbar, d', VIOLATING_DRIFTS)
    def test_drift_sweep(self, b, bbar, d):
        first, second = model(b, [["1"]] * d, d=d), model(bbar, [["1"]] * d, d=d)
        assert detection_rate(lambda cfg: check_drift_order(first, second, cfg), range(100)) >= 0.99

    @pytest.mark.acceptance
    @pytest.mark.parametrize('sigma', VIOLATING_DIFFUSIONS)
    def test_diffusion_sweep(self, sigma):
        both = model(["0"], sigma)
        assert detection_rate(lambda cfg: check_diffusion_structure(both, both, cfg), range(100)) >= 0.99
