from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from pathorder.common.helpers import DominanceError
from pathorder.measures import Coupling
from pathorder.orderlab import psi_functional_trace, run_preservation_trial, run_replication, violation_stat
from pathorder.segments import TimeGrid
from pathorder.simulate import ParticleCloud

GRID = TimeGrid(0, 0.5, 0.25, 0.25)


def cloud_of(diffs, steps_done=2):
    """ Cloud of one coordinate whose X - Xbar equals `diffs` (per particle) on [t0, t0 + steps_done * dt]. """
    diffs = np.asarray(diffs, dtype=float)
    x = np.zeros((diffs.shape[0], 1, GRID.K + 1))
    xbar = np.zeros_like(x)
    x[:, 0, GRID.L:GRID.L + diffs.shape[1]] = diffs
    return ParticleCloud(x, xbar, GRID, steps_done=steps_done)


class TestStatistics:

    def test_violation_stat(self):
        stats = violation_stat(cloud_of([[0., -1., -2.], [0., 0.5, -1.], [0.2, 0.1, 0.3]]))
        assert stats.tolist() == [0., 0.5, 0.3]

    def test_history_ignored(self):
        cloud = cloud_of([[0., 0., 0.]])
        cloud.x[:, :, :GRID.L] = 5.
        assert violation_stat(cloud).tolist() == [0.]

    def test_partial_run(self):
        cloud = cloud_of([[-1., 2., 0.]], steps_done=0)
        assert violation_stat(cloud).tolist() == [0.]

    def test_relabel_invariant(self, rng):
        x = rng.normal(size=(12, 2, GRID.K + 1))
        xbar = rng.normal(size=(12, 2, GRID.K + 1))
        perm = rng.permutation(12)
        stats = violation_stat(ParticleCloud(x, xbar, GRID, steps_done=2))
        relabelled = violation_stat(ParticleCloud(x[perm], xbar[perm], GRID, steps_done=2))
        assert np.array_equal(relabelled, stats[perm])
        assert sorted(relabelled) == sorted(stats)

    @pytest.mark.parametrize('shift', [-2.5, 0.75, 10.])
    def test_common_shift_invariant(self, rng, shift):
        x = rng.normal(size=(12, 2, GRID.K + 1))
        xbar = rng.normal(size=(12, 2, GRID.K + 1))
        stats = violation_stat(ParticleCloud(x, xbar, GRID, steps_done=2))
        shifted = violation_stat(ParticleCloud(x + shift, xbar + shift, GRID, steps_done=2))
        assert stats.max() > 0
        assert shifted == pytest.approx(stats, abs=1e-12)

    def test_psi_trace(self):
        trace = psi_functional_trace(cloud_of([[0., 1., -1.], [0., 0., 2.]]), 2)
        assert trace.shape == (3,)
        assert trace.tolist() == pytest.approx([0., 0.75 ** 2 / 2, (0.75 ** 2 + 1.75 ** 2) / 2])

    def test_psi_trace_ordered(self):
        assert not psi_functional_trace(cloud_of([[0., -1., -0.5]]), 10).any()


class TestPreservationTrial:

    def test_conforming(self, small_scenario):
        spec = small_scenario('s_plus')
        report = run_preservation_trial(spec)
        assert report.replications == 2
        assert report.violation_max <= spec.trial.tolerance
        assert report.violating_fraction == 0.
        assert [r['replication'] for r in report.per_replication] == [0, 1]
        assert report.psi_n == 10
        assert len(report.psi_trace) == spec.grid.n_steps + 1
        assert report.psi_trace[0][0] == spec.grid.t0
        assert report.runtime is None
        assert report.moment_max > 0

    def test_violating(self, small_scenario):
        report = run_preservation_trial(small_scenario('s_minus'))
        assert report.violating_fraction > 0
        assert report.violation_max > 1e-3
        assert report.psi_trace is None

    def test_psi_override(self, small_scenario):
        report = run_preservation_trial(small_scenario('s_minus', replications=1), psi_n=4, timings=True)
        assert report.psi_n == 4
        assert report.psi_trace[-1][1] > 0
        assert report.runtime >= 0

    def test_executor_invariant(self, small_scenario):
        spec = small_scenario('s_minus', N=16, replications=3)
        serial = run_preservation_trial(spec)
        with ThreadPoolExecutor(2) as executor:
            pooled = run_preservation_trial(spec, executor)
        assert pooled == serial

    def test_replication_streams(self, small_scenario):
        spec = small_scenario('s_minus', N=16)
        first = run_replication(spec, 0)
        assert np.array_equal(first.stats, run_replication(spec, 0).stats)
        assert not np.array_equal(first.stats, run_replication(spec, 1).stats)

    def test_unordered_initial(self, small_scenario):
        spec = small_scenario('s_plus')
        flipped = spec.replace(initial=Coupling(spec.initial.right, spec.initial.left))
        with pytest.raises(DominanceError):
            run_preservation_trial(flipped)
