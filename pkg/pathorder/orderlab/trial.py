""" Order-preservation trials: per-particle violation statistics aggregated over seeded replications. """

import logging
import time
from concurrent.futures import Executor
from typing import List, Optional, Sequence

import numpy as np

from .psi import PsiFamily
from .scenario import ScenarioSpec
from ..common.namedtuples import ReplicationResult, TrialReport
from ..conditions.probes import run_chunked
from ..simulate import ParticleCloud, run

__all__ = ("violation_stat",
           "psi_functional_trace",
           "run_replication",
           "run_preservation_trial")

logger = logging.getLogger('pathorder.orderlab')


def _differences(cloud: ParticleCloud) -> np.ndarray:
    """ :math:`X - \\bar{X}` at the grid times in :math:`[t_0, t_0 + k\\,dt]`, shape :code:`(N, d, k + 1)`. """
    L = cloud.grid.L
    return cloud.x[:, :, L:L + cloud.steps_done + 1] - cloud.xbar[:, :, L:L + cloud.steps_done + 1]


def violation_stat(cloud: ParticleCloud) -> np.ndarray:
    """ Largest positive part of :math:`X^i(t) - \\bar{X}^i(t)` over coordinates and grid times :math:`t \\geq t_0`.

    Returns
    -------
    numpy.ndarray
        One non-negative value per particle, zero when the order held at every grid time.

    Examples
    --------
    >>> from pathorder.segments import TimeGrid
    >>> grid = TimeGrid(0, 0.5, 0.25, 0.25)
    >>> x = np.full((1, 1, 4), 2.)
    >>> violation_stat(ParticleCloud(x, x - 1, grid, steps_done=2))
    array([1.])
    """
    diff = _differences(cloud)
    return np.maximum(diff, 0).max(axis=(1, 2), initial=0.)


def psi_functional_trace(cloud: ParticleCloud, n: int) -> np.ndarray:
    """ :math:`\\max_i \\mathbb{E}\\sup_{t_0 \\leq r \\leq t}\\psi_n((X^i - \\bar{X}^i)(r))^2` at every completed
    grid time, estimated by the particle mean.
    """
    diff = _differences(cloud)
    running = np.maximum.accumulate(PsiFamily(n).value(diff), axis=2)
    return np.mean(running ** 2, axis=0).max(axis=0)


def run_replication(spec: ScenarioSpec, replication: int, psi_n: Optional[int] = None) -> ReplicationResult:
    """ Simulates replication `replication` of `spec` and reduces it to its statistics. """
    cloud = run(spec, replication)
    stats = violation_stat(cloud)
    trace = psi_functional_trace(cloud, psi_n) if psi_n else None
    moment_max = float(cloud.moment_track().max())
    logger.debug("Replication %d: max violation %.3e, moment max %.3e.", replication, stats.max(), moment_max)
    return ReplicationResult(replication, stats, trace, moment_max)


def _replication_chunk(indices: Sequence[int], spec: ScenarioSpec, psi_n: Optional[int]) -> List[ReplicationResult]:
    return [run_replication(spec, r, psi_n) for r in indices]


def run_preservation_trial(spec: ScenarioSpec,
                           executor: Optional[Executor] = None,
                           psi_n: Optional[int] = None,
                           timings: bool = False) -> TrialReport:
    """ Runs every replication of `spec` and aggregates the violation statistic.

    Parameters
    ----------
    spec
        Scenario whose initial coupling must be carried by ordered pairs.
    executor
        Optional pool on which replications run. Results are merged by replication index so the report does not
        depend on the pool.
    psi_n
        Smoothing index of the traced functional. Defaults to :code:`spec.trial.psi_n`; no trace if both are
        :obj:`None`.
    timings
        If :obj:`True` the wall time is recorded in :attr:`.TrialReport.runtime`.

    Raises
    ------
    DominanceError
        If some initial pair is not ordered.
    BlowUpError
        If any replication produces a non-finite state.
    """
    spec.require_ordered()
    psi_n = psi_n if psi_n is not None else spec.trial.psi_n
    tol = spec.trial.tolerance
    logger.info("Preservation trial: %d replication(s) of %d particles, %d steps.", spec.replications, spec.sim.N,
                spec.grid.n_steps)

    t_start = time.perf_counter()
    results = run_chunked(_replication_chunk, spec.replications, (spec, psi_n), executor)
    results.sort(key=lambda res: res.replication)

    per_replication = []
    for res in results:
        per_replication.append({'replication': res.replication,
                                'max': float(res.stats.max()),
                                'p95': float(np.percentile(res.stats, 95)),
                                'median': float(np.median(res.stats)),
                                'violating_fraction': float(np.mean(res.stats > tol))})
    pooled = np.concatenate([res.stats for res in results])

    trace = None
    if psi_n:
        mean_trace = np.mean([res.psi_trace for res in results], axis=0)
        times = spec.grid.times()[spec.grid.L:spec.grid.L + mean_trace.size]
        trace = [(float(t), float(v)) for t, v in zip(times, mean_trace)]

    report = TrialReport(replications=len(results),
                         violation_max=float(pooled.max()),
                         violation_p95=float(np.percentile(pooled, 95)),
                         violation_median=float(np.median(pooled)),
                         violating_fraction=float(np.mean(pooled > tol)),
                         per_replication=per_replication,
                         tolerance=tol,
                         moment_max=max(res.moment_max for res in results),
                         psi_n=psi_n,
                         psi_trace=trace,
                         runtime=time.perf_counter() - t_start if timings else None)
    logger.info("Trial finished: p95 %.3e, violating fraction %.4f.", report.violation_p95,
                report.violating_fraction)
    return report
