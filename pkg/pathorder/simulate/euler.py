""" Interacting particle Euler-Maruyama scheme for the coupled pair of systems. """

import logging
import time
from typing import Any, Tuple

import numpy as np

from .cloud import ParticleCloud, init_cloud
from .noise import NoisePlan
from ..coeffs import CoeffModel, LawMoments
from ..common.helpers import BlowUpError, CoeffEvalError, DimensionError
from ..common.namedtuples import SimConfig
from ..measures import Coupling
from ..segments import TimeGrid

__all__ = ("euler_step",
           "simulate_pair",
           "run")

logger = logging.getLogger('pathorder.simulate')


def _advance(model: CoeffModel, t: float, segs: np.ndarray, law: LawMoments, dt: float, dw: np.ndarray,
             k: int, system: str) -> np.ndarray:
    try:
        drift = model.drift_values(t, segs, law)
        diffusion = model.diffusion_values(t, segs, law)
    except CoeffEvalError as e:
        raise BlowUpError(e.particle, k, system) from e
    with np.errstate(all='ignore'):
        new = segs[:, :, -1] + drift * dt + (diffusion @ dw[:, :, None])[:, :, 0]
    finite = np.isfinite(new).all(axis=1)
    if not finite.all():
        raise BlowUpError(int(np.argmin(finite)), k, system)
    return new


def euler_step(cloud: ParticleCloud, k: int, models: Tuple[CoeffModel, CoeffModel], noise: NoisePlan):
    """ Advances both systems from step `k` to :code:`k + 1`.

    The empirical laws of the X and X-bar segments at step `k` are computed once, before any particle moves, and
    every particle of both systems then uses the same increment :math:`\\Delta W_{p,k}`:

    .. math::

        X_p(t_{k+1}) = X_p(t_k) + b(t_k, X_{p,t_k}, \\mu_k)\\,dt + \\sigma(t_k, X_{p,t_k}, \\mu_k)\\,\\Delta W_{p,k}

    Raises
    ------
    BlowUpError
        If any new state (or intermediate coefficient value) is not finite. Nothing is clamped.
    """
    if k != cloud.steps_done:
        raise ValueError(f"Cloud is at step {cloud.steps_done}, cannot take step {k}.")
    grid = cloud.grid
    t = grid.step_time(k)
    segs_x = cloud.window(k, 'X')
    segs_xbar = cloud.window(k, 'Xbar')
    law_x = LawMoments(segs_x)
    law_xbar = LawMoments(segs_xbar)
    dw = noise.increments(k)

    new_x = _advance(models[0], t, segs_x, law_x, grid.dt, dw, k, 'X')
    new_xbar = _advance(models[1], t, segs_xbar, law_xbar, grid.dt, dw, k, 'Xbar')

    column = grid.L + k + 1
    cloud.x[:, :, column] = new_x
    cloud.xbar[:, :, column] = new_xbar
    cloud.steps_done = k + 1


def _check_models(models: Tuple[CoeffModel, CoeffModel], grid: TimeGrid, coupling: Coupling, m: int):
    for model in models:
        if model.grid != grid:
            raise DimensionError(f"Model grid {model.grid!r} differs from simulation grid {grid!r}.")
        if model.m != m:
            raise DimensionError(f"Model Brownian dimension {model.m} differs from the simulation's {m}.")
        if model.d != coupling.shape[0]:
            raise DimensionError(f"Model dimension {model.d} differs from the initial law's {coupling.shape[0]}.")


def simulate_pair(grid: TimeGrid,
                  models: Tuple[CoeffModel, CoeffModel],
                  initial: Coupling,
                  sim: SimConfig,
                  replication: int = 0,
                  tag_pair=None) -> ParticleCloud:
    """ Initialises a cloud from `initial` and integrates both systems up to `T`.
    Results are bit-identical for identical arguments.
    """
    _check_models(models, grid, initial, sim.m)
    cloud = init_cloud(initial, sim.N, sim.seed, grid, replication, tag_pair)
    noise = NoisePlan(sim.seed, sim.N, sim.m, grid.dt, replication, sim.antithetic)
    t_start = time.perf_counter()
    for k in range(grid.n_steps):
        euler_step(cloud, k, models, noise)
        if logger.isEnabledFor(logging.DEBUG) and (k + 1) % max(1, grid.n_steps // 10) == 0:
            logger.debug("Replication %d: step %d/%d.", replication, k + 1, grid.n_steps)
    logger.info("Replication %d of %d particles finished %d steps in %.3fs.", replication, sim.N, grid.n_steps,
                time.perf_counter() - t_start)
    return cloud


def run(spec: Any, replication: int = 0) -> ParticleCloud:
    """ Simulates a scenario.

    Parameters
    ----------
    spec
        A :class:`.ScenarioSpec` (anything with `grid`, `models`, `initial`, `sim` and optionally `tag_pair`).
    replication
        Replication index; replication `r` uses streams keyed by :code:`(seed, r)`.
    """
    return simulate_pair(spec.grid, spec.models, spec.initial, spec.sim, replication,
                         getattr(spec, 'tag_pair', None))
