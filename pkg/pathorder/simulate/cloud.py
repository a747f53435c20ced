""" Particle clouds of the coupled pair of systems. """

import logging
from typing import List, Optional, Tuple

import numpy as np

from ..common.helpers import DimensionError
from ..measures import Coupling, EmpiricalMeasure
from ..segments import PathSegment, TimeGrid, Trajectory

__all__ = ("ParticleCloud",
           "init_cloud",
           "INIT_STREAM")

INIT_STREAM = 1

logger = logging.getLogger('pathorder.simulate')


class ParticleCloud:
    """ `N` particles of both systems on a common grid.

    Parameters
    ----------
    x, xbar
        Arrays of shape :code:`(N, d, K + 1)`. Columns after the current step hold NaN.
    grid
        Shared :class:`.TimeGrid`.
    seed
        Seed of the run which produced the cloud.
    tags
        Optional boolean mask of particles started at a designated pair.

    Attributes
    ----------
    steps_done : int
        Number of completed Euler steps; both systems are defined on :math:`[t_0 - r_0, t_0 + k\\,dt]`.
    """

    def __init__(self, x: np.ndarray, xbar: np.ndarray, grid: TimeGrid, seed: int = 0,
                 tags: Optional[np.ndarray] = None, steps_done: int = 0):
        if x.shape != xbar.shape or x.ndim != 3 or x.shape[2] != grid.K + 1:
            raise DimensionError(f"Cloud arrays must share shape (N, d, {grid.K + 1}), got {x.shape} and "
                                 f"{xbar.shape}.")
        self.x = x
        self.xbar = xbar
        self.grid = grid
        self.seed = seed
        self.tags = tags
        self.steps_done = steps_done

    @property
    def N(self) -> int:
        return self.x.shape[0]

    @property
    def d(self) -> int:
        return self.x.shape[1]

    @property
    def complete(self) -> bool:
        return self.steps_done == self.grid.n_steps

    def window(self, k: int, system: str = 'X') -> np.ndarray:
        """ Segments of every particle at step `k`, shape :code:`(N, d, L + 1)` (a view). """
        if not 0 <= k <= self.steps_done:
            raise IndexError(f"Step {k} is not available; {self.steps_done} step(s) done.")
        values = self.x if system == 'X' else self.xbar
        return values[:, :, k:k + self.grid.L + 1]

    def law(self, k: int, system: str = 'X') -> EmpiricalMeasure:
        """ Empirical law of the segments at step `k`. """
        return EmpiricalMeasure(self.window(k, system))

    def trajectories(self, system: str = 'X') -> List[Trajectory]:
        if not self.complete:
            raise RuntimeError("Trajectories are only defined once the run is complete.")
        values = self.x if system == 'X' else self.xbar
        return [Trajectory(v, self.grid) for v in values]

    def initial_pair(self, p: int) -> Tuple[PathSegment, PathSegment]:
        return PathSegment(self.window(0, 'X')[p]), PathSegment(self.window(0, 'Xbar')[p])

    def moment_track(self) -> np.ndarray:
        """ Mean squared sup-norm of the segments of each system at every completed step, shape
        :code:`(steps_done + 1, 2)`.
        """
        L = self.grid.L
        track = np.empty((self.steps_done + 1, 2))
        for s, values in enumerate((self.x, self.xbar)):
            defined = values[:, :, :L + self.steps_done + 1]
            norms = _column_norms(defined)
            windows = np.lib.stride_tricks.sliding_window_view(norms, L + 1, axis=1).max(axis=-1)
            track[:, s] = np.mean(windows ** 2, axis=0)
        return track

    def __repr__(self) -> str:
        return f"ParticleCloud(N={self.N}, d={self.d}, steps_done={self.steps_done}, grid={self.grid!r})"


def _column_norms(values: np.ndarray) -> np.ndarray:
    """ Euclidean norm of every column, shape :code:`(N, n_cols)`. """
    if values.shape[1] == 1:
        return np.abs(values[:, 0, :])
    return np.sqrt(np.square(values).sum(axis=1))


def init_cloud(coupling: Coupling,
               N: int,
               seed: int,
               grid: TimeGrid,
               replication: int = 0,
               tag_pair: Optional[Tuple[PathSegment, PathSegment]] = None) -> ParticleCloud:
    """ Draws `N` i.i.d. initial pairs from `coupling` and writes them into the histories of both systems.

    Parameters
    ----------
    coupling
        Joint law of the initial segments.
    N
        Number of particles.
    seed, replication
        Select the initial draw stream; independent of the Brownian stream.
    grid
        Simulation grid; atoms must have :code:`L + 1` columns.
    tag_pair
        If given, particles whose drawn pair equals it bit for bit are tagged.

    Raises
    ------
    ValueError
        If the coupling is empty or `N` is smaller than one.
    DimensionError
        If the atoms do not have :code:`L + 1` columns.
    """
    if len(coupling) == 0:
        raise ValueError("Cannot initialise a cloud from an empty coupling.")
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}.")
    d, n_cols = coupling.shape
    if n_cols != grid.L + 1:
        raise DimensionError(f"Coupling atoms have {n_cols} columns; the grid requires {grid.L + 1}.")

    rng = np.random.default_rng(np.random.SeedSequence([int(seed), int(replication), INIT_STREAM]))
    idx = coupling.sample(N, rng)

    x = np.full((N, d, grid.K + 1), np.nan)
    xbar = np.full((N, d, grid.K + 1), np.nan)
    x[:, :, :grid.L + 1] = coupling.left[idx]
    xbar[:, :, :grid.L + 1] = coupling.right[idx]

    tags = None
    if tag_pair is not None:
        xi, eta = tag_pair
        tags = np.all(x[:, :, :grid.L + 1] == xi.values, axis=(1, 2)) & \
            np.all(xbar[:, :, :grid.L + 1] == eta.values, axis=(1, 2))
        logger.debug("%d of %d particles tagged.", int(tags.sum()), N)
    return ParticleCloud(x, xbar, grid, seed, tags)
