""" Uniform time grid shared by segments, trajectories and the particle simulation. """

import logging
import math
import warnings
from typing import Any, Dict

import numpy as np

from ..common.helpers import GridError, on_grid_index

__all__ = ("TimeGrid",)


class TimeGrid:
    """ Uniform grid on :math:`[t_0 - r_0, T]` with step `dt`.

    The delay horizon `r0` and the end time `T` are rounded up to the nearest multiple of `dt` (beyond `t0`) so that
    window arithmetic is exact. Any adjustment is logged and raised as a :class:`UserWarning`.

    Parameters
    ----------
    t0
        Start time.
    T
        End time, strictly larger than `t0`.
    dt
        Step size, strictly positive.
    r0
        Delay horizon, non-negative.

    Attributes
    ----------
    L : int
        Number of lag steps; segments carry :code:`L + 1` columns.
    n_steps : int
        Number of Euler steps between `t0` and `T`.
    r0_requested : float
        Delay horizon before rounding.
    T_requested : float
        End time before rounding.
    """

    __slots__ = ('t0', 'T', 'dt', 'r0', 'L', 'n_steps', 'r0_requested', 'T_requested')

    def __init__(self, t0: float, T: float, dt: float, r0: float):
        logger = logging.getLogger('pathorder.segments')
        t0, T, dt, r0 = float(t0), float(T), float(dt), float(r0)
        if not all(math.isfinite(v) for v in (t0, T, dt, r0)):
            raise GridError("Grid parameters must be finite.")
        if dt <= 0:
            raise GridError(f"dt must be strictly positive, got {dt}.")
        if T <= t0:
            raise GridError(f"T must be larger than t0, got t0={t0}, T={T}.")
        if r0 < 0:
            raise GridError(f"r0 must be non-negative, got {r0}.")

        lag_steps = on_grid_index(r0, dt)
        if lag_steps is None:
            lag_steps = int(math.ceil(r0 / dt))
            message = f"r0={r0} is not a multiple of dt={dt}; rounded up to {lag_steps * dt}."
            logger.warning(message)
            warnings.warn(message, UserWarning)

        n_steps = on_grid_index(T - t0, dt)
        if n_steps is None:
            n_steps = int(math.ceil((T - t0) / dt))
            message = f"T - t0 = {T - t0} is not a multiple of dt={dt}; T rounded up to {t0 + n_steps * dt}."
            logger.warning(message)
            warnings.warn(message, UserWarning)

        self.t0 = t0
        self.dt = dt
        self.L = lag_steps
        self.n_steps = n_steps
        self.r0 = lag_steps * dt
        self.T = t0 + n_steps * dt
        self.r0_requested = r0
        self.T_requested = T

    @property
    def adjusted(self) -> bool:
        """ :obj:`True` if `r0` or `T` were rounded at construction. """
        return self.r0 != self.r0_requested or self.T != self.T_requested

    @property
    def K(self) -> int:
        """ Index of the last column of a trajectory; trajectories carry :code:`K + 1` columns. """
        return self.L + self.n_steps

    def time(self, column: int) -> float:
        """ Time of trajectory column `column` (column `L` is `t0`). """
        return self.t0 + (column - self.L) * self.dt

    def step_time(self, k: int) -> float:
        """ Time after `k` Euler steps. """
        return self.t0 + k * self.dt

    def times(self) -> np.ndarray:
        """ Times of all trajectory columns. """
        return self.t0 + (np.arange(self.K + 1) - self.L) * self.dt

    def lags(self) -> np.ndarray:
        """ Lags :math:`\\theta \\in [-r_0, 0]` of the segment columns. """
        return (np.arange(self.L + 1) - self.L) * self.dt

    def column_of(self, t: float) -> int:
        """ Returns the trajectory column of time `t`.

        Raises
        ------
        GridError
            If `t` is not a grid time or lies outside :math:`[t_0 - r_0, T]`.
        """
        k = on_grid_index(t - self.t0, self.dt)
        if k is None:
            raise GridError(f"Time {t} is not on the grid (t0={self.t0}, dt={self.dt}).")
        column = k + self.L
        if not 0 <= column <= self.K:
            raise GridError(f"Time {t} lies outside [{self.t0 - self.r0}, {self.T}].")
        return column

    def lag_index(self, theta: float) -> int:
        """ Returns the segment column of lag `theta`.

        Raises
        ------
        GridError
            If `theta` is not a multiple of `dt` or lies outside :math:`[-r_0, 0]`.
        """
        k = on_grid_index(theta, self.dt)
        if k is None:
            raise GridError(f"lag not on grid: {theta} is not a multiple of dt={self.dt}.")
        if not -self.L <= k <= 0:
            raise GridError(f"lag {theta} outside [-{self.r0}, 0].")
        return k + self.L

    def to_dict(self) -> Dict[str, Any]:
        data = {'t0': self.t0, 'T': self.T, 'dt': self.dt, 'r0': self.r0, 'L': self.L}
        if self.adjusted:
            data.update(r0_requested=self.r0_requested, T_requested=self.T_requested)
        return data

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimeGrid):
            return NotImplemented
        return (self.t0, self.T, self.dt, self.L) == (other.t0, other.T, other.dt, other.L)

    def __hash__(self):
        return hash((self.t0, self.T, self.dt, self.L))

    def __repr__(self) -> str:
        return f"TimeGrid(t0={self.t0}, T={self.T}, dt={self.dt}, r0={self.r0})"

    def __getstate__(self):
        return {k: getattr(self, k) for k in self.__slots__}

    def __setstate__(self, state):
        for k, v in state.items():
            object.__setattr__(self, k, v)
