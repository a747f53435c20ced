""" Discrete path segments, trajectories, the componentwise order, the lattice meet and the uniform norm. """

from typing import Sequence, Union

import numpy as np

from .grid import TimeGrid
from ..common.helpers import DimensionError, GridError

__all__ = ("PathSegment",
           "Trajectory",
           "leq",
           "meet",
           "sup_norm",
           "segment_at",
           "batch_sup_norm",
           "batch_leq")


def _frozen(values, ndim: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True)
    if arr.ndim == ndim - 1:
        arr = arr[None, ...]
    if arr.ndim != ndim:
        raise DimensionError(f"{name} values must be a {ndim}-dimensional array, got shape {arr.shape}.")
    if arr.size == 0:
        raise DimensionError(f"{name} values may not be empty.")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} values must be finite.")
    arr.setflags(write=False)
    return arr


class PathSegment:
    """ Element of the path space on the lag grid: a :code:`d x (L + 1)` matrix.
    Column `j` holds the path at lag :math:`-r_0 + j\\,dt`; the last column is the current value. Instances are
    immutable.

    Parameters
    ----------
    values
        Matrix of shape :code:`(d, L + 1)`. A one-dimensional array is read as :code:`d = 1`.
    """

    __slots__ = ('_values',)

    def __init__(self, values: Union[np.ndarray, Sequence]):
        self._values = _frozen(values, 2, "Segment")

    @classmethod
    def constant(cls, value: Union[float, Sequence[float]], n_cols: int, dim: int = 1) -> 'PathSegment':
        """ Segment constant in time equal to `value` (a scalar or one value per coordinate). """
        value = np.broadcast_to(np.asarray(value, dtype=float).reshape(-1, 1), (dim, 1))
        return cls(np.repeat(value, n_cols, axis=1))

    @property
    def values(self) -> np.ndarray:
        """ Read-only :code:`(d, L + 1)` matrix. """
        return self._values

    @property
    def dim(self) -> int:
        return self._values.shape[0]

    @property
    def n_cols(self) -> int:
        return self._values.shape[1]

    @property
    def shape(self):
        return self._values.shape

    @property
    def current(self) -> np.ndarray:
        """ Value at lag zero. """
        return self._values[:, -1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PathSegment):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._values, other._values))

    __hash__ = None

    def __le__(self, other: 'PathSegment') -> bool:
        return leq(self, other)

    def __add__(self, other: 'PathSegment') -> 'PathSegment':
        _check_shapes(self, other)
        return PathSegment(self._values + other._values)

    def __sub__(self, other: 'PathSegment') -> 'PathSegment':
        _check_shapes(self, other)
        return PathSegment(self._values - other._values)

    def __mul__(self, scalar: float) -> 'PathSegment':
        return PathSegment(float(scalar) * self._values)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"PathSegment(dim={self.dim}, n_cols={self.n_cols})"

    def __getstate__(self):
        return self._values

    def __setstate__(self, state):
        self._values = state


class Trajectory:
    """ A path on the full grid :math:`[t_0 - r_0, T]`: a :code:`d x (K + 1)` matrix.

    Parameters
    ----------
    values
        Matrix of shape :code:`(d, grid.K + 1)`.
    grid
        :class:`.TimeGrid` on which the trajectory lives.
    """

    __slots__ = ('_values', 'grid')

    def __init__(self, values: Union[np.ndarray, Sequence], grid: TimeGrid):
        self._values = _frozen(values, 2, "Trajectory")
        if self._values.shape[1] != grid.K + 1:
            raise DimensionError(f"Trajectory has {self._values.shape[1]} columns; the grid requires {grid.K + 1}.")
        self.grid = grid

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def dim(self) -> int:
        return self._values.shape[0]

    def times(self) -> np.ndarray:
        return self.grid.times()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Trajectory):
            return NotImplemented
        return self.grid == other.grid and bool(np.array_equal(self._values, other._values))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Trajectory(dim={self.dim}, grid={self.grid!r})"


def _check_shapes(xi: PathSegment, eta: PathSegment):
    if xi.shape != eta.shape:
        raise DimensionError(f"Segment shapes differ: {xi.shape} vs {eta.shape}.")


def leq(xi: PathSegment, eta: PathSegment) -> bool:
    """ Componentwise order: :obj:`True` iff every entry of `xi` is at most the matching entry of `eta`.

    Examples
    --------
    >>> leq(PathSegment([[0., 0., 0.]]), PathSegment([[1., -0.5, 1.]]))
    False
    """
    _check_shapes(xi, eta)
    return bool(np.all(xi.values <= eta.values))


def meet(xi: PathSegment, eta: PathSegment) -> PathSegment:
    """ Entrywise minimum, the greatest lower bound of `xi` and `eta` under :func:`leq`. """
    _check_shapes(xi, eta)
    return PathSegment(np.minimum(xi.values, eta.values))


def batch_sup_norm(values: np.ndarray) -> np.ndarray:
    """ Uniform norm of a stack of segments of shape :code:`(..., d, n_cols)`: the largest Euclidean norm of any
    column.
    """
    values = np.asarray(values, dtype=float)
    if values.shape[-2] == 1:
        return np.abs(values[..., 0, :]).max(axis=-1)
    return np.sqrt(np.square(values).sum(axis=-2)).max(axis=-1)


def batch_leq(lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """ Pairwise order matrix between two stacks of segments.
    Entry ``[i, j]`` is :obj:`True` iff ``lower[i] <= upper[j]`` entrywise.
    """
    lower = np.asarray(lower)
    upper = np.asarray(upper)
    out = np.empty((len(lower), len(upper)), dtype=bool)
    flat_upper = upper.reshape(len(upper), -1)
    for i, atom in enumerate(lower.reshape(len(lower), -1)):
        out[i] = np.all(atom <= flat_upper, axis=1)
    return out


def sup_norm(xi: PathSegment) -> float:
    """ Uniform norm: the maximum over grid columns of the Euclidean norm of the column vector.

    Examples
    --------
    >>> sup_norm(PathSegment([[3.], [4.]]))
    5.0
    """
    return float(batch_sup_norm(xi.values))


def segment_at(traj: Trajectory, t: float) -> PathSegment:
    """ The segment of `traj` at time `t`: the :code:`L + 1` columns of the window :math:`[t - r_0, t]`.

    Raises
    ------
    GridError
        If `t` is off-grid, before `t0`, or the window leaves the trajectory's domain.
    """
    grid = traj.grid
    column = grid.column_of(t)
    if column < grid.L:
        raise GridError(f"Segment at t={t} starts before t0 - r0.")
    return PathSegment(traj.values[:, column - grid.L:column + 1])
