""" Uniform and weighted empirical measures on the discrete path space, and increasing test functionals. """

import math
from typing import List, Optional, Sequence, Union

import numpy as np

from ..common.helpers import DimensionError
from ..segments import PathSegment, batch_sup_norm

__all__ = ("EmpiricalMeasure",
           "WeightedMeasure",
           "IncreasingFunctional",
           "sample_increasing_functional",
           "functional_mean",
           "as_weighted")

WEIGHT_TOL = 1e-12


def _stack(atoms: Union[np.ndarray, Sequence[PathSegment]]) -> np.ndarray:
    """ Returns a read-only :code:`(N, d, L + 1)` float array from segments or an array. """
    if isinstance(atoms, np.ndarray):
        arr = np.array(atoms, dtype=float, copy=True)
    else:
        atoms = list(atoms)
        if not atoms:
            raise ValueError("A measure needs at least one atom.")
        shapes = {a.shape for a in atoms}
        if len(shapes) > 1:
            raise DimensionError(f"Atoms of a measure must share one shape, got {sorted(shapes)}.")
        arr = np.stack([a.values for a in atoms]).astype(float)
    if arr.ndim != 3:
        raise DimensionError(f"Atom array must have shape (N, d, L + 1), got {arr.shape}.")
    if arr.shape[0] == 0:
        raise ValueError("A measure needs at least one atom.")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Atoms must have finite values.")
    arr.setflags(write=False)
    return arr


class EmpiricalMeasure:
    """ Uniform-weight cloud of `N` path segments.

    Parameters
    ----------
    atoms
        Either a sequence of :class:`.PathSegment` or an array of shape :code:`(N, d, L + 1)`.
    """

    __slots__ = ('_data',)

    def __init__(self, atoms: Union[np.ndarray, Sequence[PathSegment]]):
        self._data = _stack(atoms)

    @classmethod
    def dirac(cls, seg: PathSegment) -> 'EmpiricalMeasure':
        return cls(seg.values[None, ...])

    @property
    def data(self) -> np.ndarray:
        """ Read-only :code:`(N, d, L + 1)` array of the atoms. """
        return self._data

    @property
    def atoms(self) -> List[PathSegment]:
        return [PathSegment(a) for a in self._data]

    @property
    def N(self) -> int:
        return self._data.shape[0]

    @property
    def shape(self):
        """ Shape :code:`(d, L + 1)` shared by all atoms. """
        return self._data.shape[1:]

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.N, 1 / self.N)

    def __len__(self) -> int:
        return self.N

    def second_moment(self) -> float:
        """ Mean of the squared uniform norm of the atoms. """
        return math.fsum(batch_sup_norm(self._data) ** 2) / self.N

    def permuted(self, order: Sequence[int]) -> 'EmpiricalMeasure':
        return EmpiricalMeasure(self._data[np.asarray(order)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmpiricalMeasure):
            return NotImplemented
        return self._data.shape == other._data.shape and bool(np.array_equal(self._data, other._data))

    __hash__ = None

    def __repr__(self) -> str:
        return f"EmpiricalMeasure(N={self.N}, shape={self.shape})"


class WeightedMeasure:
    """ Finitely supported measure with positive weights summing to one.
    Produced by coupling marginals, mixtures and the meet pushforward. Supports sampling and moment queries but not
    distance queries.

    Parameters
    ----------
    atoms
        Segments or an array of shape :code:`(N, d, L + 1)`.
    weights
        Positive weights summing to one within :data:`WEIGHT_TOL`.

    Attributes
    ----------
    subsample_seed : Optional[int]
        Seed of the generator used to subsample the atoms, if the measure was built from a subsample.
    """

    __slots__ = ('_data', '_weights', 'subsample_seed')

    def __init__(self,
                 atoms: Union[np.ndarray, Sequence[PathSegment]],
                 weights: Sequence[float],
                 subsample_seed: Optional[int] = None):
        self._data = _stack(atoms)
        weights = np.array(weights, dtype=float, copy=True).reshape(-1)
        if weights.size != self._data.shape[0]:
            raise DimensionError(f"Got {weights.size} weights for {self._data.shape[0]} atoms.")
        if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
            raise ValueError("Weights must be finite and strictly positive.")
        if abs(math.fsum(weights) - 1) > WEIGHT_TOL:
            raise ValueError(f"Weights must sum to 1, got {math.fsum(weights)}.")
        weights.setflags(write=False)
        self._weights = weights
        self.subsample_seed = subsample_seed

    @classmethod
    def from_empirical(cls, mu: EmpiricalMeasure) -> 'WeightedMeasure':
        return cls(mu.data, mu.weights)

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def atoms(self) -> List[PathSegment]:
        return [PathSegment(a) for a in self._data]

    @property
    def N(self) -> int:
        return self._data.shape[0]

    @property
    def shape(self):
        return self._data.shape[1:]

    def __len__(self) -> int:
        return self.N

    def merged(self) -> 'WeightedMeasure':
        """ Aggregates bit-identical atoms, keeping the order of first occurrence. """
        flat = np.ascontiguousarray(self._data.reshape(self.N, -1))
        keys = [row.tobytes() for row in flat]
        first = {}
        totals = []
        for i, key in enumerate(keys):
            if key not in first:
                first[key] = len(totals)
                totals.append([i, [self._weights[i]]])
            else:
                totals[first[key]][1].append(self._weights[i])
        idx = [t[0] for t in totals]
        weights = [math.fsum(t[1]) for t in totals]
        return WeightedMeasure(self._data[idx], weights, self.subsample_seed)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """ Returns `n` i.i.d. atom indices drawn according to the weights. """
        return rng.choice(self.N, size=n, p=self._weights / self._weights.sum())

    def second_moment(self) -> float:
        return math.fsum(self._weights * batch_sup_norm(self._data) ** 2)

    def __repr__(self) -> str:
        return f"WeightedMeasure(N={self.N}, shape={self.shape})"


def as_weighted(measure: Union[EmpiricalMeasure, WeightedMeasure]) -> WeightedMeasure:
    if isinstance(measure, WeightedMeasure):
        return measure
    if isinstance(measure, EmpiricalMeasure):
        return WeightedMeasure.from_empirical(measure)
    raise TypeError(f"Cannot interpret {type(measure).__name__} as a measure.")


class IncreasingFunctional:
    """ Bounded increasing functional :math:`f(\\xi) = \\sum_k c_k \\tanh(\\xi^{i_k}(\\theta_{j_k}))` with
    :math:`c_k \\geq 0`.

    Parameters
    ----------
    coefficients
        Non-negative weights :math:`c_k`.
    coordinates
        0-based coordinate indices :math:`i_k`.
    columns
        Segment column indices :math:`j_k`.
    """

    def __init__(self, coefficients: Sequence[float], coordinates: Sequence[int], columns: Sequence[int]):
        self.coefficients = np.asarray(coefficients, dtype=float)
        self.coordinates = np.asarray(coordinates, dtype=int)
        self.columns = np.asarray(columns, dtype=int)
        if not self.coefficients.shape == self.coordinates.shape == self.columns.shape:
            raise DimensionError("Coefficients, coordinates and columns must have equal lengths.")
        if np.any(self.coefficients < 0):
            raise ValueError("Coefficients of an increasing functional must be non-negative.")

    def __call__(self, values: np.ndarray) -> np.ndarray:
        """ Evaluates the functional on a segment matrix or a stack of them (:code:`(..., d, L + 1)`). """
        values = np.asarray(values, dtype=float)
        terms = np.tanh(values[..., self.coordinates, self.columns])
        return (terms * self.coefficients).sum(axis=-1)

    def __repr__(self) -> str:
        return f"IncreasingFunctional(n_terms={self.coefficients.size})"


def sample_increasing_functional(shape: Sequence[int],
                                 rng: np.random.Generator,
                                 n_terms: int = 3) -> IncreasingFunctional:
    """ Draws a random :class:`IncreasingFunctional` for segments of `shape` :code:`(d, L + 1)`. """
    d, n_cols = shape
    return IncreasingFunctional(rng.uniform(0, 1, n_terms),
                                rng.integers(0, d, n_terms),
                                rng.integers(0, n_cols, n_terms))


def functional_mean(measure: Union[EmpiricalMeasure, WeightedMeasure], f: IncreasingFunctional) -> float:
    """ Integral of `f` against `measure`. """
    weighted = as_weighted(measure)
    return math.fsum(weighted.weights * f(weighted.data))
