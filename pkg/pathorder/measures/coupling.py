""" Couplings of two measures on path space, the monotone coupling of dominated measures and the mixture with a
designated ordered pair.
"""

import logging
import math
from typing import List, Sequence, Tuple, Union

import numpy as np

from .empirical import EmpiricalMeasure, WEIGHT_TOL, WeightedMeasure, _stack
from .transport import stochastic_leq
from ..common.helpers import DimensionError, DominanceError
from ..segments import PathSegment

__all__ = ("Coupling",
           "monotone_coupling",
           "mixture_coupling",
           "marginals")

logger = logging.getLogger('pathorder.measures')


class Coupling:
    """ Joint law on pairs of segments given as weighted atom pairs.

    Parameters
    ----------
    left
        Segments (or an :code:`(P, d, L + 1)` array) of the first component.
    right
        Segments of the second component, paired index by index with `left`.
    weights
        Positive weights summing to one within :data:`.WEIGHT_TOL`. Uniform if omitted.
    """

    __slots__ = ('_left', '_right', '_weights')

    def __init__(self,
                 left: Union[np.ndarray, Sequence[PathSegment]],
                 right: Union[np.ndarray, Sequence[PathSegment]],
                 weights: Union[Sequence[float], None] = None):
        self._left = _stack(left)
        self._right = _stack(right)
        if self._left.shape != self._right.shape:
            raise DimensionError(f"Left and right atoms must have equal shapes, got {self._left.shape} and "
                                 f"{self._right.shape}.")
        n = self._left.shape[0]
        if weights is None:
            weights = np.full(n, 1 / n)
        weights = np.array(weights, dtype=float, copy=True).reshape(-1)
        if weights.size != n:
            raise DimensionError(f"Got {weights.size} weights for {n} pairs.")
        if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
            raise ValueError("Coupling weights must be finite and strictly positive.")
        if abs(math.fsum(weights) - 1) > WEIGHT_TOL:
            raise ValueError(f"Coupling weights must sum to 1, got {math.fsum(weights)}.")
        weights.setflags(write=False)
        self._weights = weights

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[Tuple[PathSegment, PathSegment], float]]) -> 'Coupling':
        """ Builds a coupling from :code:`((xi, eta), weight)` tuples. """
        if not pairs:
            raise ValueError("A coupling needs at least one pair.")
        return cls([p[0][0] for p in pairs], [p[0][1] for p in pairs], [p[1] for p in pairs])

    @classmethod
    def dirac(cls, xi: PathSegment, eta: PathSegment) -> 'Coupling':
        return cls([xi], [eta], [1.])

    @classmethod
    def diagonal(cls, mu: EmpiricalMeasure) -> 'Coupling':
        return cls(mu.data, mu.data)

    @property
    def left(self) -> np.ndarray:
        return self._left

    @property
    def right(self) -> np.ndarray:
        return self._right

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def pairs(self) -> List[Tuple[Tuple[PathSegment, PathSegment], float]]:
        return [((PathSegment(a), PathSegment(b)), float(w))
                for a, b, w in zip(self._left, self._right, self._weights)]

    @property
    def shape(self):
        return self._left.shape[1:]

    def __len__(self) -> int:
        return self._left.shape[0]

    def is_ordered(self) -> bool:
        """ :obj:`True` if every pair satisfies :func:`.leq`. """
        return bool(np.all(self._left <= self._right))

    def unordered_pairs(self) -> List[int]:
        return np.flatnonzero(~np.all((self._left <= self._right).reshape(len(self), -1), axis=1)).tolist()

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """ Returns `n` i.i.d. pair indices drawn according to the weights. """
        return rng.choice(len(self), size=n, p=self._weights / self._weights.sum())

    def __repr__(self) -> str:
        return f"Coupling(pairs={len(self)}, shape={self.shape})"


def monotone_coupling(mu: EmpiricalMeasure, nu: EmpiricalMeasure) -> Coupling:
    """ Turns the dominance witness of :code:`mu <= nu` into a coupling carried by ordered pairs.

    Raises
    ------
    DominanceError
        If `mu` is not stochastically dominated by `nu`.
    """
    witness = stochastic_leq(mu, nu)
    if not witness.holds:
        raise DominanceError("monotone_coupling requires mu <= nu; no ordered perfect matching exists.")
    rows = [i for i, _ in witness.matching]
    cols = [j for _, j in witness.matching]
    return Coupling(mu.data[rows], nu.data[cols])


def mixture_coupling(pi0: Coupling, xi: PathSegment, eta: PathSegment, eps: float) -> Coupling:
    """ Returns :math:`(1 - \\varepsilon)\\pi_0 + \\varepsilon\\delta_{(\\xi, \\eta)}`.
    `pi0` itself is returned when `eps` is zero.
    """
    eps = float(eps)
    if not 0 <= eps < 1:
        raise ValueError(f"eps must lie in [0, 1), got {eps}.")
    if xi.shape != pi0.shape or eta.shape != pi0.shape:
        raise DimensionError(f"Designated pair must have shape {pi0.shape}, got {xi.shape} and {eta.shape}.")
    if eps == 0:
        return pi0
    left = np.concatenate([pi0.left, xi.values[None, ...]])
    right = np.concatenate([pi0.right, eta.values[None, ...]])
    weights = np.append((1 - eps) * pi0.weights, eps)
    logger.debug("Mixture coupling built with eps=%s over %d pairs.", eps, len(pi0))
    return Coupling(left, right, weights)


def marginals(pi: Coupling) -> Tuple[WeightedMeasure, WeightedMeasure]:
    """ Left and right marginals with the pair weights (duplicated atoms are not merged). """
    return WeightedMeasure(pi.left, pi.weights), WeightedMeasure(pi.right, pi.weights)
