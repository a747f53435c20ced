""" Batched evaluation of coefficient trees over stacks of segments.

All particles of a cloud are evaluated in one call: segment terminals read a column of the
:code:`(P, d, L + 1)` segment stack and law terminals are scalars shared by every row.
"""

import math
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np

from .nodes import BinOp, Func, Lag, MeanLag, MeanSupNorm, Neg, Node, Num, Time
from ..common.helpers import CoeffEvalError
from ..measures import EmpiricalMeasure, WeightedMeasure
from ..segments import batch_sup_norm

__all__ = ("LawMoments",
           "evaluate")


class LawMoments:
    """ Lazily computed moments of a law used by the :code:`E[...]` terminals.
    Means are accumulated with :func:`math.fsum` so they do not depend on the order of the atoms.

    Parameters
    ----------
    data
        Atoms, shape :code:`(N, d, L + 1)`.
    weights
        Atom weights. :obj:`None` for a uniform cloud.
    """

    __slots__ = ('data', 'weights', '_cache')

    def __init__(self, data: np.ndarray, weights: Optional[np.ndarray] = None):
        self.data = data
        self.weights = weights
        self._cache: Dict[Tuple, float] = {}

    @classmethod
    def of(cls, law: Union['LawMoments', EmpiricalMeasure, WeightedMeasure, np.ndarray, None]) -> 'LawMoments':
        if law is None or isinstance(law, LawMoments):
            return law
        if isinstance(law, WeightedMeasure):
            return cls(law.data, law.weights)
        if isinstance(law, EmpiricalMeasure):
            return cls(law.data)
        return cls(np.asarray(law, dtype=float))

    def _mean(self, values: np.ndarray) -> float:
        if self.weights is None:
            return math.fsum(values) / values.size
        return math.fsum(self.weights * values)

    def mean_lag(self, coordinate: int, column: int) -> float:
        """ Mean of the 0-based `coordinate` at segment `column`. """
        key = ('lag', coordinate, column)
        if key not in self._cache:
            self._cache[key] = self._mean(self.data[:, coordinate, column])
        return self._cache[key]

    def mean_supnorm(self) -> float:
        key = ('supnorm',)
        if key not in self._cache:
            self._cache[key] = self._mean(batch_sup_norm(self.data))
        return self._cache[key]


def _check(values: np.ndarray, what: str) -> np.ndarray:
    finite = np.isfinite(values)
    if not finite.all():
        raise CoeffEvalError(f"non-finite intermediate in {what}", int(np.argmin(finite)))
    return values


def _binop(node: BinOp, t: float, segs: np.ndarray, law: LawMoments) -> np.ndarray:
    left = evaluate(node.left, t, segs, law)
    right = evaluate(node.right, t, segs, law)
    if node.op == '+':
        out = left + right
    elif node.op == '-':
        out = left - right
    elif node.op == '*':
        out = left * right
    else:
        zero = right == 0
        if zero.any():
            raise CoeffEvalError("division by zero", int(np.argmax(zero)))
        out = left / right
    return _check(out, f"'{node.op}'")


def _func(node: Func, t: float, segs: np.ndarray, law: LawMoments) -> np.ndarray:
    args = [evaluate(a, t, segs, law) for a in node.args]
    if node.name == 'min':
        out = np.minimum(*args)
    elif node.name == 'max':
        out = np.maximum(*args)
    elif node.name == 'exp':
        out = np.exp(args[0])
    elif node.name == 'tanh':
        out = np.tanh(args[0])
    else:
        out = np.abs(args[0])
    return _check(out, f"{node.name}()")


def _mean_lag(node: MeanLag, t: float, segs: np.ndarray, law: LawMoments) -> np.ndarray:
    if law is None:
        raise CoeffEvalError("E[...] terminal evaluated without a law")
    return np.full(segs.shape[0], law.mean_lag(node.coordinate - 1, node.column))


def _mean_supnorm(node: MeanSupNorm, t: float, segs: np.ndarray, law: LawMoments) -> np.ndarray:
    if law is None:
        raise CoeffEvalError("E[supnorm] evaluated without a law")
    return np.full(segs.shape[0], law.mean_supnorm())


_HANDLERS: Dict[type, Callable[..., np.ndarray]] = {
    Num: lambda node, t, segs, law: np.full(segs.shape[0], float(node.value)),
    Time: lambda node, t, segs, law: np.full(segs.shape[0], float(t)),
    Lag: lambda node, t, segs, law: segs[:, node.coordinate - 1, node.column].astype(float),
    MeanLag: _mean_lag,
    MeanSupNorm: _mean_supnorm,
    Neg: lambda node, t, segs, law: -evaluate(node.operand, t, segs, law),
    BinOp: _binop,
    Func: _func,
}


def evaluate(node: Node, t: float, segs: np.ndarray, law: Optional[LawMoments]) -> np.ndarray:
    """ Evaluates `node` for every segment of the stack `segs` (:code:`(P, d, L + 1)`).

    Returns
    -------
    numpy.ndarray
        Values of shape :code:`(P,)`.

    Raises
    ------
    CoeffEvalError
        On division by zero or a non-finite intermediate. :attr:`~.CoeffEvalError.particle` names the first
        offending row.
    """
    with np.errstate(all='ignore'):
        return _HANDLERS[type(node)](node, t, segs, law)
