""" Parsed coefficient expressions and the drift/diffusion model of one system. """

import logging
from typing import Any, Dict, List, Optional, Sequence, Set, Union

import numpy as np

from .evaluate import LawMoments, evaluate
from .nodes import Lag, MeanLag, MeanSupNorm, Node, Time, depth, terminals, to_source
from .parser import parse
from ..common.helpers import DimensionError, sha256_of
from ..measures import EmpiricalMeasure, WeightedMeasure
from ..segments import PathSegment, TimeGrid

__all__ = ("CoeffExpr",
           "CoeffModel",
           "parse_coeff",
           "eval_coeff")


class CoeffExpr:
    """ An immutable parsed coefficient.

    Parameters
    ----------
    ast
        Expression tree.
    d
        Dimension the expression was validated against.
    grid
        Grid whose lags the expression references.
    source
        Text the tree was parsed from, if any.
    """

    __slots__ = ('ast', 'd', 'grid', 'source')

    def __init__(self, ast: Node, d: int, grid: TimeGrid, source: Optional[str] = None):
        self.ast = ast
        self.d = d
        self.grid = grid
        self.source = source if source is not None else to_source(ast)

    @property
    def canonical(self) -> str:
        """ Canonical printed form; parsing it yields an identical tree. """
        return to_source(self.ast)

    @property
    def depth(self) -> int:
        return depth(self.ast)

    @property
    def terminals(self) -> Set[Node]:
        return terminals(self.ast)

    @property
    def uses_law(self) -> bool:
        return any(isinstance(n, (MeanLag, MeanSupNorm)) for n in self.terminals)

    def only_current(self, coordinate: int) -> bool:
        """ :obj:`True` if the only segment-dependent terminal is the current value of 1-based `coordinate`
        (time terminals are allowed).
        """
        for node in self.terminals:
            if isinstance(node, Time):
                continue
            if not isinstance(node, Lag) or node.coordinate != coordinate or node.column != self.grid.L:
                return False
        return True

    def evaluate(self, t: float, segs: np.ndarray, law: Optional[LawMoments]) -> np.ndarray:
        return evaluate(self.ast, t, segs, law)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffExpr):
            return NotImplemented
        return self.ast == other.ast and self.d == other.d and self.grid == other.grid

    def __hash__(self):
        return hash((self.ast, self.d, self.grid))

    def __repr__(self) -> str:
        return f"CoeffExpr({self.canonical!r})"


def parse_coeff(src: str, d: int, grid: TimeGrid) -> CoeffExpr:
    """ Parses `src` into a :class:`CoeffExpr`.

    Raises
    ------
    CoeffSyntaxError
        With the 1-based offset and the reason (syntax, unknown identifier, lag not on grid, index out of range).

    Examples
    --------
    >>> grid = TimeGrid(0, 1, 0.25, 0.25)
    >>> parse_coeff("0.5*x[1](-0.25) + E[x[1](0)]", 1, grid).canonical
    '((0.5 * x[1](-0.25)) + E[x[1](0.0)])'
    """
    return CoeffExpr(parse(src, d, grid), d, grid, src)


def eval_coeff(expr: CoeffExpr,
               t: float,
               seg: PathSegment,
               law: Union[EmpiricalMeasure, WeightedMeasure, None]) -> float:
    """ Evaluates `expr` at one segment and one law. """
    if seg.dim != expr.d or seg.n_cols != expr.grid.L + 1:
        raise DimensionError(f"Segment shape {seg.shape} does not match ({expr.d}, {expr.grid.L + 1}).")
    moments = LawMoments.of(law)
    if moments is not None and moments.data.shape[1:] != seg.shape:
        raise DimensionError(f"Law atoms have shape {moments.data.shape[1:]}, segment has {seg.shape}.")
    return float(expr.evaluate(t, seg.values[None, ...], moments)[0])


class CoeffModel:
    """ Drift (`d` expressions) and diffusion (`d` x `m` expressions) of one system.

    Parameters
    ----------
    drift
        One expression per coordinate.
    diffusion
        `d` rows of `m` expressions.
    d
        State dimension.
    m
        Brownian dimension.
    grid
        Grid the expressions were parsed against.
    """

    def __init__(self,
                 drift: Sequence[CoeffExpr],
                 diffusion: Sequence[Sequence[CoeffExpr]],
                 d: int,
                 m: int,
                 grid: TimeGrid):
        self.logger = logging.getLogger('pathorder.coeffs')
        if d < 1 or m < 1:
            raise DimensionError(f"d and m must be at least 1, got d={d}, m={m}.")
        if len(drift) != d:
            raise DimensionError(f"Drift needs {d} expressions, got {len(drift)}.")
        if len(diffusion) != d or any(len(row) != m for row in diffusion):
            raise DimensionError(f"Diffusion needs {d} rows of {m} expressions.")
        for expr in [*drift, *(e for row in diffusion for e in row)]:
            if expr.d != d or expr.grid != grid:
                raise DimensionError(f"{expr!r} was not parsed against d={d} and {grid!r}.")
        self.drift = tuple(drift)
        self.diffusion = tuple(tuple(row) for row in diffusion)
        self.d = d
        self.m = m
        self.grid = grid

    @classmethod
    def from_sources(cls,
                     drift: Sequence[str],
                     diffusion: Sequence[Sequence[str]],
                     d: int,
                     m: int,
                     grid: TimeGrid) -> 'CoeffModel':
        """ Parses every source string. Row and column counts are checked by the constructor. """
        return cls([parse_coeff(s, d, grid) for s in drift],
                   [[parse_coeff(s, d, grid) for s in row] for row in diffusion],
                   d, m, grid)

    @property
    def uses_law(self) -> bool:
        return any(e.uses_law for e in self.expressions())

    def expressions(self) -> List[CoeffExpr]:
        return [*self.drift, *(e for row in self.diffusion for e in row)]

    def drift_values(self, t: float, segs: np.ndarray, law: Optional[LawMoments]) -> np.ndarray:
        """ Drift of every segment of the stack, shape :code:`(P, d)`. """
        return np.stack([e.evaluate(t, segs, law) for e in self.drift], axis=1)

    def diffusion_values(self, t: float, segs: np.ndarray, law: Optional[LawMoments]) -> np.ndarray:
        """ Diffusion matrix of every segment of the stack, shape :code:`(P, d, m)`. """
        return np.stack([np.stack([e.evaluate(t, segs, law) for e in row], axis=1) for row in self.diffusion],
                        axis=1)

    def sources(self) -> Dict[str, Any]:
        return {'drift': [e.canonical for e in self.drift],
                'diffusion': [[e.canonical for e in row] for row in self.diffusion]}

    def hash(self) -> str:
        """ SHA-256 of the dimensions and the canonical sources. """
        return sha256_of([f"d={self.d}", f"m={self.m}", *(e.canonical for e in self.expressions())])

    def to_dict(self) -> Dict[str, Any]:
        return {'d': self.d, 'm': self.m, **self.sources(), 'hash': self.hash()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffModel):
            return NotImplemented
        return (self.drift, self.diffusion, self.d, self.m, self.grid) == \
               (other.drift, other.diffusion, other.d, other.m, other.grid)

    __hash__ = None

    def __repr__(self) -> str:
        return f"CoeffModel(d={self.d}, m={self.m}, drift={[e.canonical for e in self.drift]})"

    def __getstate__(self):
        state = self.__dict__.copy()
        del state['logger']
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self.logger = logging.getLogger('pathorder.coeffs')
