""" Exact transport and dominance on empirical measures.

Wasserstein-2 distances use the shortest augmenting path assignment solver of :mod:`scipy.optimize`, dominance
uses Hopcroft-Karp maximum bipartite matching from :mod:`scipy.sparse.csgraph`, and dominance between weighted
measures is decided as a transportation feasibility problem solved with :func:`scipy.optimize.linprog`.
"""

import logging
import math
import warnings
from typing import Union

import numpy as np
from scipy.optimize import linear_sum_assignment, linprog
from scipy.sparse import coo_matrix, csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .empirical import EmpiricalMeasure, WeightedMeasure, as_weighted
from ..common.helpers import DimensionError, SolverCapError
from ..common.namedtuples import DominanceWitness
from ..segments import batch_leq

__all__ = ("EXACT_SOLVER_CAP",
           "MEET_PRODUCT_CAP",
           "cost_matrix",
           "w2",
           "stochastic_leq",
           "weighted_stochastic_leq",
           "meet_pushforward")

EXACT_SOLVER_CAP = 512
MEET_PRODUCT_CAP = 65_536

logger = logging.getLogger('pathorder.measures')


def _check_pair(mu: EmpiricalMeasure, nu: EmpiricalMeasure, equal_counts: bool = True):
    if mu.shape != nu.shape:
        raise DimensionError(f"Measures have atoms of different shapes: {mu.shape} vs {nu.shape}.")
    if equal_counts and mu.N != nu.N:
        raise DimensionError(f"Measures must have equal atom counts, got {mu.N} and {nu.N}.")


def cost_matrix(x: np.ndarray, y: np.ndarray, chunk_bytes: int = 64_000_000) -> np.ndarray:
    """ Squared uniform distances between every atom of `x` and every atom of `y`.
    Rows are computed in chunks so that the broadcast difference never exceeds about `chunk_bytes`.
    """
    n, m = x.shape[0], y.shape[0]
    per_row = max(1, m * y[0].size * 8)
    rows = max(1, chunk_bytes // per_row)
    cost = np.empty((n, m))
    for start in range(0, n, rows):
        diff = x[start:start + rows, None, ...] - y[None, ...]
        if diff.shape[-2] == 1:
            norm = np.abs(diff[..., 0, :]).max(axis=-1)
            cost[start:start + rows] = norm ** 2
        else:
            cost[start:start + rows] = np.square(diff).sum(axis=-2).max(axis=-1)
    return cost


def w2(mu: EmpiricalMeasure, nu: EmpiricalMeasure, cap: int = EXACT_SOLVER_CAP) -> float:
    """ Wasserstein-2 distance between two uniform clouds of equal size with uniform-norm ground cost.

    Parameters
    ----------
    mu, nu
        Clouds with the same atom count and atom shape.
    cap
        Largest atom count accepted. The exact solver is never replaced by an approximation.

    Raises
    ------
    DimensionError
        If atom counts or shapes differ.
    SolverCapError
        If the atom count exceeds `cap`.

    Examples
    --------
    >>> from pathorder.segments import PathSegment
    >>> w2(EmpiricalMeasure([PathSegment([[0., 0.]])]), EmpiricalMeasure([PathSegment([[1., -2.]])]))
    2.0
    """
    _check_pair(mu, nu)
    if mu.N > cap:
        raise SolverCapError(f"w2 refuses {mu.N} atoms; the exact solver cap is {cap}.")
    cost = cost_matrix(mu.data, nu.data)
    rows, cols = linear_sum_assignment(cost)
    return math.sqrt(math.fsum(cost[rows, cols]) / mu.N)


def stochastic_leq(mu: EmpiricalMeasure, nu: EmpiricalMeasure) -> DominanceWitness:
    """ Decides :math:`\\mu \\leq \\nu` in the stochastic order via a perfect matching on the graph with edge
    :code:`(i, j)` iff atom `i` of `mu` lies below atom `j` of `nu`.

    The identity matching is returned whenever it is admissible; otherwise the Hopcroft-Karp matching is used.
    Both are deterministic.

    Raises
    ------
    DimensionError
        If atom counts or shapes differ.
    """
    _check_pair(mu, nu)
    n = mu.N
    graph = batch_leq(mu.data, nu.data)
    if np.all(np.diag(graph)):
        return DominanceWitness(True, [(i, i) for i in range(n)])
    if not graph.any(axis=1).all() or not graph.any(axis=0).all():
        return DominanceWitness(False, None)

    match = maximum_bipartite_matching(csr_matrix(graph), perm_type='column')
    if np.any(match < 0):
        logger.debug("Dominance fails: maximum matching has size %d < %d.", int(np.sum(match >= 0)), n)
        return DominanceWitness(False, None)
    return DominanceWitness(True, [(i, int(j)) for i, j in enumerate(match)])


def weighted_stochastic_leq(p: Union[EmpiricalMeasure, WeightedMeasure],
                            q: Union[EmpiricalMeasure, WeightedMeasure],
                            tol: float = 1e-9) -> DominanceWitness:
    """ Dominance between weighted measures.
    Holds iff a transport plan from `p` to `q` exists which only moves mass along ordered pairs, i.e. the
    transportation polytope restricted to the domination graph is non-empty.
    """
    p, q = as_weighted(p), as_weighted(q)
    if p.shape != q.shape:
        raise DimensionError(f"Measures have atoms of different shapes: {p.shape} vs {q.shape}.")
    graph = batch_leq(p.data, q.data)
    if not graph.any(axis=1).all():
        return DominanceWitness(False, None)

    edge_i, edge_j = np.nonzero(graph)
    n_edges = edge_i.size
    n, m = p.N, q.N
    # One row per left atom (outflow) then one per right atom (inflow); the last is redundant.
    rows = np.concatenate([edge_i, n + edge_j])
    cols = np.concatenate([np.arange(n_edges), np.arange(n_edges)])
    a_eq = coo_matrix((np.ones(2 * n_edges), (rows, cols)), shape=(n + m, n_edges)).tocsr()[:-1]
    b_eq = np.concatenate([p.weights, q.weights])[:-1]

    result = linprog(np.zeros(n_edges), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method='highs')
    if result.status != 0:
        return DominanceWitness(False, None)
    residual = np.abs(a_eq @ result.x - b_eq).max(initial=0)
    return DominanceWitness(bool(residual <= tol), None)


def meet_pushforward(mu: Union[EmpiricalMeasure, WeightedMeasure],
                     nu: Union[EmpiricalMeasure, WeightedMeasure],
                     cap: int = MEET_PRODUCT_CAP,
                     seed: int = 0) -> WeightedMeasure:
    """ Law of :math:`\\xi \\wedge \\eta` under the product of `mu` and `nu`.

    The product has :code:`N * M` atoms. If this exceeds `cap`, `cap` pairs are drawn from the product with a
    generator seeded by `seed` and given equal weights; the seed is stored on the result as
    :attr:`.WeightedMeasure.subsample_seed`.
    """
    p, q = as_weighted(mu), as_weighted(nu)
    if p.shape != q.shape:
        raise DimensionError(f"Measures have atoms of different shapes: {p.shape} vs {q.shape}.")
    n, m = p.N, q.N
    if n * m <= cap:
        i, j = np.divmod(np.arange(n * m), m)
        return WeightedMeasure(np.minimum(p.data[i], q.data[j]), np.outer(p.weights, q.weights).reshape(-1))

    message = f"Meet pushforward of {n} x {m} atoms exceeds the cap of {cap}; subsampling with seed {seed}."
    logger.warning(message)
    warnings.warn(message, RuntimeWarning)
    rng = np.random.default_rng(seed)
    i = rng.choice(n, size=cap, p=p.weights / p.weights.sum())
    j = rng.choice(m, size=cap, p=q.weights / q.weights.sum())
    return WeightedMeasure(np.minimum(p.data[i], q.data[j]), np.full(cap, 1 / cap), subsample_seed=seed)
