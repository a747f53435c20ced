""" Deterministic random probes for the condition checkers.

Every probe owns a generator seeded from :code:`(seed, family, index)`, so a probe can be regenerated on its own and
results do not depend on how probes are split over workers.
"""

import math
from concurrent.futures import Executor
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..common.namedtuples import ProbeConfig
from ..segments import TimeGrid

__all__ = ("FAMILIES",
           "WITNESS_LIMIT",
           "probe_rng",
           "probe_time",
           "random_segments",
           "ordered_pair",
           "ordered_laws",
           "matched_pair",
           "run_chunked")

FAMILIES = {'drift-order': 0, 'sigma-equality': 1, 'sigma-structure': 2, 'meet': 3, 'lipschitz': 4}
WITNESS_LIMIT = 5


def probe_rng(seed: int, family: str, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), FAMILIES[family], int(index)]))


def probe_time(cfg: ProbeConfig, grid: TimeGrid, index: int, rng: np.random.Generator) -> float:
    """ Even probes cycle through :attr:`.ProbeConfig.time_points`; odd probes draw a uniform time in
    :math:`[t_0, T]`.
    """
    if index % 2 == 0 and cfg.time_points:
        return float(cfg.time_points[(index // 2) % len(cfg.time_points)])
    return float(rng.uniform(grid.t0, grid.T))


def random_segments(rng: np.random.Generator, n: int, d: int, n_cols: int, scale: float) -> np.ndarray:
    return scale * rng.standard_normal((n, d, n_cols))


def ordered_pair(rng: np.random.Generator,
                 d: int,
                 n_cols: int,
                 scale: float,
                 coordinate: int) -> Tuple[np.ndarray, np.ndarray]:
    """ Returns :math:`\\xi \\leq \\eta` with :math:`\\xi^i(0) = \\eta^i(0)` for the 0-based `coordinate`. """
    xi = random_segments(rng, 1, d, n_cols, scale)[0]
    eta = xi + np.abs(random_segments(rng, 1, d, n_cols, scale)[0])
    eta[coordinate, -1] = xi[coordinate, -1]
    return xi, eta


def ordered_laws(rng: np.random.Generator,
                 size: int,
                 d: int,
                 n_cols: int,
                 scale: float) -> Tuple[np.ndarray, np.ndarray]:
    """ Returns atom arrays of :math:`\\mu \\leq \\nu`: `nu` shifts every atom of `mu` upwards by a non-negative
    amount and is then shuffled.
    """
    mu = random_segments(rng, size, d, n_cols, scale)
    nu = mu + np.abs(random_segments(rng, size, d, n_cols, scale))
    return mu, nu[rng.permutation(size)]


def matched_pair(rng: np.random.Generator,
                 d: int,
                 n_cols: int,
                 scale: float,
                 coordinate: int) -> Tuple[np.ndarray, np.ndarray]:
    """ Independent segments sharing only the current value of the 0-based `coordinate`. """
    xi, eta = random_segments(rng, 2, d, n_cols, scale)
    eta[coordinate, -1] = xi[coordinate, -1]
    return xi, eta


def run_chunked(func: Callable[..., List],
                n: int,
                args: Sequence,
                executor: Optional[Executor] = None,
                n_chunks: Optional[int] = None) -> List:
    """ Calls :code:`func(indices, *args)` on contiguous chunks of :code:`range(n)` and concatenates the results in
    chunk order. Chunks run on `executor` if given.
    """
    if executor is None or n <= 1:
        return func(range(n), *args)
    n_chunks = n_chunks or min(n, 4 * max(1, getattr(executor, '_max_workers', 1)))
    size = math.ceil(n / n_chunks)
    chunks = [range(start, min(n, start + size)) for start in range(0, n, size)]
    futures = [executor.submit(func, chunk, *args) for chunk in chunks]
    results = []
    for future in futures:
        results.extend(future.result())
    return results
