""" Contains code to support using both multiprocessing and threading for independent work units (probe chunks and
replications).
"""
import logging
import warnings
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from typing import Optional

__all__ = ("BACKENDS",
           "make_executor")

BACKENDS = ('threads', 'processes')


def make_executor(backend: str = 'threads', max_workers: int = 1) -> Optional[Executor]:
    """ Returns a pool of `max_workers` workers or :obj:`None` if a single worker is requested.

    Parameters
    ----------
    backend
        :code:`'threads'` or :code:`'processes'`. Unknown values fall back to :code:`'threads'` with a warning.
    max_workers
        Number of workers. Values below two give serial execution.

    Notes
    -----
    Work units submitted by pathorder carry their own seeds and results are merged in index order, so the worker
    count never changes numeric output.
    """
    logger = logging.getLogger('pathorder.core')
    if max_workers is None or max_workers < 2:
        return None
    if backend not in BACKENDS:
        logger.warning("Unable to parse backend '%s'. 'processes' or 'threads' expected. Defaulting to 'threads'.",
                       backend)
        warnings.warn(f"Unable to parse backend '{backend}'. 'processes' or 'threads' expected. "
                      f"Defaulting to 'threads'.", UserWarning)
        backend = 'threads'
    logger.debug("Starting %s pool with %d workers.", backend, max_workers)
    if backend == 'processes':
        return ProcessPoolExecutor(max_workers=max_workers)
    return ThreadPoolExecutor(max_workers=max_workers)
