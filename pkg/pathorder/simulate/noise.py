""" Counter-based Brownian increments. """

import math

import numpy as np

__all__ = ("NoisePlan",)


class NoisePlan:
    """ Deterministic map from :code:`(seed, replication, step, particle)` to an `m`-vector of increments
    :math:`\\Delta W \\sim \\mathcal{N}(0, dt\\,I_m)`.

    Each step reads its own block of a Philox stream keyed by :code:`(seed, replication)` with the step index in the
    counter, so any step can be generated on its own and in any order. Both systems of a particle use the same
    increment.

    Parameters
    ----------
    seed
        Root seed of the run.
    n_particles
        Number of particles `N`.
    m
        Brownian dimension.
    dt
        Step size.
    replication
        Replication index, giving independent streams for independent replications.
    antithetic
        If :obj:`True`, particle :code:`2q + 1` receives the negated increment of particle :code:`2q`.
    """

    __slots__ = ('seed', 'n_particles', 'm', 'dt', 'replication', 'antithetic', '_key', '_sqrt_dt')

    def __init__(self, seed: int, n_particles: int, m: int, dt: float, replication: int = 0,
                 antithetic: bool = False):
        if n_particles < 1 or m < 1:
            raise ValueError(f"Need at least one particle and one Brownian dimension, got N={n_particles}, m={m}.")
        self.seed = int(seed)
        self.n_particles = int(n_particles)
        self.m = int(m)
        self.dt = float(dt)
        self.replication = int(replication)
        self.antithetic = bool(antithetic)
        self._key = np.random.SeedSequence([self.seed, self.replication]).generate_state(2, np.uint64)
        self._sqrt_dt = math.sqrt(self.dt)

    def generator(self, step: int) -> np.random.Generator:
        """ Generator positioned at the start of the block of `step`. """
        return np.random.Generator(np.random.Philox(key=self._key, counter=[0, 0, int(step), 0]))

    def increments(self, step: int) -> np.ndarray:
        """ Increments of every particle over step `step`, shape :code:`(N, m)`. """
        rng = self.generator(step)
        if not self.antithetic:
            return rng.standard_normal((self.n_particles, self.m)) * self._sqrt_dt
        base = rng.standard_normal(((self.n_particles + 1) // 2, self.m)) * self._sqrt_dt
        paired = np.empty((2 * base.shape[0], self.m))
        paired[0::2] = base
        paired[1::2] = -base
        return paired[:self.n_particles]

    def __repr__(self) -> str:
        return (f"NoisePlan(seed={self.seed}, n_particles={self.n_particles}, m={self.m}, dt={self.dt}, "
                f"replication={self.replication}, antithetic={self.antithetic})")
