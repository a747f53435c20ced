""" Full description of an experiment: grid, both coefficient models, the initial coupling and the run settings. """

from typing import Any, Dict, NamedTuple, Optional, Sequence, Tuple

from ..coeffs import CoeffModel
from ..common.helpers import DimensionError, DominanceError, sha256_of
from ..common.namedtuples import ProbeConfig, SimConfig
from ..measures import Coupling
from ..segments import PathSegment, TimeGrid

__all__ = ("TrialConfig",
           "NecessityConfig",
           "ScenarioSpec")


class TrialConfig(NamedTuple):
    """ Settings of an order-preservation trial. """
    tolerance: float = 1e-9
    """ float: Particles whose violation statistic exceeds this count as violating. """
    psi_n: Optional[int] = None
    """ Optional[int]: If set, the smoothed violation functional with this index is traced. """


class NecessityConfig(NamedTuple):
    """ Settings of the necessity drift probe. """
    eps: float = 0.5
    """ float: Mass of the designated pair in the initial mixture. """
    coordinate: int = 1
    """ int: 1-based coordinate at which the designated pair agrees at lag zero. """
    s_values: Sequence[float] = ()
    """ Sequence[float]: Time increments after `t0` at which the drift gap is estimated. Must be grid times. """
    g_n: Optional[int] = None
    """ Optional[int]: If set, the mean of :math:`g_n` of the coordinate difference is reported. """


class ScenarioSpec:
    """ A validated scenario shared by every subcommand.

    Parameters
    ----------
    grid
        Simulation grid.
    models
        Coefficient models of the first and second system.
    initial
        Joint law of the initial segments.
    sim
        Particle count, seed, Brownian dimension and antithetic flag.
    replications
        Number of independent replications of a trial.
    probes
        Settings of the condition checkers.
    trial
        Trial settings.
    necessity
        Necessity probe settings, if any.
    tag_pair
        Designated pair whose particles are tagged at initialisation.
    initial_desc
        Resolved description of how `initial` was built, embedded in reports.
    """

    def __init__(self,
                 grid: TimeGrid,
                 models: Tuple[CoeffModel, CoeffModel],
                 initial: Coupling,
                 sim: SimConfig,
                 replications: int = 1,
                 probes: ProbeConfig = ProbeConfig(),
                 trial: TrialConfig = TrialConfig(),
                 necessity: Optional[NecessityConfig] = None,
                 tag_pair: Optional[Tuple[PathSegment, PathSegment]] = None,
                 initial_desc: Optional[Dict[str, Any]] = None):
        if int(replications) < 1:
            raise ValueError(f"replications must be at least 1, got {replications}.")
        if sim.N < 1 or sim.m < 1:
            raise ValueError(f"N and m must be at least 1, got N={sim.N}, m={sim.m}.")
        first, second = models
        for model in models:
            if model.grid != grid:
                raise DimensionError(f"Model grid {model.grid!r} differs from the scenario grid {grid!r}.")
        if (first.d, first.m) != (second.d, second.m):
            raise DimensionError("Both systems must share d and m.")
        if first.m != sim.m:
            raise DimensionError(f"Models have m={first.m} but the simulation has m={sim.m}.")
        if initial.shape != (first.d, grid.L + 1):
            raise DimensionError(f"Initial atoms have shape {initial.shape}; expected ({first.d}, {grid.L + 1}).")

        self.grid = grid
        self.models = (first, second)
        self.initial = initial
        self.sim = sim
        self.replications = int(replications)
        self.probes = probes
        self.trial = trial
        self.necessity = necessity
        self.tag_pair = tag_pair
        self.initial_desc = initial_desc or {'type': 'coupling', 'pairs': len(initial)}

    @property
    def d(self) -> int:
        return self.models[0].d

    @property
    def m(self) -> int:
        return self.models[0].m

    def require_ordered(self):
        """ Raises :class:`.DominanceError` if any initial pair is not ordered. """
        bad = self.initial.unordered_pairs()
        if bad:
            raise DominanceError(f"Initial coupling is not order-supported; unordered pair indices {bad[:10]}"
                                 f"{'...' if len(bad) > 10 else ''}.")

    def model_hash(self) -> str:
        """ SHA-256 over the canonical sources of both models. """
        return sha256_of([self.models[0].hash(), self.models[1].hash()])

    def replace(self, **changes) -> 'ScenarioSpec':
        """ Returns a copy with some constructor arguments replaced. """
        kwargs = {'grid': self.grid, 'models': self.models, 'initial': self.initial, 'sim': self.sim,
                  'replications': self.replications, 'probes': self.probes, 'trial': self.trial,
                  'necessity': self.necessity, 'tag_pair': self.tag_pair, 'initial_desc': self.initial_desc}
        kwargs.update(changes)
        return ScenarioSpec(**kwargs)

    def to_dict(self) -> Dict[str, Any]:
        """ Resolved scenario for provenance. """
        data = {'grid': self.grid.to_dict(),
                'dims': {'d': self.d, 'm': self.m},
                'models': {'b': self.models[0].sources()['drift'],
                           'bbar': self.models[1].sources()['drift'],
                           'sigma': self.models[0].sources()['diffusion'],
                           'sigmabar': self.models[1].sources()['diffusion']},
                'model_hash': self.model_hash(),
                'initial': self.initial_desc,
                'sim': {**self.sim._asdict(), 'replications': self.replications},
                'probes': {**self.probes._asdict(), 'time_points': list(self.probes.time_points)},
                'trial': self.trial._asdict()}
        if self.necessity is not None:
            data['necessity'] = {**self.necessity._asdict(), 's_values': list(self.necessity.s_values)}
        return data

    def __repr__(self) -> str:
        return f"ScenarioSpec(grid={self.grid!r}, d={self.d}, m={self.m}, N={self.sim.N}, " \
               f"replications={self.replications})"
