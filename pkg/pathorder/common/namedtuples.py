""" Named tuples used throughout the package to make code clearer. """

from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

__all__ = ("SimConfig",
           "ProbeConfig",
           "DominanceWitness",
           "Violation",
           "ConditionReport",
           "ReplicationResult",
           "TrialReport",
           "DriftGapPoint",
           "DriftGapReport")


class SimConfig(NamedTuple):
    """ Particle simulation settings. """
    N: int
    """ int: Number of particles per system. """
    seed: int
    """ int: Root seed of every random stream used by the run. """
    m: int
    """ int: Dimension of the common Brownian motion. """
    antithetic: bool = False
    """ bool: If :obj:`True` odd particles reuse the negated increments of the preceding even particle. """


class ProbeConfig(NamedTuple):
    """ Settings of the randomised condition probes. """
    num_probes: int = 1000
    """ int: Number of probes per probe family. """
    time_points: Sequence[float] = (0.,)
    """ Sequence[float]: Times probed by even-numbered probes; odd-numbered probes draw a uniform time. """
    seg_scale: float = 1.
    """ float: Amplitude of the random segments. """
    law_size: int = 5
    """ int: Number of atoms of every random probe law. """
    seed: int = 0
    """ int: Root seed of the probe streams. """
    tolerance: float = 1e-9
    """ float: Gaps at or below this value are not reported as violations. """


class DominanceWitness(NamedTuple):
    """ Result of a stochastic dominance test. """
    holds: bool
    """ bool: :obj:`True` if the first measure is dominated by the second. """
    matching: Optional[List[Tuple[int, int]]]
    """ Optional[List[Tuple[int, int]]]: Perfect matching ``(i, j)`` with atom i of the first measure below atom j of 
    the second. :obj:`None` if dominance fails or no matching is produced (weighted test).
    """


class Violation(NamedTuple):
    """ A single probe at which a sufficient condition failed. """
    kind: str
    """ str: One of :code:`'drift-order'`, :code:`'sigma-equality'` or :code:`'sigma-structure'`. """
    probe: int
    """ int: Index of the probe which produced the violation. """
    coordinate: int
    """ int: 1-based coordinate i of the offending component. """
    column: Optional[int]
    """ Optional[int]: 1-based Brownian column j for diffusion violations, :obj:`None` for the drift. """
    time: float
    """ float: Probe time. """
    gap: float
    """ float: Size of the violation (strictly larger than the tolerance). """
    witness: Dict[str, Any]
    """ Dict[str, Any]: Probe inputs (segments and law atoms as nested lists). """


class ConditionReport(NamedTuple):
    """ Outcome of the condition checkers. """
    alpha_hat: Optional[float]
    """ Optional[float]: Largest Lipschitz ratio seen by the continuity probes (a lower bound on any valid constant). """
    k_hat: List[float]
    """ List[float]: Growth values at the zero segment and Dirac law at each probed time. """
    violations: List[Violation]
    """ List[Violation]: Every violation found, sorted by kind then probe index. """


class ReplicationResult(NamedTuple):
    """ Statistics of one simulated replication. """
    replication: int
    """ int: Replication index. """
    stats: Any
    """ numpy.ndarray: Per-particle violation statistic. """
    psi_trace: Any
    """ Optional[numpy.ndarray]: Per-time smoothed violation functional, if requested. """
    moment_max: float
    """ float: Largest mean squared sup-norm of the segments of either system over the run. """


class TrialReport(NamedTuple):
    """ Aggregated statistics of an order-preservation trial. """
    replications: int
    """ int: Number of replications run. """
    violation_max: float
    """ float: Largest per-particle violation statistic over all replications. """
    violation_p95: float
    """ float: 95th percentile of the pooled per-particle violation statistic. """
    violation_median: float
    """ float: Median of the pooled per-particle violation statistic. """
    violating_fraction: float
    """ float: Fraction of all particles whose statistic exceeds :attr:`tolerance`. """
    per_replication: List[Dict[str, float]]
    """ List[Dict[str, float]]: Max, p95 and violating fraction of each replication. """
    tolerance: float
    """ float: Threshold used for :attr:`violating_fraction`. """
    moment_max: float
    """ float: Largest mean squared sup-norm observed in any replication. """
    psi_n: Optional[int] = None
    """ Optional[int]: Smoothing index of the traced functional, :obj:`None` if not traced. """
    psi_trace: Optional[List[Tuple[float, float]]] = None
    """ Optional[List[Tuple[float, float]]]: ``(time, value)`` rows of the smoothed violation functional. """
    runtime: Optional[float] = None
    """ Optional[float]: Wall time in seconds. """


class DriftGapPoint(NamedTuple):
    """ Short-time drift gap estimate at one time increment. """
    s: float
    """ float: Time increment after the start time. """
    gap: float
    """ float: Mean over tagged particles of the coordinate difference divided by `s`. """
    stderr: float
    """ float: Standard error of :attr:`gap`. """
    n_tagged: int
    """ int: Number of tagged particles. """
    g_mean: Optional[float] = None
    """ Optional[float]: Mean of the exponential diagnostic over tagged particles. """


class DriftGapReport(NamedTuple):
    """ Outcome of the necessity drift probe. """
    coordinate: int
    """ int: 1-based coordinate probed. """
    points: List[DriftGapPoint]
    """ List[DriftGapPoint]: One estimate per requested time increment. """
    direct_b: float
    """ float: Drift of the first system evaluated at the tagged pair and mixed law. """
    direct_bbar: float
    """ float: Drift of the second system evaluated at the tagged pair and mixed law. """
    direct_gap: float
    """ float: :attr:`direct_b` minus :attr:`direct_bbar`. """
    agrees: bool
    """ bool: :obj:`True` if the smallest-`s` estimate lies within three standard errors of :attr:`direct_gap`. """
