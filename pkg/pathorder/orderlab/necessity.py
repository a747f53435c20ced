""" Necessity probes: a mixed initial coupling which charges one designated ordered pair, and the short-time drift
gap estimated on the particles started at that pair.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from .psi import g
from .scenario import NecessityConfig, ScenarioSpec
from ..coeffs import LawMoments
from ..common.helpers import DominanceError, GridError, ProbeError
from ..common.namedtuples import DriftGapPoint, DriftGapReport
from ..measures import EmpiricalMeasure, marginals, mixture_coupling, monotone_coupling
from ..segments import PathSegment, leq
from ..simulate import NoisePlan, euler_step, init_cloud

__all__ = ("build_necessity_scenario",
           "drift_gap_probe")

logger = logging.getLogger('pathorder.orderlab')


def build_necessity_scenario(xi: PathSegment,
                             eta: PathSegment,
                             mu: EmpiricalMeasure,
                             nu: EmpiricalMeasure,
                             eps: float,
                             template: ScenarioSpec,
                             coordinate: int = 1,
                             s_values: Sequence[float] = (),
                             g_n: Optional[int] = None) -> ScenarioSpec:
    """ Returns `template` with initial coupling
    :math:`\\pi_\\varepsilon = (1 - \\varepsilon)\\pi_0 + \\varepsilon\\delta_{(\\xi, \\eta)}` where :math:`\\pi_0` is
    the monotone coupling of :math:`\\mu \\leq \\nu`. Particles started exactly at :math:`(\\xi, \\eta)` are tagged.

    Parameters
    ----------
    xi, eta
        Designated pair; must be ordered and agree at lag zero in `coordinate`.
    mu, nu
        Background laws with :math:`\\mu` stochastically dominated by :math:`\\nu`.
    eps
        Mixture weight in :math:`(0, 1)`.
    template
        Scenario supplying grid, models and run settings.
    coordinate
        1-based designated coordinate.
    s_values, g_n
        Stored in :attr:`.ScenarioSpec.necessity` for :func:`drift_gap_probe`.

    Raises
    ------
    DominanceError
        If :code:`xi <= eta` or :code:`mu <= nu` fails.
    ValueError
        If `eps` is outside :math:`(0, 1)`, the coordinate is out of range or the pair differs there at lag zero.
    """
    eps = float(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}.")
    if not 1 <= coordinate <= xi.dim:
        raise ValueError(f"coordinate must lie in [1, {xi.dim}], got {coordinate}.")
    if not leq(xi, eta):
        raise DominanceError("Designated pair is not ordered: xi <= eta fails.")
    if xi.current[coordinate - 1] != eta.current[coordinate - 1]:
        raise ValueError(f"xi and eta must agree at lag zero in coordinate {coordinate}, got "
                         f"{xi.current[coordinate - 1]!r} and {eta.current[coordinate - 1]!r}.")
    pi = mixture_coupling(monotone_coupling(mu, nu), xi, eta, eps)
    logger.info("Necessity coupling built: eps=%s, %d background pairs, coordinate %d.", eps, len(mu), coordinate)

    necessity = template.necessity or NecessityConfig()
    necessity = necessity._replace(eps=eps, coordinate=coordinate,
                                   s_values=tuple(s_values) or tuple(necessity.s_values),
                                   g_n=g_n if g_n is not None else necessity.g_n)
    return template.replace(initial=pi,
                            tag_pair=(xi, eta),
                            necessity=necessity,
                            initial_desc={'type': 'necessity', 'eps': eps, 'coordinate': coordinate,
                                          'xi': xi.values, 'eta': eta.values, 'mu': mu.data, 'nu': nu.data})


def _steps_of(spec: ScenarioSpec, s_values: Sequence[float]) -> Sequence[int]:
    steps = []
    for s in s_values:
        k = int(round(s / spec.grid.dt))
        if s <= 0 or abs(k * spec.grid.dt - s) > 1e-9 * max(1., abs(s)) or k > spec.grid.n_steps:
            raise GridError(f"s={s!r} is not a positive grid increment within [t0, T].")
        steps.append(k)
    return steps


def drift_gap_probe(spec: ScenarioSpec,
                    s_values: Optional[Sequence[float]] = None,
                    g_n: Optional[int] = None,
                    replication: int = 0) -> DriftGapReport:
    """ Estimates :math:`\\frac{1}{s}\\mathbb{E}[X^i(t_0 + s) - \\bar{X}^i(t_0 + s) \\mid A]` over the particles
    started at the designated pair, for every `s`.

    The run stops at the largest `s`. Beside the estimates, both drifts are evaluated directly at
    :math:`(t_0, \\xi, \\mu_\\varepsilon)` and :math:`(t_0, \\eta, \\nu_\\varepsilon)`; the report :attr:`agrees` if
    the estimate at the smallest `s` lies within three standard errors (plus :math:`10^{-9}`) of their difference.

    Parameters
    ----------
    spec
        Scenario from :func:`build_necessity_scenario`.
    s_values, g_n
        Override :attr:`.ScenarioSpec.necessity`.
    replication
        Replication whose streams are used.

    Raises
    ------
    ProbeError
        If no particle is tagged.
    GridError
        If some `s` is not a positive multiple of `dt` within the horizon.
    """
    if spec.tag_pair is None:
        raise ValueError("Scenario has no designated pair; build it with build_necessity_scenario.")
    necessity = spec.necessity or NecessityConfig()
    s_values = sorted(s_values if s_values is not None else necessity.s_values)
    if not s_values:
        raise ValueError("At least one time increment is required.")
    g_n = g_n if g_n is not None else necessity.g_n
    i = necessity.coordinate - 1
    steps = _steps_of(spec, s_values)

    grid = spec.grid
    cloud = init_cloud(spec.initial, spec.sim.N, spec.sim.seed, grid, replication, spec.tag_pair)
    tags = cloud.tags
    n_tagged = int(tags.sum())
    if n_tagged == 0:
        raise ProbeError(f"No particle of {spec.sim.N} started at the designated pair.")
    noise = NoisePlan(spec.sim.seed, spec.sim.N, spec.sim.m, grid.dt, replication, spec.sim.antithetic)
    for k in range(max(steps)):
        euler_step(cloud, k, spec.models, noise)

    points = []
    for s, k in zip(s_values, steps):
        diff = cloud.x[tags, i, grid.L + k] - cloud.xbar[tags, i, grid.L + k]
        mean = math.fsum(diff) / n_tagged
        stderr = float(np.std(diff, ddof=1)) / math.sqrt(n_tagged) / s if n_tagged > 1 else math.nan
        g_mean = math.fsum(g(g_n, diff)) / n_tagged if g_n else None
        points.append(DriftGapPoint(s=float(s), gap=mean / s, stderr=stderr, n_tagged=n_tagged, g_mean=g_mean))
        logger.debug("s=%s: gap %.6g +/- %.2g over %d tagged particles.", s, mean / s, stderr, n_tagged)

    xi, eta = spec.tag_pair
    mu_eps, nu_eps = marginals(spec.initial)
    direct_b = float(spec.models[0].drift_values(grid.t0, xi.values[None], LawMoments(mu_eps.data, mu_eps.weights))
                     [0, i])
    direct_bbar = float(spec.models[1].drift_values(grid.t0, eta.values[None],
                                                    LawMoments(nu_eps.data, nu_eps.weights))[0, i])
    direct_gap = direct_b - direct_bbar

    first = points[0]
    band = 3 * (first.stderr if math.isfinite(first.stderr) else 0.) + 1e-9
    agrees = abs(first.gap - direct_gap) <= band
    if not agrees:
        logger.warning("Drift gap estimate %.6g at s=%s disagrees with the direct value %.6g.", first.gap, first.s,
                       direct_gap)
    return DriftGapReport(coordinate=necessity.coordinate,
                          points=points,
                          direct_b=direct_b,
                          direct_bbar=direct_bbar,
                          direct_gap=direct_gap,
                          agrees=agrees)
