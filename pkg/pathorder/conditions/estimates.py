""" Empirical profiles of the Lipschitz and growth assumptions on a pair of coefficient models. """

import logging
import math
from concurrent.futures import Executor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .order import check_diffusion_structure, check_drift_order
from .probes import probe_rng, probe_time, random_segments, run_chunked
from ..coeffs import CoeffModel, LawMoments
from ..common.helpers import DimensionError, ProbeError
from ..common.namedtuples import ConditionReport, ProbeConfig
from ..measures import EmpiricalMeasure, w2
from ..segments import batch_sup_norm

__all__ = ("estimate_h1",
           "check_h2",
           "check_conditions")

logger = logging.getLogger('pathorder.conditions')


def _check_models(models: Tuple[CoeffModel, CoeffModel]):
    first, second = models
    if (first.d, first.m, first.grid) != (second.d, second.m, second.grid):
        raise DimensionError("Both models must share d, m and the grid.")


def _squared_response(model: CoeffModel, t: float, xi: np.ndarray, law_a: LawMoments, eta: np.ndarray,
                      law_b: LawMoments) -> float:
    """ :math:`|b(\\xi, \\mu) - b(\\eta, \\nu)|^2 + \\|\\sigma(\\xi, \\mu) - \\sigma(\\eta, \\nu)\\|_{HS}^2`. """
    db = model.drift_values(t, xi[None], law_a)[0] - model.drift_values(t, eta[None], law_b)[0]
    ds = model.diffusion_values(t, xi[None], law_a)[0] - model.diffusion_values(t, eta[None], law_b)[0]
    return math.fsum(np.square(db)) + math.fsum(np.square(ds).ravel())


def _lipschitz_chunk(indices: range, models: Tuple[CoeffModel, CoeffModel], cfg: ProbeConfig) -> List[float]:
    grid = models[0].grid
    d, n_cols = models[0].d, grid.L + 1
    ratios = []
    for k in indices:
        rng = probe_rng(cfg.seed, 'lipschitz', k)
        t = probe_time(cfg, grid, k, rng)
        xi = random_segments(rng, 1, d, n_cols, cfg.seg_scale)[0]
        mu = random_segments(rng, cfg.law_size, d, n_cols, cfg.seg_scale)
        # Alternate between independent and nearby second arguments.
        scale = cfg.seg_scale if k % 2 == 0 else 0.1 * cfg.seg_scale
        eta = xi + random_segments(rng, 1, d, n_cols, scale)[0]
        nu = mu + random_segments(rng, cfg.law_size, d, n_cols, scale)

        denominator = float(batch_sup_norm(xi - eta)) ** 2 + w2(EmpiricalMeasure(mu), EmpiricalMeasure(nu)) ** 2
        if denominator == 0:
            ratios.append(math.nan)
            continue
        law_mu, law_nu = LawMoments(mu), LawMoments(nu)
        numerator = math.fsum(_squared_response(model, t, xi, law_mu, eta, law_nu) for model in models)
        ratios.append(numerator / denominator)
    return ratios


def estimate_h1(models: Tuple[CoeffModel, CoeffModel],
                cfg: ProbeConfig,
                executor: Optional[Executor] = None) -> float:
    """ Largest ratio of the squared coefficient increments of both systems to
    :math:`\\|\\xi - \\eta\\|_\\infty^2 + \\mathbb{W}_2(\\mu, \\nu)^2` over random probes.

    The value is a lower bound on any valid Lipschitz function on the probed time range; it never certifies the
    assumption. Probes with a zero denominator are skipped.

    Raises
    ------
    ProbeError
        If every probe is degenerate.
    """
    _check_models(models)
    ratios = np.array(run_chunked(_lipschitz_chunk, cfg.num_probes, (tuple(models), cfg), executor))
    usable = ratios[~np.isnan(ratios)]
    if usable.size == 0:
        raise ProbeError("Every Lipschitz probe was degenerate.")
    alpha_hat = float(usable.max())
    logger.info("Lipschitz estimate %.6g from %d probes (%d degenerate).", alpha_hat, usable.size,
                ratios.size - usable.size)
    return alpha_hat


def check_h2(models: Tuple[CoeffModel, CoeffModel], time_points: Sequence[float]) -> List[float]:
    """ Returns :math:`|b|^2 + |\\bar{b}|^2 + \\|\\sigma\\|_{HS}^2 + \\|\\bar{\\sigma}\\|_{HS}^2` at the zero segment
    and the Dirac law at zero for every time in `time_points`. Compare against a growth bound or keep as a profile.
    """
    _check_models(models)
    grid = models[0].grid
    zero = np.zeros((1, models[0].d, grid.L + 1))
    dirac = LawMoments(zero.copy())
    values = []
    for t in time_points:
        total = []
        for model in models:
            total.extend(np.square(model.drift_values(t, zero, dirac)[0]))
            total.extend(np.square(model.diffusion_values(t, zero, dirac)[0]).ravel())
        values.append(math.fsum(total))
    return values


def check_conditions(models: Tuple[CoeffModel, CoeffModel],
                     cfg: ProbeConfig,
                     executor: Optional[Executor] = None) -> ConditionReport:
    """ Runs every checker on the model pair and collects a :class:`.ConditionReport`. """
    _check_models(models)
    try:
        alpha_hat = estimate_h1(models, cfg, executor)
    except ProbeError as e:
        logger.warning(str(e))
        alpha_hat = None
    k_hat = check_h2(models, cfg.time_points)
    violations = check_drift_order(models[0], models[1], cfg, executor)
    violations += check_diffusion_structure(models[0], models[1], cfg, executor)
    return ConditionReport(alpha_hat, k_hat, violations)
