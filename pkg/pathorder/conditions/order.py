""" Probing checkers for the drift order condition and the diffusion structure condition. """

import logging
from concurrent.futures import Executor
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from .probes import (FAMILIES, WITNESS_LIMIT, matched_pair, ordered_laws, ordered_pair, probe_rng, probe_time,
                     random_segments, run_chunked)
from ..coeffs import CoeffExpr, CoeffModel, LawMoments
from ..common.helpers import DimensionError
from ..common.namedtuples import ProbeConfig, Violation
from ..measures import EmpiricalMeasure, meet_pushforward

__all__ = ("check_drift_order",
           "check_diffusion_structure",
           "finalize_violations")

logger = logging.getLogger('pathorder.conditions')

KIND_ORDER = {'drift-order': 0, 'sigma-equality': 1, 'sigma-structure': 2}


def _drift(exprs: Union[CoeffModel, Sequence[CoeffExpr]]) -> List[CoeffExpr]:
    return list(exprs.drift) if isinstance(exprs, CoeffModel) else list(exprs)


def _diffusion(exprs: Union[CoeffModel, Sequence[Sequence[CoeffExpr]]]) -> List[List[CoeffExpr]]:
    rows = exprs.diffusion if isinstance(exprs, CoeffModel) else exprs
    return [list(row) for row in rows]


def _witness(family: str, cfg: ProbeConfig, index: int, t: float, **arrays) -> Dict[str, Any]:
    return {'family': family, 'seed': cfg.seed, 'index': index, 't': t, **arrays}


def finalize_violations(violations: List[Violation]) -> List[Violation]:
    """ Sorts violations by kind and probe index and keeps the probe arrays only for the first
    :data:`.WITNESS_LIMIT` violations of each kind. The rest keep the seed and index which regenerate them.
    """
    violations = sorted(violations, key=lambda v: (KIND_ORDER[v.kind], v.probe, v.coordinate, v.column or 0,
                                                   FAMILIES[v.witness['family']]))
    seen = dict.fromkeys(KIND_ORDER, 0)
    final = []
    for v in violations:
        keep = seen[v.kind] < WITNESS_LIMIT
        seen[v.kind] += 1
        witness = {k: (val.tolist() if isinstance(val, np.ndarray) else val) for k, val in v.witness.items()
                   if keep or not isinstance(val, np.ndarray)}
        final.append(v._replace(witness=witness))
    return final


def _drift_chunk(indices: range,
                 b: List[CoeffExpr],
                 bbar: List[CoeffExpr],
                 cfg: ProbeConfig) -> List[Violation]:
    grid = b[0].grid
    d = len(b)
    n_cols = grid.L + 1
    found = []
    for k in indices:
        rng = probe_rng(cfg.seed, 'drift-order', k)
        t = probe_time(cfg, grid, k, rng)
        mu, nu = ordered_laws(rng, cfg.law_size, d, n_cols, cfg.seg_scale)
        law_mu, law_nu = LawMoments(mu), LawMoments(nu)
        for i in range(d):
            xi, eta = ordered_pair(rng, d, n_cols, cfg.seg_scale, i)
            gap = float(b[i].evaluate(t, xi[None], law_mu)[0] - bbar[i].evaluate(t, eta[None], law_nu)[0])
            if gap > cfg.tolerance:
                found.append(Violation('drift-order', k, i + 1, None, t, gap,
                                       _witness('drift-order', cfg, k, t, xi=xi, eta=eta, mu=mu, nu=nu)))
    return found


def check_drift_order(b: Union[CoeffModel, Sequence[CoeffExpr]],
                      bbar: Union[CoeffModel, Sequence[CoeffExpr]],
                      cfg: ProbeConfig,
                      executor: Optional[Executor] = None) -> List[Violation]:
    """ Probes :math:`b^i(t, \\xi, \\mu) \\leq \\bar{b}^i(t, \\eta, \\nu)` on inputs with :math:`\\xi \\leq \\eta`,
    :math:`\\xi^i(0) = \\eta^i(0)` and :math:`\\mu \\leq \\nu`.

    Ordered inputs are built directly: :math:`\\eta` adds non-negative noise to :math:`\\xi` and then copies
    :math:`\\xi^i(0)`; :math:`\\nu` shifts every atom of :math:`\\mu` upwards.

    Parameters
    ----------
    b, bbar
        Drift expressions (or models) of the two systems.
    cfg
        Probe settings. :attr:`~.ProbeConfig.num_probes` probes are drawn; each checks every coordinate.
    executor
        Optional pool over which probe chunks are spread. The result does not depend on it.

    Returns
    -------
    List[Violation]
        Every probe with gap above :attr:`~.ProbeConfig.tolerance`, sorted by probe index. Empty if none was found.
    """
    b, bbar = _drift(b), _drift(bbar)
    if len(b) != len(bbar):
        raise DimensionError(f"Drifts have different dimensions: {len(b)} vs {len(bbar)}.")
    found = run_chunked(_drift_chunk, cfg.num_probes, (b, bbar, cfg), executor)
    logger.info("Drift order: %d violation(s) in %d probes.", len(found), cfg.num_probes)
    return finalize_violations(found)


def _eval_entry(expr: CoeffExpr, t: float, seg: np.ndarray, law: LawMoments) -> float:
    return float(expr.evaluate(t, seg[None], law)[0])


def _equality_chunk(indices: range, sigma, sigmabar, cfg: ProbeConfig) -> List[Violation]:
    grid = sigma[0][0].grid
    d, m = len(sigma), len(sigma[0])
    found = []
    for k in indices:
        rng = probe_rng(cfg.seed, 'sigma-equality', k)
        t = probe_time(cfg, grid, k, rng)
        xi = random_segments(rng, 1, d, grid.L + 1, cfg.seg_scale)[0]
        mu = random_segments(rng, cfg.law_size, d, grid.L + 1, cfg.seg_scale)
        law = LawMoments(mu)
        for i in range(d):
            for j in range(m):
                gap = abs(_eval_entry(sigma[i][j], t, xi, law) - _eval_entry(sigmabar[i][j], t, xi, law))
                if gap > cfg.tolerance:
                    found.append(Violation('sigma-equality', k, i + 1, j + 1, t, gap,
                                           _witness('sigma-equality', cfg, k, t, xi=xi, mu=mu)))
    return found


def _structure_chunk(indices: range, systems, cfg: ProbeConfig) -> List[Violation]:
    grid = systems[0][1][0][0].grid
    d, m = len(systems[0][1]), len(systems[0][1][0])
    n_cols = grid.L + 1
    found = []
    for k in indices:
        rng = probe_rng(cfg.seed, 'sigma-structure', k)
        t = probe_time(cfg, grid, k, rng)
        mu = random_segments(rng, cfg.law_size, d, n_cols, cfg.seg_scale)
        nu = random_segments(rng, cfg.law_size, d, n_cols, cfg.seg_scale)
        law_mu, law_nu = LawMoments(mu), LawMoments(nu)
        for i in range(d):
            xi, eta = matched_pair(rng, d, n_cols, cfg.seg_scale, i)
            for name, sigma in systems:
                for j in range(m):
                    gap = abs(_eval_entry(sigma[i][j], t, xi, law_mu) - _eval_entry(sigma[i][j], t, eta, law_nu))
                    if gap > cfg.tolerance:
                        found.append(Violation('sigma-structure', k, i + 1, j + 1, t, gap,
                                               _witness('sigma-structure', cfg, k, t, system=name,
                                                        xi=xi, eta=eta, mu=mu, nu=nu)))
    return found


def _meet_chunk(indices: range, systems, cfg: ProbeConfig) -> List[Violation]:
    grid = systems[0][1][0][0].grid
    d, m = len(systems[0][1]), len(systems[0][1][0])
    n_cols = grid.L + 1
    found = []
    for k in indices:
        rng = probe_rng(cfg.seed, 'meet', k)
        t = probe_time(cfg, grid, k, rng)
        mu = random_segments(rng, cfg.law_size, d, n_cols, cfg.seg_scale)
        nu = random_segments(rng, cfg.law_size, d, n_cols, cfg.seg_scale)
        meet_law = meet_pushforward(EmpiricalMeasure(mu), EmpiricalMeasure(nu))
        law_mu, law_meet = LawMoments(mu), LawMoments(meet_law.data, meet_law.weights)
        for i in range(d):
            xi, eta = random_segments(rng, 2, d, n_cols, cfg.seg_scale)
            eta[i, -1] = xi[i, -1] + abs(cfg.seg_scale * rng.standard_normal())
            low = np.minimum(xi, eta)
            for name, sigma in systems:
                for j in range(m):
                    gap = abs(_eval_entry(sigma[i][j], t, xi, law_mu) - _eval_entry(sigma[i][j], t, low, law_meet))
                    if gap > cfg.tolerance:
                        found.append(Violation('sigma-structure', k, i + 1, j + 1, t, gap,
                                               _witness('meet', cfg, k, t, system=name,
                                                        xi=xi, eta=eta, mu=mu, nu=nu)))
    return found


def check_diffusion_structure(sigma: Union[CoeffModel, Sequence[Sequence[CoeffExpr]]],
                              sigmabar: Union[CoeffModel, Sequence[Sequence[CoeffExpr]]],
                              cfg: ProbeConfig,
                              executor: Optional[Executor] = None) -> List[Violation]:
    """ Probes :math:`\\sigma = \\bar{\\sigma}` and that :math:`\\sigma^{ij}` depends on its inputs only through
    :math:`\\xi^i(0)`.

    Three probe families of :attr:`~.ProbeConfig.num_probes` probes each are run:

    * equality probes compare both diffusions on identical random inputs (kind :code:`'sigma-equality'`);

    * structure probes evaluate one diffusion on independent inputs which share only :math:`\\xi^i(0)`
      (kind :code:`'sigma-structure'`);

    * meet probes compare :math:`\\sigma(t, \\xi, \\mu)` with :math:`\\sigma(t, \\xi \\wedge \\eta, \\mu \\wedge \\nu)`
      where :math:`\\eta^i(0) \\geq \\xi^i(0)` (kind :code:`'sigma-structure'`, witness family :code:`'meet'`).

    Structure and meet probes are applied to both diffusions.
    """
    sigma, sigmabar = _diffusion(sigma), _diffusion(sigmabar)
    if len(sigma) != len(sigmabar) or len(sigma[0]) != len(sigmabar[0]):
        raise DimensionError("Diffusions have different shapes.")
    systems = [('X', sigma), ('Xbar', sigmabar)]
    found = run_chunked(_equality_chunk, cfg.num_probes, (sigma, sigmabar, cfg), executor)
    found += run_chunked(_structure_chunk, cfg.num_probes, (systems, cfg), executor)
    found += run_chunked(_meet_chunk, cfg.num_probes, (systems, cfg), executor)
    logger.info("Diffusion structure: %d violation(s) in %d probes per family.", len(found), cfg.num_probes)
    return finalize_violations(found)
