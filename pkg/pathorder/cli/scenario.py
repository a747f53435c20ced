""" Loads and validates YAML scenario files into :class:`.ScenarioSpec` objects. """

import logging
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence, Union

import numpy as np
import yaml

from ..coeffs import CoeffModel, parse_coeff
from ..common.helpers import CoeffSyntaxError, DimensionError, DominanceError, GridError, ScenarioError
from ..common.namedtuples import ProbeConfig, SimConfig
from ..measures import Coupling, EmpiricalMeasure, load_coupling, load_measure
from ..orderlab import NecessityConfig, ScenarioSpec, TrialConfig, build_necessity_scenario
from ..segments import PathSegment, TimeGrid

__all__ = ("load_scenario",
           "scenario_from_dict",
           "BUILTIN_COUPLINGS")

logger = logging.getLogger('pathorder.cli')

SECTIONS = {'grid': {'t0', 'T', 'dt', 'r0'},
            'dims': {'d', 'm'},
            'models': {'b', 'bbar', 'sigma', 'sigmabar'},
            'initial': {'type', 'params'},
            'sim': {'N', 'seed', 'replications', 'antithetic'},
            'probes': {'num_probes', 'tolerance', 'seg_scale', 'law_size', 'time_points'},
            'trial': {'tolerance', 'psi_n'},
            'necessity': {'eps', 'coordinate', 's_values', 'g_n'}}
REQUIRED = {'grid': {'t0', 'T', 'dt', 'r0'},
            'dims': {'d', 'm'},
            'models': {'b', 'bbar', 'sigma', 'sigmabar'},
            'initial': {'type'},
            'sim': {'N', 'seed'}}
ORDERED_CLOUD_SHIFT = 0.1


def load_scenario(path: Union[Path, str], seed: Optional[int] = None) -> ScenarioSpec:
    """ Reads, validates and resolves a scenario file.

    Parameters
    ----------
    path
        YAML scenario file. Relative paths inside it are resolved against its directory.
    seed
        Overrides :code:`sim.seed` if given.

    Raises
    ------
    ScenarioError
        For every validation failure; :attr:`~.ScenarioError.key` names the offending entry.
    FileNotFoundError
        If `path` does not exist.
    """
    path = Path(path)
    with path.open('r') as file:
        try:
            data = yaml.safe_load(file)
        except yaml.YAMLError as e:
            raise ScenarioError('<file>', f"not valid YAML: {e}") from e
    logger.info("Loading scenario from %s.", path)
    return scenario_from_dict(data, base_dir=path.parent, seed=seed)


def _get(section: Dict[str, Any], name: str, key: str, cast: Callable, default: Any = None, check=None) -> Any:
    dotted = f"{name}.{key}"
    if key not in section:
        if name in REQUIRED and key in REQUIRED[name]:
            raise ScenarioError(dotted, "missing required key")
        return default
    try:
        value = cast(section[key])
    except (TypeError, ValueError) as e:
        raise ScenarioError(dotted, f"cannot interpret {section[key]!r}: {e}") from e
    if check is not None and not check(value):
        raise ScenarioError(dotted, f"invalid value {value!r}")
    return value


def _strict_bool(value: Any) -> bool:
    if not isinstance(value, bool):
        raise TypeError("expected true or false")
    return value


def _integer(value: Any) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise TypeError("expected an integer")
    return int(value)


def _floats(value: Any) -> tuple:
    if not isinstance(value, (list, tuple)):
        value = [value]
    return tuple(float(v) for v in value)


def _drift_sources(value: Any, d: int, key: str) -> Sequence[str]:
    if isinstance(value, str):
        value = [value]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ScenarioError(key, "expected a list of expression strings")
    if len(value) != d:
        raise ScenarioError(key, f"expected {d} expression(s), got {len(value)}")
    return value


def _diffusion_sources(value: Any, d: int, m: int, key: str) -> Sequence[Sequence[str]]:
    if isinstance(value, str) and d == m == 1:
        value = [[value]]
    if m == 1 and isinstance(value, list) and all(isinstance(v, str) for v in value):
        value = [[v] for v in value]
    if not isinstance(value, list) or not all(isinstance(row, list) and all(isinstance(v, str) for v in row)
                                              for row in value):
        raise ScenarioError(key, "expected a list of rows of expression strings")
    if len(value) != d or any(len(row) != m for row in value):
        raise ScenarioError(key, f"expected {d} row(s) of {m} expression(s)")
    return value


def _parse_model(models: Dict[str, Any], drift_key: str, diff_key: str, d: int, m: int,
                 grid: TimeGrid) -> CoeffModel:
    drift = _drift_sources(models[drift_key], d, f"models.{drift_key}")
    diffusion = _diffusion_sources(models[diff_key], d, m, f"models.{diff_key}")
    parsed_drift = []
    for i, src in enumerate(drift):
        parsed_drift.append(_parse_one(src, d, grid, f"models.{drift_key}[{i}]"))
    parsed_diff = [[_parse_one(src, d, grid, f"models.{diff_key}[{i}][{j}]") for j, src in enumerate(row)]
                   for i, row in enumerate(diffusion)]
    return CoeffModel(parsed_drift, parsed_diff, d, m, grid)


def _parse_one(src: str, d: int, grid: TimeGrid, key: str):
    try:
        return parse_coeff(src, d, grid)
    except CoeffSyntaxError as e:
        raise ScenarioError(key, str(e)) from e


def _segment(value: Any, d: int, n_cols: int, key: str) -> PathSegment:
    """ A scalar is a constant history in every coordinate, a list of `d` scalars a constant history per coordinate
    and a nested :code:`d x (L + 1)` list a full segment.
    """
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise ScenarioError(key, f"cannot interpret segment {value!r}") from e
    if arr.ndim == 0:
        return PathSegment.constant(float(arr), n_cols, d)
    if arr.ndim == 1 and arr.size == d:
        return PathSegment(np.repeat(arr[:, None], n_cols, axis=1))
    if arr.shape == (d, n_cols):
        return PathSegment(arr)
    raise ScenarioError(key, f"segment must be a scalar, {d} values or a {d}x{n_cols} array; got shape {arr.shape}")


def _measure(value: Any, d: int, n_cols: int, key: str, base_dir: Path) -> EmpiricalMeasure:
    if isinstance(value, str):
        try:
            measure = load_measure(base_dir / value)
        except (OSError, ValueError, KeyError) as e:
            raise ScenarioError(key, f"cannot load measure file '{value}': {e}") from e
        if not isinstance(measure, EmpiricalMeasure):
            raise ScenarioError(key, "background measures must be unweighted")
    else:
        if not isinstance(value, list) or not value:
            raise ScenarioError(key, "expected a measure file or a non-empty list of segments")
        measure = EmpiricalMeasure([_segment(v, d, n_cols, f"{key}[{i}]") for i, v in enumerate(value)])
    if measure.shape != (d, n_cols):
        raise ScenarioError(key, f"atoms must have shape ({d}, {n_cols}), got {measure.shape}")
    return measure


def _constant_coupling(params, d, n_cols, base_dir) -> Coupling:
    xi = _segment(params.get('xi', 0.), d, n_cols, 'initial.params.xi')
    eta = _segment(params.get('eta', params.get('xi', 0.)), d, n_cols, 'initial.params.eta')
    return Coupling.dirac(xi, eta)


def _ordered_cloud(params, d, n_cols, base_dir) -> Coupling:
    """ `size` random segments with amplitude `scale`, each paired with itself shifted up by `shift`. """
    size = _get(params, 'initial.params', 'size', _integer, 64, lambda v: v >= 1)
    seed = _get(params, 'initial.params', 'seed', _integer, 0)
    scale = _get(params, 'initial.params', 'scale', float, 1., lambda v: v >= 0)
    shift = _get(params, 'initial.params', 'shift', float, ORDERED_CLOUD_SHIFT, lambda v: v >= 0)
    rng = np.random.default_rng(np.random.SeedSequence([seed, 2]))
    left = scale * rng.standard_normal((size, d, n_cols))
    return Coupling(left, left + shift)


def _file_coupling(params, d, n_cols, base_dir) -> Coupling:
    if 'path' not in params:
        raise ScenarioError('initial.params.path', "missing required key")
    try:
        return load_coupling(base_dir / params['path'])
    except (OSError, ValueError, KeyError) as e:
        raise ScenarioError('initial.params.path', f"cannot load coupling '{params['path']}': {e}") from e


PARAMS = {'constant': {'xi', 'eta'},
          'ordered_cloud': {'size', 'seed', 'scale', 'shift'},
          'file': {'path'},
          'necessity': {'xi', 'eta', 'mu', 'nu'}}
BUILTIN_COUPLINGS = {'constant': _constant_coupling,
                     'ordered_cloud': _ordered_cloud,
                     'file': _file_coupling,
                     'necessity': None}


def _section(data: Dict[str, Any], name: str) -> Dict[str, Any]:
    section = data.get(name, {})
    if section is None:
        section = {}
    if not isinstance(section, dict):
        raise ScenarioError(name, "expected a mapping")
    for key in section:
        if key not in SECTIONS[name]:
            raise ScenarioError(f"{name}.{key}", "unknown key")
    return section


def scenario_from_dict(data: Dict[str, Any], base_dir: Union[Path, str] = '.',
                       seed: Optional[int] = None) -> ScenarioSpec:
    """ Validates a parsed scenario mapping. See :func:`load_scenario`. """
    if not isinstance(data, dict):
        raise ScenarioError('<file>', "scenario must be a mapping of sections")
    for name in data:
        if name not in SECTIONS:
            raise ScenarioError(name, "unknown section")
    for name in REQUIRED:
        if name not in data:
            raise ScenarioError(name, "missing required section")
    base_dir = Path(base_dir)

    grid_sec = _section(data, 'grid')
    values = {k: _get(grid_sec, 'grid', k, float) for k in ('t0', 'T', 'dt', 'r0')}
    try:
        grid = TimeGrid(**values)
    except GridError as e:
        key = next((f"grid.{k}" for k in ("dt", "T", "r0") if str(e).startswith(f"{k} must")), "grid")
        raise ScenarioError(key, str(e)) from e

    dims = _section(data, 'dims')
    d = _get(dims, 'dims', 'd', _integer, check=lambda v: v >= 1)
    m = _get(dims, 'dims', 'm', _integer, check=lambda v: v >= 1)

    models_sec = _section(data, 'models')
    for key in SECTIONS['models']:
        _get(models_sec, 'models', key, lambda v: v)
    models = (_parse_model(models_sec, 'b', 'sigma', d, m, grid),
              _parse_model(models_sec, 'bbar', 'sigmabar', d, m, grid))

    sim_sec = _section(data, 'sim')
    sim = SimConfig(N=_get(sim_sec, 'sim', 'N', _integer, check=lambda v: v >= 1),
                    seed=seed if seed is not None else _get(sim_sec, 'sim', 'seed', _integer, check=lambda v: v >= 0),
                    m=m,
                    antithetic=_get(sim_sec, 'sim', 'antithetic', _strict_bool, False))
    replications = _get(sim_sec, 'sim', 'replications', _integer, 1, lambda v: v >= 1)

    probe_sec = _section(data, 'probes')
    probes = ProbeConfig(num_probes=_get(probe_sec, 'probes', 'num_probes', _integer, 1000, lambda v: v >= 1),
                         time_points=_get(probe_sec, 'probes', 'time_points', _floats, (grid.t0,)),
                         seg_scale=_get(probe_sec, 'probes', 'seg_scale', float, 1., lambda v: v > 0),
                         law_size=_get(probe_sec, 'probes', 'law_size', _integer, 5, lambda v: v >= 1),
                         seed=sim.seed,
                         tolerance=_get(probe_sec, 'probes', 'tolerance', float, 1e-9, lambda v: v >= 0))

    trial_sec = _section(data, 'trial')
    trial = TrialConfig(tolerance=_get(trial_sec, 'trial', 'tolerance', float, 1e-9, lambda v: v >= 0),
                        psi_n=_get(trial_sec, 'trial', 'psi_n', _integer, None, lambda v: v >= 1))

    necessity = None
    if 'necessity' in data:
        nec_sec = _section(data, 'necessity')
        necessity = NecessityConfig(eps=_get(nec_sec, 'necessity', 'eps', float, 0.5, lambda v: 0 < v < 1),
                                    coordinate=_get(nec_sec, 'necessity', 'coordinate', _integer, 1,
                                                    lambda v: 1 <= v <= d),
                                    s_values=_get(nec_sec, 'necessity', 's_values', _floats, ()),
                                    g_n=_get(nec_sec, 'necessity', 'g_n', _integer, None, lambda v: v >= 1))

    init_sec = _section(data, 'initial')
    kind = _get(init_sec, 'initial', 'type', str)
    params = init_sec.get('params') or {}
    if not isinstance(params, dict):
        raise ScenarioError('initial.params', "expected a mapping")
    if kind not in BUILTIN_COUPLINGS:
        raise ScenarioError('initial.type', f"unknown coupling '{kind}'; expected one of {sorted(BUILTIN_COUPLINGS)}")
    for key in params:
        if key not in PARAMS[kind]:
            raise ScenarioError(f"initial.params.{key}", "unknown key")
    n_cols = grid.L + 1
    desc = {'type': kind, 'params': params}

    if kind == 'necessity':
        if necessity is None:
            necessity = NecessityConfig()
        for key in ('xi', 'eta', 'mu', 'nu'):
            if key not in params:
                raise ScenarioError(f"initial.params.{key}", "missing required key")
        xi = _segment(params['xi'], d, n_cols, 'initial.params.xi')
        eta = _segment(params['eta'], d, n_cols, 'initial.params.eta')
        mu = _measure(params['mu'], d, n_cols, 'initial.params.mu', base_dir)
        nu = _measure(params['nu'], d, n_cols, 'initial.params.nu', base_dir)
        placeholder = Coupling.dirac(xi, eta)
        template = ScenarioSpec(grid, models, placeholder, sim, replications, probes, trial, necessity)
        try:
            spec = build_necessity_scenario(xi, eta, mu, nu, necessity.eps, template, necessity.coordinate)
        except DominanceError as e:
            raise ScenarioError('initial.params', str(e)) from e
        except ValueError as e:
            raise ScenarioError('necessity', str(e)) from e
        return spec.replace(initial_desc=desc)

    try:
        initial = BUILTIN_COUPLINGS[kind](params, d=d, n_cols=n_cols, base_dir=base_dir)
    except (DimensionError, ValueError) as e:
        if isinstance(e, ScenarioError):
            raise
        raise ScenarioError('initial.params', str(e)) from e
    if initial.shape != (d, n_cols):
        raise ScenarioError('initial', f"atoms must have shape ({d}, {n_cols}), got {initial.shape}")
    spec = ScenarioSpec(grid, models, initial, sim, replications, probes, trial, necessity, initial_desc=desc)
    logger.info("Scenario resolved: %r.", spec)
    return spec
