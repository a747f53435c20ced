""" Command line front door: ``pathorder <subcommand> [arguments] [global flags]``.

Exit codes are 0 on success, 1 for usage, IO and scenario errors, 2 when a condition or order violation was detected
and 3 when the particle system (or a coefficient) produced a non-finite value. Every error is reported as a single
JSON line on standard error.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import yaml

from .scenario import load_scenario
from .._version import __version__
from ..common.helpers import (BlowUpError, CoeffEvalError, CoeffSyntaxError, FlowList, ProbeError, ScenarioError,
                              dumps_json, nested_string_formatting, register_presenters)
from ..common.namedtuples import ConditionReport
from ..conditions import DiffusionStructureCondition, DriftOrderCondition, check_h2, estimate_h1
from ..core._backends import BACKENDS, make_executor
from ..core.simlogger import TrajectoryLogger, write_run_metadata, write_trace_csv, write_trajectory_csv
from ..measures import EmpiricalMeasure, load_measure, stochastic_leq, w2, weighted_stochastic_leq
from ..orderlab import drift_gap_probe, g, psi, run_preservation_trial, violation_stat
from ..schemas import validate_report
from ..simulate import run

__all__ = ("main",
           "build_parser")

logger = logging.getLogger('pathorder.cli')

LOG_FORMAT = "%(asctime)s : %(levelname)s : %(name)s :: %(message)s"
EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_BLOWUP = 0, 1, 2, 3


class UsageError(Exception):
    """ Raised instead of exiting when the command line cannot be parsed. """


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    """ Parser with one subparser per command. Global flags are accepted after the subcommand. """
    common = _Parser(add_help=False)
    group = common.add_argument_group("global flags")
    group.add_argument('--seed', type=int, default=None, help="Overrides sim.seed of the scenario.")
    group.add_argument('--out', type=Path, default=None,
                       help="Directory for report and trace files. Reports go to stdout if omitted.")
    group.add_argument('--format', choices=('json', 'csv', 'hdf5'), default='json',
                       help="json: report only. csv: report plus plot-ready CSV traces. hdf5: trajectories "
                            "(simulate only).")
    group.add_argument('--threads', type=int, default=1, help="Workers for replications and probe chunks.")
    group.add_argument('--backend', choices=BACKENDS, default='threads')
    group.add_argument('--timings', action='store_true', help="Include wall time in reports.")
    group.add_argument('--validate', action='store_true', help="Check the report against its shipped schema.")
    group.add_argument('--log-file', type=Path, default=None)
    group.add_argument('--log-level', default=None, choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'))

    parser = _Parser(prog='pathorder', description="Simulate and check order preservation of pairs of path-"
                                                   "distribution dependent SDEs.")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    cmd = sub.add_parser('simulate', parents=[common], help="Simulate every replication of a scenario.")
    cmd.add_argument('scenario', type=Path)
    cmd.set_defaults(func=cmd_simulate)

    cmd = sub.add_parser('order-test', parents=[common], help="Run an order-preservation trial.")
    cmd.add_argument('scenario', type=Path)
    cmd.add_argument('--psi-n', type=int, default=None, help="Trace the smoothed violation functional.")
    cmd.set_defaults(func=cmd_order_test)

    cmd = sub.add_parser('necessity-probe', parents=[common], help="Estimate the short-time drift gap.")
    cmd.add_argument('scenario', type=Path)
    cmd.add_argument('--s-values', type=float, nargs='+', default=None)
    cmd.add_argument('--g-n', type=int, default=None)
    cmd.set_defaults(func=cmd_necessity_probe)

    cmd = sub.add_parser('check-conditions', parents=[common], help="Probe the sufficient order conditions.")
    cmd.add_argument('scenario', type=Path)
    cmd.set_defaults(func=cmd_check_conditions)

    cmd = sub.add_parser('w2', parents=[common], help="Exact W2 distance of two measure files.")
    cmd.add_argument('first', type=Path)
    cmd.add_argument('second', type=Path)
    cmd.set_defaults(func=cmd_w2)

    cmd = sub.add_parser('dominance', parents=[common], help="Stochastic dominance of two measure files.")
    cmd.add_argument('first', type=Path)
    cmd.add_argument('second', type=Path)
    cmd.set_defaults(func=cmd_dominance)

    cmd = sub.add_parser('psi-table', parents=[common], help="Tabulate psi_n and its derivatives.")
    cmd.add_argument('--n', type=int, required=True)
    cmd.add_argument('--s', type=float, nargs='+', default=None, help="Explicit points.")
    cmd.add_argument('--s-min', type=float, default=-1.)
    cmd.add_argument('--s-max', type=float, default=1.)
    cmd.add_argument('--num', type=int, default=21)
    cmd.set_defaults(func=cmd_psi_table)

    return parser


# Subcommands return (report, exit code, traces); traces map file names to column dicts.

def cmd_simulate(args, executor) -> Tuple[Dict[str, Any], int, Dict[str, Dict[str, Any]]]:
    spec = load_scenario(args.scenario, args.seed)
    grid = spec.grid
    if args.format == 'hdf5' and args.out is None:
        raise UsageError("--format hdf5 requires --out.")
    rows = []
    traces = {}
    hdf = None
    if args.format == 'hdf5':
        args.out.mkdir(parents=True, exist_ok=True)
        hdf = TrajectoryLogger(spec.sim.N, spec.d, grid.K + 1)
        hdf.open(args.out / 'trajectories.h5', 'w', spec.model_hash())
        hdf.put_metadata('seed', spec.sim.seed)
        hdf.put_metadata('scenario', dumps_json(spec.to_dict(), indent=None))
    try:
        for r in range(spec.replications):
            cloud = run(spec, r)
            moments = cloud.moment_track()
            stats = violation_stat(cloud)
            rows.append({'replication': r,
                         'violation_max': float(stats.max()),
                         'moment_max': float(moments.max()),
                         'final_mean_x': [float(v) for v in cloud.x[:, :, -1].mean(axis=0)],
                         'final_mean_xbar': [float(v) for v in cloud.xbar[:, :, -1].mean(axis=0)]})
            if hdf is not None:
                hdf.put_replication(r, cloud, moments)
            if args.format == 'csv' and args.out is not None:
                write_trajectory_csv(cloud, args.out, f'trajectories_r{r}')
                times = grid.t0 + np.arange(len(moments)) * grid.dt
                traces[f'moments_r{r}.csv'] = {'time': times, 'moment_x': moments[:, 0], 'moment_xbar': moments[:, 1]}
    finally:
        if hdf is not None:
            hdf.close()
    report = {'scenario': spec.to_dict(), 'model_hash': spec.model_hash(),
              'replications': rows}
    return report, EXIT_OK, traces


def cmd_order_test(args, executor):
    spec = load_scenario(args.scenario, args.seed)
    trial = run_preservation_trial(spec, executor, psi_n=args.psi_n, timings=args.timings)
    report = {'scenario': spec.to_dict(), 'model_hash': spec.model_hash(),
              'trial': trial._asdict()}
    if not args.timings:
        del report['trial']['runtime']
    traces = {'replications.csv': {'replication': [r['replication'] for r in trial.per_replication],
                                   'max': [r['max'] for r in trial.per_replication],
                                   'p95': [r['p95'] for r in trial.per_replication],
                                   'violating_fraction': [r['violating_fraction'] for r in trial.per_replication]}}
    if trial.psi_trace:
        traces['psi_trace.csv'] = {'time': [t for t, _ in trial.psi_trace],
                                   'psi_functional': [v for _, v in trial.psi_trace]}
    code = EXIT_VIOLATION if trial.violating_fraction > 0 else EXIT_OK
    return report, code, traces


def cmd_necessity_probe(args, executor):
    spec = load_scenario(args.scenario, args.seed)
    gap = drift_gap_probe(spec, args.s_values, args.g_n)
    report = {'scenario': spec.to_dict(), 'model_hash': spec.model_hash(),
              'drift_gap': gap._asdict()}
    columns = {'s': [p.s for p in gap.points], 'gap': [p.gap for p in gap.points],
               'stderr': [p.stderr for p in gap.points]}
    if any(p.g_mean is not None for p in gap.points):
        columns['g_mean'] = [p.g_mean for p in gap.points]
    first = gap.points[0]
    positive = first.gap - 3 * (first.stderr if np.isfinite(first.stderr) else 0.) > 1e-9
    return report, EXIT_VIOLATION if positive else EXIT_OK, {'drift_gap.csv': columns}


def cmd_check_conditions(args, executor):
    spec = load_scenario(args.scenario, args.seed)
    condition = (DriftOrderCondition(spec.probes) & DiffusionStructureCondition(spec.probes)).exhaustively()
    condition(spec.models, executor)
    logger.info("Conditions evaluated:\n%s", nested_string_formatting(condition.str_with_result()))
    try:
        alpha_hat = estimate_h1(spec.models, spec.probes, executor)
    except ProbeError as e:
        logger.warning(str(e))
        alpha_hat = None
    result = ConditionReport(alpha_hat, check_h2(spec.models, spec.probes.time_points), condition.violations)
    report = {'scenario': spec.to_dict(), 'model_hash': spec.model_hash(),
              'holds': bool(condition.last_result), 'conditions': result._asdict()}
    return report, EXIT_OK if condition.last_result else EXIT_VIOLATION, {}


def cmd_w2(args, executor):
    mu, nu = load_measure(args.first), load_measure(args.second)
    if not isinstance(mu, EmpiricalMeasure) or not isinstance(nu, EmpiricalMeasure):
        raise ValueError("w2 is defined for unweighted measures with equal atom counts.")
    return {'w2': w2(mu, nu)}, EXIT_OK, {}


def cmd_dominance(args, executor):
    mu, nu = load_measure(args.first), load_measure(args.second)
    if isinstance(mu, EmpiricalMeasure) and isinstance(nu, EmpiricalMeasure) and mu.N == nu.N:
        witness = stochastic_leq(mu, nu)
    else:
        witness = weighted_stochastic_leq(mu, nu)
    return {'holds': witness.holds, 'matching': witness.matching}, EXIT_OK, {}


def cmd_psi_table(args, executor):
    if args.n < 1:
        raise UsageError("--n must be at least 1.")
    if args.s is not None:
        points = np.asarray(args.s, dtype=float)
    else:
        if args.num < 2:
            raise UsageError("--num must be at least 2.")
        points = np.linspace(args.s_min, args.s_max, args.num)
    value, d1, d2 = psi(args.n, points)
    g_values = [float(g(args.n, s)) if s <= 0 else None for s in points]
    rows = [{'s': float(s), 'psi': float(v), 'd1': float(a), 'd2': float(b), 'g': gv}
            for s, v, a, b, gv in zip(points, value, d1, d2, g_values)]
    columns = {'s': points, 'psi': value, 'd1': d1, 'd2': d2, 'g': g_values}
    return {'n': args.n, 'rows': rows}, EXIT_OK, {'psi_table.csv': columns}


def _configure_logging(args) -> List[logging.Handler]:
    handlers = []
    if args.log_file is not None:
        handlers.append(logging.FileHandler(args.log_file, 'w'))
    elif args.log_level is not None:
        handlers.append(logging.StreamHandler(sys.stderr))
    else:
        handlers.append(logging.NullHandler())
    formatter = logging.Formatter(LOG_FORMAT)
    for handler in handlers:
        handler.setFormatter(formatter)
        for name in ('pathorder', 'py.warnings'):
            log = logging.getLogger(name)
            log.addHandler(handler)
            if not isinstance(handler, logging.NullHandler):
                log.setLevel(args.log_level or 'INFO')
    logging.captureWarnings(True)
    return handlers


def _release_logging(handlers: List[logging.Handler]):
    logging.captureWarnings(False)
    for handler in handlers:
        for name in ('pathorder', 'py.warnings'):
            logging.getLogger(name).removeHandler(handler)
        handler.close()


def _error_line(error: BaseException) -> str:
    data = {'error': type(error).__name__, 'message': str(error)}
    if isinstance(error, ScenarioError):
        data['key'] = error.key
    elif isinstance(error, CoeffSyntaxError):
        data['offset'] = error.offset
    elif isinstance(error, BlowUpError):
        data.update(particle=error.particle, step=error.step, system=error.system)
    return json.dumps(data, sort_keys=True)


def _write_scenario_yaml(path: Path, scenario: Dict[str, Any]):
    """ Writes the resolved scenario back out in the scenario file layout (plus resolved extras). """
    scenario = dict(scenario)
    scenario['models'] = {key: [FlowList(row) if isinstance(row, list) else row for row in rows]
                          for key, rows in scenario['models'].items()}
    with path.open('w') as file:
        yaml.dump(scenario, file, default_flow_style=False, sort_keys=True, **register_presenters())


def _emit(args, report: Dict[str, Any], traces: Dict[str, Dict[str, Any]], stdout):
    text = dumps_json(report) + '\n'
    if args.out is None:
        stdout.write(text)
        return
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / f"{args.command}.json").write_text(text)
    if 'scenario' in report:
        _write_scenario_yaml(args.out / 'scenario_resolved.yml', report['scenario'])
    if args.format == 'csv':
        for name, columns in traces.items():
            write_trace_csv(args.out / name, columns)


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """ Runs one subcommand and returns its exit code. """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        stderr.write(_error_line(e) + '\n')
        return EXIT_USAGE

    handlers = _configure_logging(args)
    executor = None
    t_start = time.perf_counter()
    try:
        if args.threads < 1:
            raise UsageError("--threads must be at least 1.")
        if args.seed is not None and args.seed < 0:
            raise UsageError("--seed must be non-negative.")
        if args.format == 'hdf5' and args.command != 'simulate':
            raise UsageError("--format hdf5 is only supported by simulate.")
        executor = make_executor(args.backend, args.threads)
        report, code, traces = args.func(args, executor)
        if args.validate:
            validate_report(args.command, report)
        if args.timings:
            report['wall_time'] = time.perf_counter() - t_start
        _emit(args, report, traces, stdout)
        if args.out is not None and 'scenario' in report:
            write_run_metadata(args.out / 'run_metadata.json',
                               {'command': args.command, 'seed': report['scenario']['sim']['seed'],
                                'grid': report['scenario']['grid'], 'model_hash': report['model_hash'],
                                'threads': args.threads, 'backend': args.backend, 'version': __version__,
                                'wall_time': time.perf_counter() - t_start})
        logger.info("%s finished with exit code %d.", args.command, code)
        return code
    except (BlowUpError, CoeffEvalError) as e:
        logger.error("Numeric failure: %s", e)
        stderr.write(_error_line(e) + '\n')
        return EXIT_BLOWUP
    except (UsageError, ValueError, OSError, ProbeError, KeyError) as e:
        logger.error("%s: %s", type(e).__name__, e)
        stderr.write(_error_line(e) + '\n')
        return EXIT_USAGE
    finally:
        if executor is not None:
            executor.shutdown()
        _release_logging(handlers)
