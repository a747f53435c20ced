""" CSV and JSON serialisation of segments and trajectories. """

import csv
import json
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from .grid import TimeGrid
from .paths import PathSegment, Trajectory
from ..common.helpers import DimensionError, GridError, on_grid_index

__all__ = ("segment_to_dict",
           "segment_from_dict",
           "save_segment_json",
           "load_segment_json",
           "save_segment_csv",
           "load_segment_csv",
           "save_trajectory_csv",
           "load_trajectory_csv")


def segment_to_dict(seg: PathSegment, dt: float) -> Dict[str, Any]:
    """ JSON form :code:`{dim, dt, r0, values}`. Floats are kept as Python floats which :mod:`json` writes with
    :func:`repr`, giving a bit-exact round trip.
    """
    return {'dim': seg.dim,
            'dt': float(dt),
            'r0': (seg.n_cols - 1) * float(dt),
            'values': seg.values.tolist()}


def segment_from_dict(data: Dict[str, Any], grid: Union[TimeGrid, None] = None) -> PathSegment:
    """ Inverse of :func:`segment_to_dict`. If `grid` is given, the stored `dt` and `r0` must match it. """
    try:
        seg = PathSegment(data['values'])
        dim = int(data['dim'])
    except KeyError as e:
        raise ValueError(f"Segment document is missing key {e}.") from e
    if seg.dim != dim:
        raise DimensionError(f"Segment declares dim={dim} but carries {seg.dim} rows.")
    if grid is not None:
        if on_grid_index(float(data.get('dt', grid.dt)) - grid.dt, grid.dt) != 0:
            raise GridError(f"Segment dt={data.get('dt')} does not match grid dt={grid.dt}.")
        if seg.n_cols != grid.L + 1:
            raise DimensionError(f"Segment has {seg.n_cols} columns; the grid requires {grid.L + 1}.")
    return seg


def save_segment_json(seg: PathSegment, dt: float, path: Union[Path, str]):
    Path(path).write_text(json.dumps(segment_to_dict(seg, dt), indent=2))


def load_segment_json(path: Union[Path, str], grid: Union[TimeGrid, None] = None) -> PathSegment:
    return segment_from_dict(json.loads(Path(path).read_text()), grid)


def _write_rows(path: Union[Path, str], times: np.ndarray, values: np.ndarray):
    with Path(path).open('w', newline='') as file:
        writer = csv.writer(file)
        writer.writerow([repr(float(t)) for t in times])
        for row in values:
            writer.writerow([repr(float(v)) for v in row])


def _read_rows(path: Union[Path, str]):
    with Path(path).open('r', newline='') as file:
        rows = [row for row in csv.reader(file) if row]
    if len(rows) < 2:
        raise ValueError(f"{path} must contain a header row of times and at least one coordinate row.")
    times = np.array(rows[0], dtype=float)
    values = np.array(rows[1:], dtype=float)
    if values.shape[1] != times.size:
        raise DimensionError(f"{path}: header has {times.size} times but rows have {values.shape[1]} entries.")
    return times, values


def save_segment_csv(seg: PathSegment, dt: float, path: Union[Path, str]):
    """ One row per coordinate below a header row of lags :math:`-r_0, \\dots, 0`. """
    lags = (np.arange(seg.n_cols) - (seg.n_cols - 1)) * dt
    _write_rows(path, lags, seg.values)


def load_segment_csv(path: Union[Path, str]) -> PathSegment:
    _, values = _read_rows(path)
    return PathSegment(values)


def save_trajectory_csv(traj: Trajectory, path: Union[Path, str]):
    """ One row per coordinate below a header row of the grid times. """
    _write_rows(path, traj.times(), traj.values)


def load_trajectory_csv(path: Union[Path, str], grid: TimeGrid) -> Trajectory:
    times, values = _read_rows(path)
    if times.size != grid.K + 1 or not np.allclose(times, grid.times(), rtol=0, atol=1e-9 * max(1., abs(grid.T))):
        raise GridError(f"{path}: header times do not match {grid!r}.")
    return Trajectory(values, grid)
