""" Writers for simulated particle clouds: HDF5 files through PyTables, plot-ready CSV files and run metadata. """

import csv
import logging
import warnings
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import tables as tb
from tables.exceptions import HDF5ExtError

from ..common.helpers import dumps_json

__all__ = ("TrajectoryLogger",
           "write_trajectory_csv",
           "write_trace_csv",
           "write_run_metadata")

SYSTEMS = ('X', 'Xbar')


class TrajectoryLogger:
    """ Writes the trajectories of each replication to an HDF5 file.
    Every replication gets a group :code:`replication_<r>` holding one :code:`(N, d, K + 1)` array per system and a
    table of the per-step second moments.

    Parameters
    ----------
    n_particles
        Particles per system.
    dim
        State dimension.
    n_columns
        Columns of every trajectory (:code:`K + 1`).
    """

    def __init__(self, n_particles: int, dim: int, n_columns: int):
        self.logger = logging.getLogger('pathorder.core')
        self.pytab_file = None
        self.shape = (n_particles, dim, n_columns)
        self._groups = {}  # In memory address to pytables_file groups (expensive otherwise)

    def __contains__(self, replication: int) -> bool:
        return f'/replication_{replication}' in self.pytab_file

    def __enter__(self) -> 'TrajectoryLogger':
        return self

    def __exit__(self, *args):
        self.close()

    @property
    def n_replications(self) -> int:
        return len(self._groups)

    def open(self, path: Union[Path, str], mode: str = 'w', checksum: str = ''):
        """ Opens or creates the HDF5 file.

        Parameters
        ----------
        path
            File path in which to construct the logfile.
        mode
            The open mode of the file. :code:`'w'`, :code:`'a'` and :code:`'r'` modes are supported.
        checksum
            Scenario hash stored in the file so that dumps can be matched to the run which produced them.
        """
        self.pytab_file = tb.open_file(str(path), mode, filters=tb.Filters(1, 'blosc'))
        if mode != 'r':
            self.pytab_file.root._v_attrs.checksum = checksum
        self._groups = {int(g._v_name.split('_')[1]): g for g in self.pytab_file.iter_nodes('/', 'Group')}

    def put_metadata(self, key: str, value: Any):
        """ Records run settings in the root attributes of the file. """
        try:
            self.pytab_file.root._v_attrs[key] = value
        except HDF5ExtError:
            message = f"Could not append '{key}' to the HDF5 log file."
            self.logger.warning(message)
            warnings.warn(message, RuntimeWarning)

    def put_replication(self, replication: int, cloud: 'ParticleCloud', moments: Optional[np.ndarray] = None):
        """ Writes both systems of `cloud` and, optionally, the :code:`(n_steps + 1, 2)` moment track. """
        group = self.pytab_file.create_group(where='/', name=f'replication_{replication}')
        for name, values in zip(SYSTEMS, (cloud.x, cloud.xbar)):
            if values.shape != self.shape:
                raise ValueError(f"Cloud of shape {values.shape} does not match logger shape {self.shape}.")
            array = self.pytab_file.create_carray(group, name, atom=tb.Float64Atom(), shape=values.shape,
                                                  title=f"Trajectories of system {name}")
            array[...] = values
        group._v_attrs.times = cloud.grid.times()
        group._v_attrs.seed = cloud.seed

        if moments is not None:
            table = self.pytab_file.create_table(group, 'moments',
                                                 description={'time': tb.Float64Col(pos=0),
                                                              'moment_x': tb.Float64Col(pos=1),
                                                              'moment_xbar': tb.Float64Col(pos=2)},
                                                 title="Mean squared sup-norm of the segments",
                                                 expectedrows=len(moments))
            times = cloud.grid.t0 + np.arange(len(moments)) * cloud.grid.dt
            table.append([(t, mx, mxb) for t, (mx, mxb) in zip(times, moments)])
            table.flush()
        self._groups[replication] = group
        self.logger.debug("Replication %d written to HDF5.", replication)

    def get_trajectories(self, replication: int, system: str) -> np.ndarray:
        if system not in SYSTEMS:
            raise KeyError(f"Unknown system '{system}'; expected one of {SYSTEMS}.")
        return self.pytab_file.get_node(f'/replication_{replication}', system).read()

    def get_moments(self, replication: int) -> np.ndarray:
        table = self.pytab_file.get_node(f'/replication_{replication}', 'moments')
        return np.stack([table.col('moment_x'), table.col('moment_xbar')], axis=1)

    def close(self):
        """ Flushes to file and closes the file. """
        if self.pytab_file is not None and self.pytab_file.isopen:
            self.pytab_file.flush()
            self.pytab_file.close()


def write_trajectory_csv(cloud: 'ParticleCloud', directory: Union[Path, str], stem: str = 'trajectories'):
    """ Writes one CSV per system: one row per grid time, columns :code:`time` then :code:`p<p>_x<i>` for every
    particle and coordinate.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    times = cloud.grid.times()
    n, d, _ = cloud.x.shape
    header = ['time'] + [f'p{p}_x{i + 1}' for p in range(n) for i in range(d)]
    for name, values in zip(SYSTEMS, (cloud.x, cloud.xbar)):
        flat = values.reshape(n * d, -1).T
        with (directory / f'{stem}_{name}.csv').open('w', newline='') as file:
            writer = csv.writer(file)
            writer.writerow(header)
            for t, row in zip(times, flat):
                writer.writerow([repr(float(t)), *(repr(float(v)) for v in row)])


def write_trace_csv(path: Union[Path, str], columns: Dict[str, Any]):
    """ Writes a trace with a fixed column order: :code:`time` (or the first key) then the named statistics. """
    names = list(columns)
    rows = zip(*(columns[n] for n in names))
    with Path(path).open('w', newline='') as file:
        writer = csv.writer(file)
        writer.writerow(names)
        for row in rows:
            writer.writerow([repr(float(v)) if v is not None else '' for v in row])


def write_run_metadata(path: Union[Path, str], metadata: Dict[str, Any]):
    """ Writes the run metadata (seed, grid, model hashes, wall time) as JSON. """
    Path(path).write_text(dumps_json(metadata) + '\n')
