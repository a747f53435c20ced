import shutil
from pathlib import Path

import numpy as np
import pytest
import yaml

from pathorder.cli import scenario_from_dict


def pytest_addoption(parser):
    parser.addoption("--save-outs", "-S", action="store_true", help="does not delete outputs produced by the CLI "
                                                                    "and acceptance tests for manual inspection.")
    parser.addoption("--run-acceptance", "-A", action="store_true", help="runs the long acceptance checks "
                                                                         "(calibrated trials and convergence).")


def pytest_runtest_setup(item):
    if 'acceptance' in item.keywords and not item.config.getvalue("--run-acceptance"):
        pytest.skip("need --run-acceptance or -A option to run")


@pytest.fixture(scope='function')
def save_outputs(request, pytestconfig):
    """ Fixture which will save contents of a test's tmp_path to tests/_saved_outputs"""
    src_path = request.getfixturevalue('tmp_path')
    yield
    if pytestconfig.getoption('--save-outs'):
        dest_path = Path(__file__).parent / '_saved_outputs' / request.node.name
        shutil.rmtree(dest_path, ignore_errors=True)
        shutil.copytree(src_path, dest_path)


@pytest.fixture(scope='session')
def input_files():
    inputs_path = Path(__file__).parent / '_test_inputs'
    yield inputs_path


@pytest.fixture(scope='session')
def calibration(input_files):
    with (input_files / 'calibration.yml').open('r') as file:
        return yaml.safe_load(file)


@pytest.fixture(scope='function')
def scenario_dict(input_files):
    """ Returns a loader of a fixture scenario as a mutable mapping. """

    def load(name: str = 's_plus') -> dict:
        with (input_files / f'{name}.yml').open('r') as file:
            return yaml.safe_load(file)

    return load


@pytest.fixture(scope='function')
def small_scenario(scenario_dict, input_files):
    """ Builds a cheap variant of a fixture scenario: few particles, coarse grid, short horizon. """

    def build(name: str = 's_plus', N: int = 32, dt: float = 0.05, T: float = 0.5, replications: int = 2,
              **sections):
        data = scenario_dict(name)
        data['grid'].update(dt=dt, T=T)
        data['sim'].update(N=N, replications=replications)
        for key, value in sections.items():
            data.setdefault(key, {}).update(value)
        return scenario_from_dict(data, input_files)

    return build


@pytest.fixture(scope='function')
def rng():
    return np.random.default_rng(1234)
