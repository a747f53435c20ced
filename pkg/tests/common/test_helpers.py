import json
import math
import pickle

import numpy as np
import pytest
import yaml

from pathorder.common.helpers import (BlowUpError, CoeffEvalError, CoeffSyntaxError, FlowList, ScenarioError,
                                      dumps_json, nested_string_formatting, on_grid_index, register_presenters,
                                      sha256_of, to_jsonable)
from pathorder.common.namedtuples import DriftGapPoint


def test_string():
    assert nested_string_formatting("[DriftOrderCondition() & \n"
                                    "[DiffusionStructureCondition() | \n"
                                    "GrowthCondition()]]") == \
           "DriftOrderCondition() &\n" \
           "  DiffusionStructureCondition() |\n" \
           "  GrowthCondition()"


def test_string_left_nested():
    assert nested_string_formatting("[[DriftOrderCondition() = True & \n"
                                    "DiffusionStructureCondition() = False] | \n"
                                    "GrowthCondition() = True]", indent=4) == \
           "    DriftOrderCondition() = True &\n" \
           "    DiffusionStructureCondition() = False |\n" \
           "GrowthCondition() = True"


def test_string_with_result():
    assert nested_string_formatting("[DriftOrderCondition(cfg=ProbeConfig(time_points=[0.0, 0.5])) = False & \n"
                                    "DiffusionStructureCondition() = None]") == \
           "DriftOrderCondition(cfg=ProbeConfig(time_points=[0.0, 0.5])) = False &\n" \
           "DiffusionStructureCondition() = None"


def test_string_single():
    assert nested_string_formatting("GrowthCondition(bound=1.0, time_points=(0.0,)) = True") == \
           "GrowthCondition(bound=1.0, time_points=(0.0,)) = True"


@pytest.mark.parametrize('value, step, index', [(0.25, 0.125, 2),
                                                (-0.25, 0.001, -250),
                                                (1., 0.1, 10),
                                                (0.3, 0.25, None),
                                                (0.0015, 0.001, None),
                                                (-0., 0.5, 0)])
def test_on_grid_index(value, step, index):
    assert on_grid_index(value, step) == index


class TestJson:

    def test_sorted_and_deterministic(self):
        report = {'b': np.float64(0.1), 'a': [np.int64(3), np.array([1., 2.])]}
        text = dumps_json(report)
        assert text == dumps_json(dict(reversed(list(report.items()))))
        assert list(json.loads(text)) == ['a', 'b']
        assert json.loads(text) == {'a': [3, [1., 2.]], 'b': 0.1}

    def test_non_finite(self):
        assert json.loads(dumps_json({'x': math.nan, 'y': [math.inf]})) == {'x': 'nan', 'y': ['inf']}

    def test_named_tuple(self):
        point = DriftGapPoint(s=0.1, gap=1., stderr=0., n_tagged=3)
        assert to_jsonable(point) == {'s': 0.1, 'gap': 1., 'stderr': 0., 'n_tagged': 3, 'g_mean': None}

    def test_round_trip_digits(self):
        value = 0.1 + 0.2
        assert json.loads(dumps_json([value]))[0] == value


def test_sha256_of():
    assert sha256_of(['a', 'b']) == sha256_of(['a', 'b'])
    assert sha256_of(['a', 'b']) != sha256_of(['ab'])
    assert len(sha256_of([])) == 64


@pytest.mark.parametrize('error, attrs', [
    (CoeffSyntaxError("unexpected ')'", 4, "1 +)"), ('reason', 'offset', 'source')),
    (CoeffEvalError("division by zero", 7), ('reason', 'particle')),
    (BlowUpError(3, 12, 'Xbar'), ('particle', 'step', 'system')),
    (ScenarioError('grid.dt', "missing required key"), ('key', 'reason')),
])
def test_errors_pickle(error, attrs):
    copy = pickle.loads(pickle.dumps(error))
    assert type(copy) is type(error)
    assert str(copy) == str(error)
    for attr in attrs:
        assert getattr(copy, attr) == getattr(error, attr)


def test_error_messages():
    assert str(CoeffSyntaxError("lag not on grid", 7, "x[1](-0.3)")) == \
           "lag not on grid at offset 7 in 'x[1](-0.3)'"
    assert str(ScenarioError('models.b[0]', 'bad')) == "models.b[0]: bad"
    assert isinstance(ScenarioError('a', 'b'), ValueError)


def test_yaml_presenters(tmp_path):
    data = {'rows': FlowList([1, 2]), 'array': np.array([[0.5, 1.]]), 'scalar': np.float64(0.25),
            'count': np.int32(4)}
    kwargs = register_presenters()
    text = yaml.dump(data, **kwargs)
    assert "rows: [1, 2]" in text
    assert yaml.safe_load(text) == {'rows': [1, 2], 'array': [[0.5, 1.]], 'scalar': 0.25, 'count': 4}
