""" JSON documents for measures and couplings. """

import json
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from .coupling import Coupling
from .empirical import EmpiricalMeasure, WeightedMeasure
from ..common.helpers import DimensionError

__all__ = ("measure_to_dict",
           "measure_from_dict",
           "save_measure",
           "load_measure",
           "coupling_to_dict",
           "coupling_from_dict",
           "save_coupling",
           "load_coupling")


def measure_to_dict(measure: Union[EmpiricalMeasure, WeightedMeasure]) -> Dict[str, Any]:
    """ :code:`{shape, atoms}` plus :code:`weights` for weighted measures. """
    data = {'shape': list(measure.shape), 'atoms': measure.data.tolist()}
    if isinstance(measure, WeightedMeasure):
        data['weights'] = measure.weights.tolist()
    return data


def measure_from_dict(data: Dict[str, Any]) -> Union[EmpiricalMeasure, WeightedMeasure]:
    try:
        atoms = np.array(data['atoms'], dtype=float)
    except KeyError as e:
        raise ValueError("Measure document is missing key 'atoms'.") from e
    if 'weights' in data:
        measure = WeightedMeasure(atoms, data['weights'])
    else:
        measure = EmpiricalMeasure(atoms)
    if 'shape' in data and tuple(data['shape']) != tuple(measure.shape):
        raise DimensionError(f"Measure declares shape {data['shape']} but its atoms have shape {measure.shape}.")
    return measure


def save_measure(measure: Union[EmpiricalMeasure, WeightedMeasure], path: Union[Path, str]):
    Path(path).write_text(json.dumps(measure_to_dict(measure), indent=2))


def load_measure(path: Union[Path, str]) -> Union[EmpiricalMeasure, WeightedMeasure]:
    return measure_from_dict(json.loads(Path(path).read_text()))


def coupling_to_dict(pi: Coupling) -> Dict[str, Any]:
    return {'pairs': [{'left': a.tolist(), 'right': b.tolist(), 'weight': float(w)}
                      for a, b, w in zip(pi.left, pi.right, pi.weights)]}


def coupling_from_dict(data: Dict[str, Any]) -> Coupling:
    try:
        pairs = data['pairs']
        left = [p['left'] for p in pairs]
        right = [p['right'] for p in pairs]
        weights = [p['weight'] for p in pairs]
    except (KeyError, TypeError) as e:
        raise ValueError(f"Malformed coupling document: {e}") from e
    if not pairs:
        raise ValueError("A coupling needs at least one pair.")
    return Coupling(np.array(left, dtype=float), np.array(right, dtype=float), weights)


def save_coupling(pi: Coupling, path: Union[Path, str]):
    Path(path).write_text(json.dumps(coupling_to_dict(pi), indent=2))


def load_coupling(path: Union[Path, str]) -> Coupling:
    return coupling_from_dict(json.loads(Path(path).read_text()))
