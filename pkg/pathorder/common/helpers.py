""" Useful static functions, YAML/JSON presenters and custom errors used throughout the pathorder package. """
import hashlib
import json
import math
from typing import Any, Dict, Iterable, Optional

import numpy as np
import yaml

__all__ = ("nested_string_formatting",
           "on_grid_index",
           "to_jsonable",
           "dumps_json",
           "sha256_of",
           "FlowList",
           "flow_presenter",
           "numpy_dtype_presenter",
           "numpy_array_presenter",
           "register_presenters",
           "DimensionError",
           "GridError",
           "CoeffSyntaxError",
           "CoeffEvalError",
           "SolverCapError",
           "DominanceError",
           "BlowUpError",
           "ScenarioError",
           "ProbeError",
           )

""" Sundry Code Stubs """


def nested_string_formatting(nested_str: str, indent: int = 2) -> str:
    """ Lays out the string of a combined condition with one simple condition per line.
    Combinations print as :code:`[first kw \\nsecond]` (see :meth:`.BaseCondition.str_with_result`). The outer
    brackets are dropped, every deeper combination is indented by `indent` spaces and the joining keyword stays at the
    end of the line of its left operand.

    Examples
    --------
    >>> print(nested_string_formatting("[DriftOrderCondition() = True & \\n"
    ...                                "[DiffusionStructureCondition() = False | \\nGrowthCondition() = True]]"))
    DriftOrderCondition() = True &
      DiffusionStructureCondition() = False |
      GrowthCondition() = True
    """
    depth = 0
    lines = []
    for part in nested_str.split('\n'):
        part = part.strip()
        opened = len(part) - len(part.lstrip('['))
        depth += opened
        body, keyword = part[opened:], ''
        if body.endswith(('&', '|')):
            body, keyword = body[:-1].rstrip(), f" {body[-1]}"
        closed = len(body) - len(body.rstrip(']'))
        lines.append(f"{' ' * indent * max(depth - 1, 0)}{body[:len(body) - closed]}{keyword}")
        depth -= closed
    return '\n'.join(lines)


def on_grid_index(value: float, step: float, rel_tol: float = 1e-9) -> Optional[int]:
    """ Returns the integer `k` with :code:`k * step == value` (up to `rel_tol`) or :obj:`None` if `value` is not a
    multiple of `step`.

    Examples
    --------
    >>> on_grid_index(-0.25, 0.001)
    -250
    >>> on_grid_index(-0.3, 0.25) is None
    True
    """
    k = int(round(value / step))
    if abs(k * step - value) <= rel_tol * max(1., abs(value)):
        return k
    return None


def to_jsonable(obj: Any) -> Any:
    """ Recursively converts numpy scalars/arrays, named tuples and mappings into JSON serialisable Python objects. """
    if hasattr(obj, 'to_dict'):
        return to_jsonable(obj.to_dict())
    if hasattr(obj, '_asdict'):
        return {k: to_jsonable(v) for k, v in obj._asdict().items()}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def dumps_json(obj: Any, indent: Optional[int] = 2) -> str:
    """ Deterministic JSON rendering used for every report.
    Keys are sorted and floats are written with :func:`repr` (shortest round-trip form, at most 17 significant
    digits) so that identical inputs give byte-identical files.
    """
    return json.dumps(to_jsonable(obj), indent=indent, sort_keys=True, allow_nan=False)


def sha256_of(parts: Iterable[str]) -> str:
    """ Hex digest of the newline-joined `parts`. """
    return hashlib.sha256("\n".join(parts).encode('utf-8')).hexdigest()


""" YAML Representers """


class FlowList(list):
    """ Used to wrap lists which should appear in YAML flow style rather than default block style. """


def flow_presenter(dumper, lst):
    """ YAML Presenter for a FlowList style list. """
    return dumper.represent_sequence('tag:yaml.org,2002:seq', lst, flow_style=True)


def numpy_dtype_presenter(dumper, numpy_type):
    """ Unique YAML constructor for :class:`numpy.dtype`. """
    value = numpy_type.item()
    try:
        return getattr(dumper, f'represent_{type(value).__name__}')(value)
    except AttributeError:
        return dumper.represent_scalar('tag:yaml.org,2002:str', str(value))


def numpy_array_presenter(dumper, numpy_arr):
    """ Unique YAML constructor for :class:`numpy.ndarray`. """
    value = numpy_arr.tolist()
    try:
        return dumper.represent_sequence('tag:yaml.org,2002:seq', value, flow_style=True)
    except TypeError:
        return dumper.represent_scalar('tag:yaml.org,2002:str', str(value))


def register_presenters(dumper=yaml.SafeDumper) -> Dict[str, Any]:
    """ Registers the pathorder presenters on `dumper` so resolved scenarios can be written back to YAML. """
    yaml.add_representer(FlowList, flow_presenter, Dumper=dumper)
    yaml.add_representer(np.ndarray, numpy_array_presenter, Dumper=dumper)
    yaml.add_multi_representer(np.generic, numpy_dtype_presenter, Dumper=dumper)
    return {'Dumper': dumper}


""" Custom Errors """


class DimensionError(ValueError):
    """ Raised when segments, measures or couplings of incompatible shapes are combined. """


class GridError(ValueError):
    """ Raised for off-grid times or lags, and for windows which leave a trajectory's domain. """


class CoeffSyntaxError(ValueError):
    """ Raised by the coefficient parser. `offset` is the 1-based column at which parsing failed. """

    def __init__(self, reason: str, offset: int, source: str = ''):
        super().__init__(f"{reason} at offset {offset}" + (f" in '{source}'" if source else ""))
        self.reason = reason
        self.offset = offset
        self.source = source

    def __reduce__(self):
        return self.__class__, (self.reason, self.offset, self.source)


class CoeffEvalError(ArithmeticError):
    """ Raised when a coefficient evaluation divides by zero or produces a non-finite value. `particle` is the
    index of the first offending row of a batched evaluation.
    """

    def __init__(self, reason: str, particle: int = 0):
        super().__init__(reason)
        self.reason = reason
        self.particle = particle

    def __reduce__(self):
        return self.__class__, (self.reason, self.particle)


class SolverCapError(ValueError):
    """ Raised when an exact transport problem exceeds the configured atom cap. """


class DominanceError(ValueError):
    """ Raised when an ordered coupling is required but the measures (or coupling pairs) are not ordered. """


class BlowUpError(FloatingPointError):
    """ Raised when the particle system produces a non-finite state. """

    def __init__(self, particle: int, step: int, system: str):
        super().__init__(f"Non-finite state in system {system} for particle {particle} at step {step}.")
        self.particle = particle
        self.step = step
        self.system = system

    def __reduce__(self):
        return self.__class__, (self.particle, self.step, self.system)


class ScenarioError(ValueError):
    """ Raised when a scenario file fails validation. `key` is the dotted path of the offending entry. """

    def __init__(self, key: str, reason: str):
        super().__init__(f"{key}: {reason}")
        self.key = key
        self.reason = reason

    def __reduce__(self):
        return self.__class__, (self.key, self.reason)


class ProbeError(RuntimeError):
    """ Raised when a probe-based estimate has no usable samples. """
