""" Command line interface and scenario files. """

from .main import build_parser, main
from .scenario import load_scenario, scenario_from_dict

__all__ = ("main",
           "build_parser",
           "load_scenario",
           "scenario_from_dict")
