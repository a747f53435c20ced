""" Experiment layer: order-preservation trials, smoothed positive-part diagnostics and necessity probes. """

from .necessity import build_necessity_scenario, drift_gap_probe
from .psi import PsiFamily, g, psi
from .scenario import NecessityConfig, ScenarioSpec, TrialConfig
from .trial import psi_functional_trace, run_preservation_trial, run_replication, violation_stat

__all__ = ("ScenarioSpec",
           "TrialConfig",
           "NecessityConfig",
           "PsiFamily",
           "psi",
           "g",
           "violation_stat",
           "psi_functional_trace",
           "run_replication",
           "run_preservation_trial",
           "build_necessity_scenario",
           "drift_gap_probe")
