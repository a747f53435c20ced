""" Randomised checkers for the Lipschitz and growth assumptions and for the sufficient order conditions. """

from .basecondition import BaseCondition, DiffusionStructureCondition, DriftOrderCondition, GrowthCondition
from .estimates import check_conditions, check_h2, estimate_h1
from .order import check_diffusion_structure, check_drift_order
from .probes import probe_rng

__all__ = ("estimate_h1",
           "check_h2",
           "check_drift_order",
           "check_diffusion_structure",
           "check_conditions",
           "probe_rng",
           "BaseCondition",
           "DriftOrderCondition",
           "DiffusionStructureCondition",
           "GrowthCondition")
