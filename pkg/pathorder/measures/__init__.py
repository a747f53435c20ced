""" Empirical and weighted measures on path space with exact transport, stochastic order and couplings. """

from .coupling import Coupling, marginals, mixture_coupling, monotone_coupling
from .empirical import (EmpiricalMeasure, IncreasingFunctional, WeightedMeasure, as_weighted, functional_mean,
                        sample_increasing_functional)
from .io import (coupling_from_dict, coupling_to_dict, load_coupling, load_measure, measure_from_dict,
                 measure_to_dict, save_coupling, save_measure)
from .transport import (EXACT_SOLVER_CAP, MEET_PRODUCT_CAP, cost_matrix, meet_pushforward, stochastic_leq, w2,
                        weighted_stochastic_leq)

__all__ = ("EmpiricalMeasure",
           "WeightedMeasure",
           "Coupling",
           "IncreasingFunctional",
           "sample_increasing_functional",
           "functional_mean",
           "as_weighted",
           "w2",
           "cost_matrix",
           "stochastic_leq",
           "weighted_stochastic_leq",
           "meet_pushforward",
           "monotone_coupling",
           "mixture_coupling",
           "marginals",
           "EXACT_SOLVER_CAP",
           "MEET_PRODUCT_CAP",
           "measure_to_dict",
           "measure_from_dict",
           "save_measure",
           "load_measure",
           "coupling_to_dict",
           "coupling_from_dict",
           "save_coupling",
           "load_coupling")
