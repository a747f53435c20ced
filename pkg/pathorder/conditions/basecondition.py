""" Combinable condition objects. Conditions can be joined with :code:`&` and :code:`|` and report the result of
their last evaluation together with the violations which produced it.
"""

import logging
from abc import abstractmethod
from concurrent.futures import Executor
from typing import Optional, Sequence, Tuple

from .estimates import check_h2
from .order import check_diffusion_structure, check_drift_order
from ..coeffs import CoeffModel
from ..common.corebase import _AndCore, _CoreBase, _OrCore
from ..common.namedtuples import ProbeConfig

__all__ = ("BaseCondition",
           "DriftOrderCondition",
           "DiffusionStructureCondition",
           "GrowthCondition")


class BaseCondition(_CoreBase):
    """ Abstract class from which all conditions inherit.

    Attributes
    ----------
    logger : logging.Logger
        :class:`logging.Logger` instance into which status messages may be added.
    """

    def __init__(self):
        self.logger = logging.getLogger('pathorder.conditions')
        super().__init__()

    @abstractmethod
    def __call__(self, models: Tuple[CoeffModel, CoeffModel], executor: Optional[Executor] = None) -> bool:
        """ Evaluates the condition on a pair of models.

        Returns
        -------
        bool
            :obj:`True` if no probe violated the condition.

        Notes
        -----
        The result must be saved to :attr:`last_result` and the violations to :attr:`violations` before
        returning.
        """

    def __or__(self, other: 'BaseCondition') -> '_OrCondition':
        return _OrCondition(self, other)

    def __and__(self, other: 'BaseCondition') -> '_AndCondition':
        return _AndCondition(self, other)


class _OrCondition(_OrCore, BaseCondition):
    def __call__(self, models: Tuple[CoeffModel, CoeffModel], executor: Optional[Executor] = None) -> bool:
        return super().__call__(models, executor)


class _AndCondition(_AndCore, BaseCondition):
    def __call__(self, models: Tuple[CoeffModel, CoeffModel], executor: Optional[Executor] = None) -> bool:
        return super().__call__(models, executor)


class DriftOrderCondition(BaseCondition):
    """ Holds if no probe finds :math:`b^i(t, \\xi, \\mu) > \\bar{b}^i(t, \\eta, \\nu)` on ordered inputs with equal
    :math:`i`-th current values.
    """

    def __init__(self, cfg: ProbeConfig):
        super().__init__()
        self.cfg = cfg

    def __call__(self, models: Tuple[CoeffModel, CoeffModel], executor: Optional[Executor] = None) -> bool:
        self._violations = check_drift_order(models[0], models[1], self.cfg, executor)
        self.last_result = not self._violations
        return self.last_result


class DiffusionStructureCondition(BaseCondition):
    """ Holds if both diffusions agree and each entry :math:`\\sigma^{ij}` depends only on :math:`\\xi^i(0)`. """

    def __init__(self, cfg: ProbeConfig):
        super().__init__()
        self.cfg = cfg

    def __call__(self, models: Tuple[CoeffModel, CoeffModel], executor: Optional[Executor] = None) -> bool:
        self._violations = check_diffusion_structure(models[0], models[1], self.cfg, executor)
        self.last_result = not self._violations
        return self.last_result


class GrowthCondition(BaseCondition):
    """ Holds if the growth profile at the zero segment stays at or below `bound` at every time in `time_points`. """

    def __init__(self, bound: float, time_points: Sequence[float]):
        super().__init__()
        self.bound = bound
        self.time_points = tuple(time_points)
        self.profile = []

    def __call__(self, models: Tuple[CoeffModel, CoeffModel], executor: Optional[Executor] = None) -> bool:
        self.profile = check_h2(models, self.time_points)
        self.last_result = all(v <= self.bound for v in self.profile)
        if not self.last_result:
            self.logger.debug("Growth profile %s exceeds %s.", self.profile, self.bound)
        return self.last_result
