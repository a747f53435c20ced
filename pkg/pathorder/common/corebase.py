""" Abstract classes used to construct combinable :class:`.BaseCondition` objects. """

import inspect
from abc import ABC, abstractmethod
from typing import Iterator, List, Optional

__all__ = ("_CoreBase", "_CombiCore", "_OrCore", "_AndCore")


class _CoreBase(ABC):
    """ Base on which :class:`.BaseCondition` is built.
    Keeps the verdict of the last evaluation (:obj:`None` before any) and the violations which produced it.
    """

    def __init__(self):
        self._last_result: Optional[bool] = None
        self._violations: List = []

    @property
    def last_result(self) -> Optional[bool]:
        return self._last_result

    @last_result.setter
    def last_result(self, val: Optional[bool]):
        self._last_result = val

    @property
    def violations(self) -> List:
        """ Violations found during the last evaluation. """
        return self._violations

    @abstractmethod
    def __call__(self, *args, **kwargs) -> bool:
        """ Returns :obj:`True` if the condition holds on every probe. """

    def __iter__(self) -> Iterator['_CoreBase']:
        yield self

    def __str__(self) -> str:
        """ Class name followed by the constructor arguments stored on the instance. """
        args = [f"{name}={getattr(self, name)}" if hasattr(self, name) else name
                for name in inspect.signature(self.__init__).parameters]
        return f"{type(self).__name__}({', '.join(args)})"

    def str_with_result(self) -> str:
        return f"{self} = {self._last_result}"

    def reset(self):
        self._last_result = None
        self._violations = []


class _CombiCore(_CoreBase):
    """ Pair of :class:`_CoreBase`\\s joined by :attr:`keyword`.
    Evaluation stops at the first base which decides the combination; later bases keep :obj:`None` as their result.
    After :meth:`exhaustively` every base is evaluated and reports its own result and violations.
    """

    keyword = ''
    decisive = True  # Verdict of a base which ends evaluation early
    exhaustive = False

    def __init__(self, base1: _CoreBase, base2: _CoreBase):
        super().__init__()
        if not all(isinstance(base, _CoreBase) for base in (base1, base2)):
            raise TypeError(f"Only conditions can be combined with '{self.keyword}', got "
                            f"{type(base1).__name__} and {type(base2).__name__}.")
        self._parts = (base1, base2)

    def __call__(self, *args, **kwargs) -> bool:
        self.reset()
        result = not self.decisive
        for part in self._parts:
            verdict = bool(part(*args, **kwargs))
            if verdict is self.decisive:
                result = verdict
                if not self.exhaustive:
                    break
        self._last_result = result
        return result

    def exhaustively(self) -> '_CombiCore':
        """ Switches this combination, and any nested in it, to evaluating every base. Returns itself. """
        self.exhaustive = True
        for part in self._parts:
            if isinstance(part, _CombiCore):
                part.exhaustively()
        return self

    @property
    def violations(self) -> List:
        return [v for base in self for v in base.violations]

    def reset(self):
        super().reset()
        for part in self._parts:
            part.reset()

    def __iter__(self) -> Iterator[_CoreBase]:
        """ Flattened iteration over the simple conditions making up the combination. """
        for part in self._parts:
            yield from part

    def __str__(self) -> str:
        first, second = self._parts
        return f"[{first} {self.keyword} \n{second}]"

    def str_with_result(self) -> str:
        first, second = self._parts
        return f"[{first.str_with_result()} {self.keyword} \n{second.str_with_result()}]"


class _OrCore(_CombiCore):
    keyword = '|'
    decisive = True


class _AndCore(_CombiCore):
    keyword = '&'
    decisive = False
