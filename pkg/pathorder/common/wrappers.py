""" Decorators used throughout pathorder. """

import importlib.util
import logging
import warnings
from functools import wraps
from typing import Callable

__all__ = ("needs_optional_package",)


def needs_optional_package(package: str) -> Callable:
    """ Runs the decorated function only if `package` can be imported.
    Otherwise the call is skipped with a :class:`ResourceWarning` and returns :obj:`None`. Used for the optional
    extras listed in ``extra_requirements.txt``.
    """

    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def guarded(*args, **kwargs):
            if importlib.util.find_spec(package) is None:
                message = f"Unable to run {func.__name__} without the {package} package installed."
                logging.getLogger('pathorder').warning(message)
                warnings.warn(message, ResourceWarning)
                return None
            return func(*args, **kwargs)

        return guarded

    return decorator
