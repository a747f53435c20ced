""" Twice differentiable approximations of the positive part and the exponential diagnostic. """

from typing import Tuple, Union

import numpy as np

__all__ = ("PsiFamily",
           "psi",
           "g")

ArrayLike = Union[float, np.ndarray]


class PsiFamily:
    """ :math:`\\psi_n`, the :math:`C^2` approximation of :math:`s \\mapsto s^+` whose second derivative is the
    piecewise linear hat

    .. math::

        \\psi_n''(s) = \\begin{cases} 4n^2 s & s \\in [0, \\frac{1}{2n}] \\\\
                                       4n^2 (\\frac{1}{n} - s) & s \\in [\\frac{1}{2n}, \\frac{1}{n}] \\\\
                                       0 & \\text{otherwise} \\end{cases}

    with :math:`\\psi_n(s) = \\psi_n'(s) = 0` for :math:`s \\leq 0`. It follows that :math:`\\psi_n(s) = s - 1/(2n)`
    for :math:`s \\geq 1/n` and :math:`0 \\leq s^+ - \\psi_n(s) \\leq 1/(2n)`.

    Parameters
    ----------
    n
        Smoothing index, at least one.
    """

    def __init__(self, n: int):
        if int(n) != n or n < 1:
            raise ValueError(f"n must be a positive integer, got {n}.")
        self.n = int(n)

    def _pieces(self, s: ArrayLike):
        s = np.asarray(s, dtype=float)
        knot = 1 / (2 * self.n)
        end = 1 / self.n
        return s, s <= 0, (s > 0) & (s <= knot), (s > knot) & (s < end), s >= end

    def value(self, s: ArrayLike) -> ArrayLike:
        s, neg, low, high, top = self._pieces(s)
        n2 = self.n * self.n
        rest = 1 / self.n - s
        out = np.select([neg, low, high, top],
                        [0., 2 * n2 * s ** 3 / 3, s - 1 / (2 * self.n) + (2 * n2 / 3) * rest ** 3,
                         s - 1 / (2 * self.n)])
        return out if out.ndim else float(out)

    def d1(self, s: ArrayLike) -> ArrayLike:
        s, neg, low, high, top = self._pieces(s)
        n2 = self.n * self.n
        out = np.select([neg, low, high, top], [0., 2 * n2 * s ** 2, 1 - 2 * n2 * (1 / self.n - s) ** 2, 1.])
        return out if out.ndim else float(out)

    def d2(self, s: ArrayLike) -> ArrayLike:
        s, neg, low, high, top = self._pieces(s)
        n2 = self.n * self.n
        out = np.select([neg, low, high, top], [0., 4 * n2 * s, 4 * n2 * (1 / self.n - s), 0.])
        return out if out.ndim else float(out)

    def __call__(self, s: ArrayLike) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
        return self.value(s), self.d1(s), self.d2(s)

    def __repr__(self) -> str:
        return f"PsiFamily(n={self.n})"


def psi(n: int, s: ArrayLike) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
    """ Returns :math:`(\\psi_n(s), \\psi_n'(s), \\psi_n''(s))`.

    Examples
    --------
    >>> psi(2, 1.)
    (0.75, 1.0, 0.0)
    """
    return PsiFamily(n)(s)


def g(n: int, s: ArrayLike) -> ArrayLike:
    """ :math:`g_n(s) = e^{ns} - 1`, used on :math:`s \\leq 0` where it is bounded with bounded derivatives.

    Examples
    --------
    >>> g(3, 0.)
    0.0
    """
    out = np.expm1(n * np.asarray(s, dtype=float))
    return out if out.ndim else float(out)
