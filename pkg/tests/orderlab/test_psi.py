import numpy as np
import pytest
from scipy.integrate import quad

from pathorder.orderlab import PsiFamily, g, psi

S = np.linspace(-0.5, 1.5, 401)


class TestPsiFamily:

    @pytest.mark.parametrize('n', [1, 2, 5, 10])
    def test_derivatives_integrate(self, n):
        family = PsiFamily(n)
        knots = [1 / (2 * n), 1 / n]
        for s in [0.1 / n, 1 / (2 * n), 0.7 / n, 1 / n, 2.]:
            d1, _ = quad(family.d2, 0, s, points=[k for k in knots if k < s] or None)
            value, _ = quad(family.d1, 0, s, points=[k for k in knots if k < s] or None)
            assert family.d1(s) == pytest.approx(d1, abs=1e-10)
            assert family.value(s) == pytest.approx(value, abs=1e-10)

    @pytest.mark.parametrize('n', [1, 3, 8])
    def test_bounds(self, n):
        value, d1, d2 = psi(n, S)
        positive = np.maximum(S, 0)
        assert np.all(value >= 0)
        assert np.all(positive - value >= -1e-15)
        assert np.all(positive - value <= 1 / (2 * n) + 1e-15)
        assert np.all((0 <= d1) & (d1 <= 1 + 1e-15))
        assert np.all((0 <= d2) & (d2 <= 2 * n + 1e-12))

    @pytest.mark.parametrize('n', [1, 4])
    def test_knots(self, n):
        family = PsiFamily(n)
        knot = 1 / (2 * n)
        assert family.value(knot) == pytest.approx(1 / (12 * n))
        assert family.value(np.nextafter(knot, 1)) == pytest.approx(1 / (12 * n))
        assert family.value(1 / n) == pytest.approx(1 / (2 * n))
        assert family.d2(knot) == pytest.approx(2 * n)
        assert family.d1(1 / n) == 1.

    def test_non_positive(self):
        assert psi(3, -1.) == (0., 0., 0.)
        assert psi(3, 0.) == (0., 0., 0.)

    def test_shapes(self):
        value, d1, d2 = psi(2, np.zeros((3, 4)))
        assert value.shape == d1.shape == d2.shape == (3, 4)
        assert isinstance(psi(2, 0.5)[0], float)

    def test_converges(self):
        errors = [np.max(np.maximum(S, 0) - PsiFamily(n).value(S)) for n in (1, 10, 100)]
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] <= 1 / 200 + 1e-12

    @pytest.mark.parametrize('n', [0, -1, 1.5])
    def test_invalid(self, n):
        with pytest.raises(ValueError):
            PsiFamily(n)


class TestG:

    def test_values(self):
        s = np.array([-2., -0.1, 0.])
        assert np.allclose(g(4, s), np.expm1(4 * s))
        assert g(4, 0.) == 0.

    def test_bounded_below(self):
        values = g(10, -np.logspace(-3, 3, 50))
        assert np.all((-1 <= values) & (values < 0))
