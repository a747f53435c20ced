import itertools
import math

import numpy as np
import pytest

from pathorder.common.helpers import DimensionError, SolverCapError
from pathorder.measures import (EmpiricalMeasure, WeightedMeasure, cost_matrix, meet_pushforward, stochastic_leq, w2,
                                weighted_stochastic_leq)


def brute_w2(x, y):
    cost = cost_matrix(x, y)
    n = len(x)
    return math.sqrt(min(math.fsum(cost[i, p[i]] for i in range(n)) for p in itertools.permutations(range(n))) / n)


def brute_dominance(x, y):
    n = len(x)
    return any(all(np.all(x[i] <= y[p[i]]) for i in range(n)) for p in itertools.permutations(range(n)))


class TestW2:

    def test_identical(self, rng):
        mu = EmpiricalMeasure(rng.normal(size=(6, 2, 3)))
        assert w2(mu, mu) == 0.

    def test_permutation_invariant(self, rng):
        data = rng.normal(size=(6, 1, 3))
        other = EmpiricalMeasure(rng.normal(size=(6, 1, 3)))
        assert w2(EmpiricalMeasure(data), other) == pytest.approx(w2(EmpiricalMeasure(data[::-1]), other),
                                                                 abs=1e-14)

    def test_shift(self):
        data = np.zeros((3, 1, 2))
        assert w2(EmpiricalMeasure(data), EmpiricalMeasure(data + 0.5)) == pytest.approx(0.5)

    def test_oracle(self, rng):
        for _ in range(200):
            n = rng.integers(1, 8)
            x = rng.normal(size=(n, 1, 3))
            y = rng.normal(size=(n, 1, 3))
            assert w2(EmpiricalMeasure(x), EmpiricalMeasure(y)) == pytest.approx(brute_w2(x, y), abs=1e-12)

    def test_metric(self, rng):
        for _ in range(40):
            n = rng.integers(1, 8)
            x, y, z = (EmpiricalMeasure(rng.normal(size=(n, 2, 3))) for _ in range(3))
            assert w2(x, y) == pytest.approx(w2(y, x), abs=1e-12)
            assert w2(x, z) <= w2(x, y) + w2(y, z) + 1e-12

    def test_cap(self):
        mu = EmpiricalMeasure(np.zeros((5, 1, 1)))
        with pytest.raises(SolverCapError):
            w2(mu, mu, cap=4)

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            w2(EmpiricalMeasure(np.zeros((2, 1, 2))), EmpiricalMeasure(np.zeros((3, 1, 2))))


class TestDominance:

    def test_shifted(self, rng):
        data = rng.normal(size=(5, 2, 3))
        witness = stochastic_leq(EmpiricalMeasure(data), EmpiricalMeasure(data + 1))
        assert witness.holds
        assert witness.matching == [(i, i) for i in range(5)]

    def test_reflexive(self, rng):
        mu = EmpiricalMeasure(rng.normal(size=(4, 1, 3)))
        assert stochastic_leq(mu, mu).holds

    def test_matching_is_witness(self, input_files):
        from pathorder.measures import load_measure
        mu = load_measure(input_files / 'mu_small.json')
        nu = load_measure(input_files / 'nu_small.json')
        witness = stochastic_leq(mu, nu)
        assert witness.holds
        assert sorted(witness.matching) == [(0, 1), (1, 2), (2, 0)]
        assert not stochastic_leq(nu, mu).holds

    def test_oracle(self, rng):
        for _ in range(200):
            n = rng.integers(1, 8)
            x = rng.integers(-1, 2, size=(n, 1, 3)).astype(float)
            y = rng.integers(-1, 2, size=(n, 1, 3)).astype(float)
            witness = stochastic_leq(EmpiricalMeasure(x), EmpiricalMeasure(y))
            assert witness.holds is brute_dominance(x, y)
            if witness.holds:
                assert sorted(i for i, _ in witness.matching) == list(range(n))
                assert sorted(j for _, j in witness.matching) == list(range(n))
                assert all(np.all(x[i] <= y[j]) for i, j in witness.matching)

    def test_weighted_agrees_on_uniform(self, rng):
        for _ in range(50):
            n = rng.integers(1, 6)
            x = rng.integers(-1, 2, size=(n, 1, 2)).astype(float)
            y = rng.integers(-1, 2, size=(n, 1, 2)).astype(float)
            expected = stochastic_leq(EmpiricalMeasure(x), EmpiricalMeasure(y)).holds
            assert weighted_stochastic_leq(EmpiricalMeasure(x), EmpiricalMeasure(y)).holds is expected

    def test_weighted_mass(self):
        p = WeightedMeasure(np.array([[[0.]], [[1.]]]), [0.5, 0.5])
        q_ok = WeightedMeasure(np.array([[[2.]]]), [1.])
        q_low = WeightedMeasure(np.array([[[0.5]], [[2.]]]), [0.75, 0.25])
        assert weighted_stochastic_leq(p, q_ok).holds
        assert weighted_stochastic_leq(p, q_ok).matching is None
        assert not weighted_stochastic_leq(p, q_low).holds


class TestMeetPushforward:

    def test_full_product(self):
        mu = EmpiricalMeasure(np.array([[[0., 2.]], [[1., 1.]]]))
        nu = EmpiricalMeasure(np.array([[[1., 0.]]]))
        meet = meet_pushforward(mu, nu)
        assert meet.N == 2
        assert meet.data[:, 0].tolist() == [[0., 0.], [1., 0.]]
        assert meet.weights.tolist() == [0.5, 0.5]
        assert meet.subsample_seed is None

    def test_subsampled(self, rng):
        mu = EmpiricalMeasure(rng.normal(size=(10, 1, 2)))
        with pytest.warns(RuntimeWarning, match="exceeds the cap"):
            meet = meet_pushforward(mu, mu, cap=20, seed=5)
        assert meet.N == 20
        assert meet.subsample_seed == 5
        again = meet_pushforward(mu, mu, cap=20, seed=5)
        assert np.array_equal(meet.data, again.data)

    def test_below_both(self, rng):
        for _ in range(40):
            n = rng.integers(1, 8)
            mu = EmpiricalMeasure(rng.normal(size=(n, 1, 3)))
            nu = EmpiricalMeasure(rng.normal(size=(n, 1, 3)))
            meet = meet_pushforward(mu, nu)
            assert meet.N == n * n
            assert weighted_stochastic_leq(meet, mu).holds
            assert weighted_stochastic_leq(meet, nu).holds
