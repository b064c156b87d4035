import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from orthospeed.oracle import oracle_concurrence
from orthospeed.states import (
    DomainError,
    NonFiniteError,
    NotNormalizedError,
    ZeroVectorError,
    concurrence,
    family_state,
    haar_batch,
    haar_sample,
    is_symmetric,
    make_state,
    state_from_json,
    state_to_json,
)

from conftest import R2, states


class TestMakeState:
    def test_basis_state(self):
        s = make_state(1, 0, 0, 0)
        assert s.c == (1, 0, 0, 0)

    def test_normalize_scales_symmetrically(self):
        s = make_state(1, 0, 0, 1, normalize=True)
        assert s.c[0] == pytest.approx(R2, abs=1e-15)
        assert s.c[3] == pytest.approx(R2, abs=1e-15)
        assert s.c[1] == s.c[2] == 0

    def test_zero_vector(self):
        with pytest.raises(ZeroVectorError):
            make_state(0, 0, 0, 0, normalize=True)
        with pytest.raises(ZeroVectorError):
            make_state(0, 0, 0, 0)

    def test_not_normalized(self):
        with pytest.raises(NotNormalizedError):
            make_state(1, 1, 0, 0)
        with pytest.raises(NotNormalizedError):
            make_state(1 + 1e-10, 0, 0, 0)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, complex(0, math.inf)])
    def test_non_finite(self, bad):
        with pytest.raises(NonFiniteError):
            make_state(bad, 0, 0, 0, normalize=True)

    def test_pair_amplitudes(self):
        s = make_state([0, 1], [0, 0], [0, 0], [0, 0])
        assert s.c[0] == 1j


class TestJson:
    def test_round_trip_is_exact(self, rng):
        s = haar_sample(rng)
        assert state_from_json(state_to_json(s)) == s

    def test_normalize_flag(self):
        s = state_from_json({"c": [[1, 0], [0, 0], [0, 0], [1, 0]], "normalize": True})
        assert abs(s.c[3]) == pytest.approx(R2)

    @pytest.mark.parametrize("obj", [
        {}, {"c": [[1, 0]]}, {"c": [[1, 0, 0], [0, 0], [0, 0], [0, 0]]},
        {"c": [[1, 0], [0, 0], [0, 0], [0, 0]], "normalize": "yes"},
    ])
    def test_malformed(self, obj):
        with pytest.raises(ValueError):
            state_from_json(obj)


class TestConcurrence:
    def test_bell(self, bell):
        assert concurrence(bell) == pytest.approx(1.0, abs=1e-12)

    def test_product(self):
        assert concurrence(make_state(1, 0, 0, 0)) == 0.0

    def test_family_midpoint_matches_reduced_state_oracle(self):
        s = make_state(R2, 0.5, 0.5, 0)
        assert oracle_concurrence(s) == pytest.approx(0.5, abs=1e-12)
        assert concurrence(s) == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("x", [0.0, 0.1, 0.3, 0.5, 0.9, 1.0])
    def test_family_is_sqrt_x_one_minus_x(self, x):
        # half of the 2 sqrt(x(1-x)) one might read off the family definition
        s = family_state(x)
        assert concurrence(s) == pytest.approx(math.sqrt(x * (1 - x)), abs=1e-12)
        assert oracle_concurrence(s) == pytest.approx(math.sqrt(x * (1 - x)), abs=1e-7)

    @given(states())
    def test_range(self, s):
        assert 0.0 <= concurrence(s) <= 1.0 + 1e-12

    @settings(max_examples=300)
    @given(st.floats(0.0, 0.5), st.floats(0.0, 1.0), st.lists(st.floats(0, 2 * math.pi), min_size=4, max_size=4))
    def test_fixed_concurrence_observation(self, a, split, ph):
        # |c0| = |c3|  =>  C >= 4|c0|^2 - 1
        rest = 1.0 - 2.0 * a
        mods = [math.sqrt(a), math.sqrt(rest * split), math.sqrt(rest * (1 - split)), math.sqrt(a)]
        s = make_state(*(m * complex(math.cos(p), math.sin(p)) for m, p in zip(mods, ph)), normalize=True)
        assert concurrence(s) >= 4 * s.probs[0] - 1 - 1e-12


class TestFamily:
    def test_endpoints_and_midpoint(self):
        assert family_state(0.0).c == pytest.approx((R2, 0, R2, 0), abs=1e-15)
        assert family_state(0.5).c == pytest.approx((R2, 0.5, 0.5, 0), abs=1e-15)
        assert family_state(1.0).c == pytest.approx((R2, R2, 0, 0), abs=1e-15)

    @pytest.mark.parametrize("x", [-1e-9, 1.0000001, math.nan])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            family_state(x)

    @given(st.floats(0.0, 1.0))
    def test_populations(self, x):
        p = family_state(x).probs
        assert p[0] == pytest.approx(0.5, abs=1e-15)
        assert p[1] + p[2] == pytest.approx(0.5, abs=1e-15)
        assert p[3] == 0.0


class TestSymmetry:
    def test_bosonic_family_member(self):
        assert is_symmetric(family_state(0.5), 1e-12)

    def test_singlet_is_antisymmetric(self):
        assert not is_symmetric(make_state(0, R2, -R2, 0), 1e-12)

    def test_product(self):
        assert is_symmetric(make_state(1, 0, 0, 0), 1e-12)

    @pytest.mark.parametrize("x", [0.0, 0.2, 0.49, 0.51, 0.8, 1.0])
    def test_other_family_members(self, x):
        assert not is_symmetric(family_state(x), 1e-6)


class TestHaar:
    def test_norm(self, rng):
        for _ in range(100):
            assert haar_sample(rng).norm2() == pytest.approx(1.0, abs=1e-12)

    def test_seed_reproducible(self):
        a = haar_sample(np.random.default_rng(5))
        b = haar_sample(np.random.default_rng(5))
        assert a == b

    def test_batch_matches_scalar_stream(self):
        batch = haar_batch(np.random.default_rng(9), 5)
        rng = np.random.default_rng(9)
        for row in batch:
            assert np.allclose(row, haar_sample(rng).as_array(), atol=1e-15)

    def test_c3_population_law(self):
        # |c3|^2 ~ Beta(1, 3); tail mass below u is 1 - (1 - u)^3
        u = 1e-3
        tail = integrate.quad(lambda v: 3 * (1 - v) ** 2, 0, u)[0]
        assert tail == pytest.approx(stats.beta(1, 3).cdf(u), rel=1e-12)
        assert tail == pytest.approx(0.002997001, rel=1e-12)

        p3 = np.abs(haar_batch(np.random.default_rng(1), 10**6)[:, 3]) ** 2
        assert abs(p3.mean() - 0.25) < 0.002
        assert abs(np.mean(p3 < u) - tail) < 3e-4
