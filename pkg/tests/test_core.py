import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nystrom import NumericalBlowUp, NystromTableau, StepState, dprkn4_tableau, integrate, iter_states, step
from nystrom.core import SecondOrderIVP, step_count, trajectory_arrays
from nystrom.problems import make_problem

from oracles import DPRKN4, poly_A, poly_A_prime, poly_B, poly_B_prime

# A(z^2) of the closed-form expansion at z = 1/2, evaluated exactly
A_AT_HALF = 0.877588794849537
A_PRIME_AT_HALF = -0.23969449853046768


def zero_accel(t, u):
    return np.zeros_like(u)


def oscillator(z):
    return lambda t, u: -(z * z) * u


class TestTableau:
    def test_dprkn4_shapes_and_nodes(self):
        tab = dprkn4_tableau()
        assert tab.m == 4
        assert tab.c[0] == 0.0 and tab.c[-1] == 1.0
        assert np.all(np.triu(tab.a) == 0.0)

    def test_rejects_implicit_stage_matrix(self):
        with pytest.raises(ValueError, match="strictly lower"):
            NystromTableau([0.0, 1.0], [[0.0, 0.5], [0.5, 0.0]], [0.5, 0.0], [0.5, 0.5])

    @pytest.mark.parametrize("c", [[0.1, 1.0], [0.0, 0.9]])
    def test_rejects_bad_nodes(self, c):
        with pytest.raises(ValueError, match="nodes"):
            NystromTableau(c, [[0.0, 0.0], [0.5, 0.0]], [0.5, 0.0], [0.5, 0.5])

    def test_rejects_nonfinite_and_shape_mismatch(self):
        with pytest.raises(ValueError, match="finite"):
            NystromTableau([0.0, 1.0], [[0.0, 0.0], [np.nan, 0.0]], [0.5, 0.0], [0.5, 0.5])
        with pytest.raises(ValueError, match="shapes"):
            NystromTableau([0.0, 1.0], [[0.0, 0.0], [0.5, 0.0]], [0.5], [0.5, 0.5])

    def test_immutable_and_with_entry_copies(self):
        tab = dprkn4_tableau()
        with pytest.raises(ValueError):
            tab.a[3, 2] = 1.0
        other = tab.with_entry(3, 2, 0.1)
        assert other.a[3, 2] == 0.1
        assert tab.a[3, 2] == pytest.approx(25 / 189, abs=0)
        assert other != tab


class TestStep:
    def test_zero_acceleration_is_a_straight_line(self):
        s = step(dprkn4_tableau(), zero_accel, StepState(0.0, np.array([1.0]), np.array([2.0])), 0.5)
        assert s.t == 0.5
        np.testing.assert_array_equal(s.u, [2.0])
        np.testing.assert_array_equal(s.v, [2.0])

    def test_zero_frequency_leaves_state_unchanged(self):
        s = step(dprkn4_tableau(), oscillator(0.0), StepState(0.0, np.array([1.0]), np.array([0.0])), 1.0)
        assert s.u[0] == 1.0 and s.v[0] == 0.0

    def test_test_equation_matches_closed_form_A(self):
        s = step(dprkn4_tableau(), oscillator(0.5), StepState(0.0, np.array([1.0]), np.array([0.0])), 1.0)
        assert s.u[0] == pytest.approx(A_AT_HALF, abs=1e-13)
        assert s.v[0] == pytest.approx(A_PRIME_AT_HALF, abs=1e-13)

    def test_evaluates_accel_exactly_m_times(self):
        calls = []

        def accel(t, u):
            calls.append(t)
            return -u

        tab = dprkn4_tableau()
        step(tab, accel, StepState(2.0, np.array([1.0, 0.0]), np.array([0.0, 1.0])), 0.1)
        assert len(calls) == tab.m
        np.testing.assert_allclose(calls, 2.0 + 0.1 * tab.c, rtol=0, atol=1e-15)

    def test_deterministic_and_does_not_mutate(self):
        u = np.array([1.0, 0.0])
        v = np.array([0.0, 1.0])
        s0 = StepState(0.0, u, v)
        accel = make_problem("twobody").accel
        s1 = step(dprkn4_tableau(), accel, s0, 0.05)
        s2 = step(dprkn4_tableau(), accel, s0, 0.05)
        np.testing.assert_array_equal(s1.u, s2.u)
        np.testing.assert_array_equal(s1.v, s2.v)
        np.testing.assert_array_equal(u, [1.0, 0.0])
        np.testing.assert_array_equal(v, [0.0, 1.0])

    def test_zero_step_rejected(self):
        with pytest.raises(ValueError):
            step(dprkn4_tableau(), zero_accel, StepState(0.0, np.array([1.0]), np.array([0.0])), 0.0)

    def test_blowup_reports_stage(self):
        def accel(t, u):
            return np.array([np.inf]) if t > 0.3 else -u

        with pytest.raises(NumericalBlowUp) as info:
            step(dprkn4_tableau(), accel, StepState(0.0, np.array([1.0]), np.array([0.0])), 1.0)
        # c = (0, 1/4, 7/10, 1): stage 2 is the first with t > 0.3
        assert info.value.stage == 2

    def test_twobody_collision_guard(self):
        accel = make_problem("twobody").accel
        with pytest.raises(NumericalBlowUp) as info:
            step(dprkn4_tableau(), accel, StepState(0.0, np.array([0.0, 0.0]), np.array([0.0, 0.0])), 0.1)
        assert info.value.stage == 0

    @settings(max_examples=50, deadline=None)
    @given(z=st.floats(min_value=1e-3, max_value=2.0))
    def test_linear_on_test_equation(self, z):
        tab = dprkn4_tableau()
        u0, hv0 = 0.3, -1.7
        s = step(tab, oscillator(z), StepState(0.0, np.array([u0]), np.array([hv0])), 1.0)
        coeffs = {k: float(x) for k, x in DPRKN4.items()}
        A, B = poly_A(z, **coeffs), poly_B(z, **coeffs)
        Ap, Bp = poly_A_prime(z, **coeffs), poly_B_prime(z, **coeffs)
        assert s.u[0] == pytest.approx(A * u0 + B * hv0, abs=1e-12)
        assert s.v[0] == pytest.approx(Ap * u0 + Bp * hv0, abs=1e-12)


class TestIntegrate:
    def test_zero_accel_grid(self):
        ivp = SecondOrderIVP(dim=1, accel=zero_accel, t0=0.0, u0=[1.0], v0=[2.0], nu=1.0)
        states = integrate(dprkn4_tableau(), ivp, 0.25, 1.0)
        assert len(states) == 5
        assert states[-1].t == 1.0
        np.testing.assert_allclose([s.u[0] for s in states], [1.0, 1.5, 2.0, 2.5, 3.0], rtol=0, atol=1e-15)

    def test_no_partial_final_step(self):
        ivp = SecondOrderIVP(dim=1, accel=zero_accel, t0=0.0, u0=[0.0], v0=[1.0], nu=1.0)
        states = integrate(dprkn4_tableau(), ivp, 0.3, 1.0)
        assert [round(s.t, 12) for s in states] == [0.0, 0.3, 0.6, 0.9]

    @pytest.mark.parametrize(
        "t_end,h,expected", [(100.0, 0.025, 4000), (5000.0, 0.025, 200000), (1000.0, 0.05, 20000), (1.0, 0.3, 3)]
    )
    def test_step_count(self, t_end, h, expected):
        assert step_count(0.0, t_end, h) == expected

    def test_step_count_preconditions(self):
        with pytest.raises(ValueError):
            step_count(0.0, 1.0, -0.1)
        with pytest.raises(ValueError):
            step_count(1.0, 1.0, 0.1)

    def test_streaming_matches_full(self):
        ivp = make_problem("francopalacios")
        tab = dprkn4_tableau()
        full = integrate(tab, ivp, 0.5, 20.0)
        lazy = list(iter_states(tab, ivp, 0.5, 20.0))
        for a, b in zip(full, lazy):
            assert a.t == b.t
            np.testing.assert_array_equal(a.u, b.u)

    def test_twobody_one_period(self):
        ivp = make_problem("twobody")
        states = integrate(dprkn4_tableau(), ivp, 0.025, 2 * math.pi)
        # 2 pi / 0.025 = 251.3: the grid stops at 251 h without a partial step
        assert len(states) == 252
        last = states[-1]
        assert np.max(np.abs(last.u - ivp.exact(last.t))) <= 1e-6

    def test_twobody_closes_orbit(self):
        ivp = make_problem("twobody")
        h = 2 * math.pi / 252
        last = integrate(dprkn4_tableau(), ivp, h, 2 * math.pi)[-1]
        assert last.t == pytest.approx(2 * math.pi, abs=1e-12)
        assert np.max(np.abs(last.u - [1.0, 0.0])) <= 1e-6

    def test_blowup_carries_step_index(self):
        def accel(t, u):
            return np.array([np.nan]) if t >= 0.45 else -u

        ivp = SecondOrderIVP(dim=1, accel=accel, t0=0.0, u0=[1.0], v0=[0.0], nu=1.0)
        with pytest.raises(NumericalBlowUp) as info:
            integrate(dprkn4_tableau(), ivp, 0.1, 1.0)
        # step 5 starts at t=0.4; its stage nodes sit at 0.4, 0.425, 0.47, 0.5
        assert info.value.step_index == 5
        assert info.value.stage == 2

    def test_exact_mismatch_rejected(self):
        with pytest.raises(ValueError, match="exact"):
            SecondOrderIVP(dim=1, accel=zero_accel, t0=0.0, u0=[1.0], v0=[0.0], nu=1.0, exact=lambda t: [2.0])

    def test_trajectory_arrays(self):
        ivp = make_problem("twobody")
        t, U, V = trajectory_arrays(integrate(dprkn4_tableau(), ivp, 0.5, 2.0))
        assert t.shape == (5,) and U.shape == (5, 2) and V.shape == (5, 2)


def _max_error(tab, h, t_end=10.0):
    ivp = make_problem("twobody")
    t, U, _ = trajectory_arrays(integrate(tab, ivp, h, t_end))
    exact = np.array([ivp.exact(x) for x in t])
    return np.max(np.abs(U - exact))


@pytest.mark.parametrize("h", [0.1, 0.05])
def test_classical_order_four_on_kepler(h):
    tab = dprkn4_tableau()
    p = math.log2(_max_error(tab, h) / _max_error(tab, h / 2))
    assert abs(p - 4) <= 0.3
