"""Trajectory integration: the integrator against a closed-form linear
benchmark, tolerance scaling, reversibility, derived-series identities,
and the early-stopping statuses."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from olgdyn.flow import (
    ATOL,
    RTOL,
    Box,
    Trajectory,
    integrate,
    solvency_report,
    vector_field,
)
from olgdyn.portrait import heteroclinic
from olgdyn.steady import solve_activist, solve_debt_targeting
from scipy.integrate import solve_ivp


class TestLinearBenchmark:
    """Integrate a frozen linear system with the same solver settings and
    compare against the matrix exponential."""

    A = np.array([[-0.3, 0.7], [-0.7, -0.3]])
    X0 = np.array([1.0, 0.5])

    def _solve(self, t_end, rtol=RTOL, atol=ATOL):
        sol = solve_ivp(lambda t, y: self.A @ y, (0.0, t_end), self.X0,
                        method="RK45", rtol=rtol, atol=atol)
        return sol.y[:, -1]

    def test_matches_matrix_exponential(self):
        t_end = 10.0
        exact = expm(self.A * t_end) @ self.X0
        got = self._solve(t_end)
        assert np.linalg.norm(got - exact) < 1e-9

    def test_error_shrinks_with_tolerance(self):
        t_end = 10.0
        exact = expm(self.A * t_end) @ self.X0
        err_loose = np.linalg.norm(self._solve(t_end, rtol=1e-5, atol=1e-8) - exact)
        err_tight = np.linalg.norm(self._solve(t_end, rtol=1e-9, atol=1e-12) - exact)
        ratio = err_loose / err_tight
        assert ratio > 8.0


class TestRoundTrip:
    def test_forward_then_backward_returns_to_start(self, fig1):
        x0 = (0.9, 0.0)
        fwd = integrate(fig1.regime, fig1.params, fig1.rule, x0, horizon=2.0,
                        box=fig1.box)
        assert fwd.status == "horizon"
        back = integrate(fig1.regime, fig1.params, fig1.rule, fwd.final_state,
                         horizon=float(fwd.t[-1]), direction="backward",
                         box=fig1.box)
        err = math.hypot(back.final_state[0] - x0[0], back.final_state[1] - x0[1])
        assert err < 1e-7


class TestDerivedSeries:
    def test_portfolio_identity_and_rule_consistency(self, fig2):
        traj = integrate(fig2.regime, fig2.params, fig2.rule, (3.9, 0.0),
                         horizon=5.0, box=fig2.box)
        assert np.allclose(traj.b + traj.m, traj.a, rtol=0, atol=1e-14)
        for R, pi in zip(traj.R, traj.pi):
            assert R == pytest.approx(fig2.rule.psi(pi), rel=1e-14)

    def test_sampled_path_satisfies_field(self, fig2):
        # central differences of the dense-sampled path reproduce the field
        traj = integrate(fig2.regime, fig2.params, fig2.rule, (3.9, 0.0),
                         horizon=5.0, sample_interval=0.001, box=fig2.box)
        i = len(traj.t) // 2
        dt = traj.t[i + 1] - traj.t[i - 1]
        da = (traj.a[i + 1] - traj.a[i - 1]) / dt
        dpi = (traj.pi[i + 1] - traj.pi[i - 1]) / dt
        fa, fpi = vector_field(fig2.regime, fig2.params, fig2.rule,
                               (traj.a[i], traj.pi[i]))
        assert da == pytest.approx(fa, rel=1e-4, abs=1e-9)
        assert dpi == pytest.approx(fpi, rel=1e-4, abs=1e-9)


class TestRegime1Analytic:
    def test_liabilities_decay_is_exponential(self, fig1):
        # a(t) - a* = (a0 - a*) exp(-phi t), decoupled from inflation
        a0 = 0.9
        traj = integrate(fig1.regime, fig1.params, fig1.rule, (a0, 0.0),
                         horizon=2.0, sample_interval=0.1, box=fig1.box)
        a_star, phi = fig1.regime.a_star, fig1.regime.phi
        exact = a_star + (a0 - a_star) * np.exp(-phi * traj.t)
        assert np.allclose(traj.a, exact, rtol=1e-8, atol=1e-10)


class TestEarlyStopping:
    def test_convergence_event(self, fig1):
        trap, target = solve_debt_targeting(fig1.params, fig1.rule, fig1.regime)
        # start near the trap, well inside its basin
        traj = integrate(fig1.regime, fig1.params, fig1.rule,
                         (0.6, trap.pi - 0.01), horizon=2000.0,
                         steady_states=[trap, target], box=fig1.box)
        assert traj.status == "converged"
        assert traj.converged_to is trap
        assert traj.t[-1] < 2000.0

    def test_escape_event(self, fig1):
        # far above the high state, inflation explodes upward
        traj = integrate(fig1.regime, fig1.params, fig1.rule, (0.6, 0.3),
                         horizon=2000.0, box=fig1.box)
        assert traj.status == "escaped"
        assert not fig1.box.contains(*traj.final_state) or \
            fig1.box.margin(*traj.final_state) < 1e-8

    def test_horizon_status(self, fig1):
        traj = integrate(fig1.regime, fig1.params, fig1.rule, (0.6, 0.0),
                         horizon=1.0, box=fig1.box)
        assert traj.status == "horizon"
        assert traj.t[-1] == pytest.approx(1.0)

    def test_bad_arguments_rejected(self, fig1):
        with pytest.raises(ValueError):
            integrate(fig1.regime, fig1.params, fig1.rule, (0.6, 0.0),
                      horizon=-1.0)
        with pytest.raises(ValueError):
            integrate(fig1.regime, fig1.params, fig1.rule, (0.6, 0.0),
                      horizon=1.0, direction="sideways")


class TestSolvency:
    @pytest.fixture()
    def orbit(self, fig2):
        trap, target = solve_activist(fig2.params, fig2.rule, fig2.regime)
        return heteroclinic(fig2.regime, fig2.params, fig2.rule, trap, target,
                            box=fig2.box)

    def test_connecting_orbit_satisfies_budget(self, fig2, orbit):
        assert orbit.status == "converged"
        rep = solvency_report(orbit, fig2.params, fig2.rule, fig2.regime,
                              horizon=2000.0)
        assert not rep.truncated
        assert abs(rep.discounted_terminal) < 1e-3
        assert abs(rep.ibc_residual) < 1e-2 * orbit.a[0]
        assert rep.theta_integral != 0.0

    def test_horizon_extension_shrinks_discounted_terminal(self, fig2, orbit):
        short = solvency_report(orbit, fig2.params, fig2.rule, fig2.regime)
        long = solvency_report(orbit, fig2.params, fig2.rule, fig2.regime,
                               horizon=2000.0)
        assert long.discounted_terminal < short.discounted_terminal
