"""Vector fields and trajectory integration for both fiscal regimes,
plus solvency diagnostics along computed trajectories.

Integration uses the adaptive Dormand-Prince embedded 4(5) pair (scipy's
RK45) at rtol 1e-9 / atol 1e-12 with dense output, stopping early on
convergence to a known steady state or on escape from a bounding box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import StiffnessError
from .policy import (
    Activist,
    DebtTargeting,
    FiscalRegime,
    TaylorRule,
    gamma,
    surplus,
    theta,
)
from .prefs import ModelParams, lambda_big, lambda_prime, omega
from .steady import SteadyState

__all__ = ["Box", "Trajectory", "vector_field", "integrate", "solvency_report",
           "SolvencyReport"]

RTOL = 1e-9
ATOL = 1e-12
CONVERGENCE_BALL = 1e-8
FIELD_NORM_TOL = 1e-12
MIN_STEP = 1e-12

DEFAULT_BOX = ((-0.5, 5.0), (-0.4, 0.4))


@dataclass(frozen=True)
class Box:
    """Axis-aligned bounding box in the (a, pi) plane."""

    a_min: float
    a_max: float
    pi_min: float
    pi_max: float

    def margin(self, a: float, pi: float) -> float:
        """Signed distance-like margin: positive inside, negative outside."""
        return min(a - self.a_min, self.a_max - a, pi - self.pi_min, self.pi_max - pi)

    def contains(self, a: float, pi: float) -> bool:
        return self.margin(a, pi) > 0


def vector_field(
    regime: FiscalRegime,
    p: ModelParams,
    rule: TaylorRule,
    state,
) -> tuple:
    """Time derivatives (a_dot, pi_dot) at state = (a, pi)."""
    a, pi = state
    R = rule.psi(pi)
    lam = lambda_big(R, p)
    lam_p = lambda_prime(R, p)
    psi_p = rule.psi_prime(pi)
    pi_dot = (lam * (R - pi - p.rho) - p.beta * (p.rho + p.mu) * a) / (lam_p * psi_p)
    if isinstance(regime, DebtTargeting):
        a_dot = -regime.phi * (a - regime.a_star)
    else:
        r = R - pi
        a_dot = (R - pi - p.n - theta(regime, r, a, p)) * a - gamma(regime, r)
    return a_dot, pi_dot


@dataclass
class Trajectory:
    """Sampled solution path with derived series.

    status is one of 'converged', 'escaped', 'horizon'; converged_to holds
    the steady state reached, if any.  The derived series satisfy
    b + m = a at every sample by construction.
    """

    t: np.ndarray
    a: np.ndarray
    pi: np.ndarray
    R: np.ndarray
    m: np.ndarray
    b: np.ndarray
    s: np.ndarray
    status: str
    converged_to: SteadyState | None = None
    direction: str = "forward"

    @property
    def final_state(self) -> tuple:
        return float(self.a[-1]), float(self.pi[-1])


def _derived_series(p, rule, regime, a, pi):
    R = np.array([rule.psi(x) for x in pi])
    m = np.array([1.0 / omega(r, p) for r in R])
    b = a - m
    s = np.array([surplus(regime, rule, p, ai, xi) for ai, xi in zip(a, pi)])
    return R, m, b, s


def integrate(
    regime: FiscalRegime,
    p: ModelParams,
    rule: TaylorRule,
    x0,
    horizon: float,
    direction: str = "forward",
    sample_interval: float | None = None,
    steady_states: list[SteadyState] | None = None,
    box: Box | None = None,
) -> Trajectory:
    """Integrate the planar system from x0 = (a0, pi0) over [0, horizon].

    Backward integration runs the time-reversed field.  Stops early when
    the state enters the convergence ball of a supplied steady state with a
    negligible field norm, or when it leaves the bounding box.  A step-size
    underflow raises StiffnessError carrying the partial trajectory.
    """
    if not horizon > 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if direction not in ("forward", "backward"):
        raise ValueError(f"direction must be forward or backward, got {direction!r}")
    sign = 1.0 if direction == "forward" else -1.0
    if box is None:
        box = Box(DEFAULT_BOX[0][0], DEFAULT_BOX[0][1],
                  DEFAULT_BOX[1][0], DEFAULT_BOX[1][1])
    targets = steady_states or []

    def rhs(t, y):
        da, dpi = vector_field(regime, p, rule, y)
        return (sign * da, sign * dpi)

    def escape(t, y):
        return box.margin(y[0], y[1])

    escape.terminal = True

    events = [escape]
    for ss in targets:
        def near(t, y, ss=ss):
            return math.hypot(y[0] - ss.a, y[1] - ss.pi) - CONVERGENCE_BALL

        near.terminal = True
        events.append(near)

    sol = solve_ivp(
        rhs,
        (0.0, horizon),
        [float(x0[0]), float(x0[1])],
        method="RK45",
        rtol=RTOL,
        atol=ATOL,
        dense_output=True,
        events=events,
    )

    t_end = float(sol.t[-1])
    if sample_interval is None:
        ts = sol.t
    else:
        ts = np.arange(0.0, t_end, sample_interval)
        ts = np.append(ts, t_end)
    ys = sol.sol(ts) if sol.sol is not None else np.vstack([sol.y])
    a = ys[0]
    pi = ys[1]

    status = "horizon"
    converged_to = None
    if sol.status == -1:
        R, m, b, s = _derived_series(p, rule, regime, a, pi)
        partial = Trajectory(ts, a, pi, R, m, b, s, "horizon", None, direction)
        raise StiffnessError(sol.message, trajectory=partial)
    if sol.status == 1:
        # Which event fired?
        if len(sol.t_events[0]) > 0:
            status = "escaped"
        else:
            for ss, hits in zip(targets, sol.t_events[1:]):
                if len(hits) > 0:
                    da, dpi = vector_field(regime, p, rule, (a[-1], pi[-1]))
                    status = "converged"
                    converged_to = ss
                    break

    R, m, b, s = _derived_series(p, rule, regime, a, pi)
    return Trajectory(ts, a, pi, R, m, b, s, status, converged_to, direction)


@dataclass(frozen=True)
class SolvencyReport:
    """Discounted-liabilities and intertemporal-budget diagnostics.

    discounted_terminal : a(T) * exp(-int_0^T (R - pi - n))
    ibc_residual        : a(0) - PV of surpluses on [0, T] - steady tail
    theta_integral      : int_0^T Theta dt (activist regime only, else 0)
    truncated           : True when the trajectory did not converge
    """

    discounted_terminal: float
    ibc_residual: float
    theta_integral: float
    truncated: bool


def solvency_report(
    traj: Trajectory,
    p: ModelParams,
    rule: TaylorRule,
    regime: FiscalRegime,
    horizon: float | None = None,
) -> SolvencyReport:
    """Trapezoidal-quadrature solvency diagnostics along a trajectory.

    The tail beyond the final sample assumes the terminal state is (at) a
    steady state, continuing the integrand geometrically at the terminal
    discount rate R - pi - n.  When `horizon` extends past the final
    sample, the discounted-liabilities figure is likewise continued
    geometrically from the terminal state out to the horizon.
    """
    growth = traj.R - traj.pi - p.n
    cum = np.concatenate([[0.0], np.cumsum(
        0.5 * (growth[1:] + growth[:-1]) * np.diff(traj.t)
    )])
    discount = np.exp(-cum)
    d_terminal = float(traj.a[-1] * discount[-1])
    if horizon is not None and horizon > traj.t[-1]:
        d_terminal *= math.exp(-float(growth[-1]) * (horizon - float(traj.t[-1])))

    pv = float(np.trapezoid(traj.s * discount, traj.t))
    rate_T = float(growth[-1])
    if rate_T > 0:
        tail = float(traj.s[-1] * discount[-1] / rate_T)
    else:
        tail = float("inf") if traj.s[-1] > 0 else float("-inf")
        if traj.s[-1] == 0.0:
            tail = 0.0
    ibc_residual = float(traj.a[0]) - pv - tail

    theta_int = 0.0
    if isinstance(regime, Activist):
        th = np.array([
            theta(regime, r_ - pi_, a_, p)
            for r_, pi_, a_ in zip(traj.R, traj.pi, traj.a)
        ])
        theta_int = float(np.trapezoid(th, traj.t))

    return SolvencyReport(
        discounted_terminal=d_terminal,
        ibc_residual=ibc_residual,
        theta_integral=theta_int,
        truncated=traj.status != "converged",
    )
