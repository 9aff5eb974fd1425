"""Phase-portrait construction: isoclines, invariant manifolds, the
heteroclinic connection between the trap and the target, and basin-of-
attraction grids.

Both isoclines are parameterized by inflation, which sidesteps the points
where their slope in the (a, pi) plane becomes infinite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConnection, WrongClassification
from .flow import Box, Trajectory, integrate, vector_field
from .localdyn import eigen2, jacobian_activist, jacobian_debt
from .policy import Activist, DebtTargeting, FiscalRegime, TaylorRule, gamma, theta
from .prefs import ModelParams, lambda_big
from .steady import SteadyState

__all__ = [
    "Polyline",
    "PhasePortrait",
    "isoclines",
    "manifold",
    "heteroclinic",
    "basin_grid",
    "build_portrait",
]

SEED_OFFSET = 1e-6
HETEROCLINIC_BALL = 1e-4
HETEROCLINIC_HORIZON = 5000.0
BASIN_HORIZON = 2000.0
BASIN_BALL = 1e-6


@dataclass(frozen=True)
class Polyline:
    """A labeled curve in the (a, pi) plane."""

    name: str
    a: np.ndarray
    pi: np.ndarray


@dataclass
class PhasePortrait:
    """Bundle of everything needed to draw a phase diagram."""

    steady_states: list[SteadyState]
    classifications: list[str]
    isocline_pi: Polyline
    isocline_a: Polyline
    manifolds: list[Polyline]
    heteroclinic: Polyline | None
    basin: dict | None  # {'a0': .., 'pi0': .., 'labels': ..} flattened grid


def _jacobian(regime, p, rule, ss):
    if isinstance(regime, DebtTargeting):
        return jacobian_debt(p, rule, regime, ss)
    return jacobian_activist(p, rule, regime, ss)


def isoclines(
    regime: FiscalRegime,
    p: ModelParams,
    rule: TaylorRule,
    pi_range,
    n_points: int = 400,
) -> tuple:
    """(pi_dot = 0 locus, a_dot = 0 locus), each parameterized by pi.

    pi_dot = 0:  a = (Psi - pi - rho) * Lambda / (beta * (rho + mu)).
    a_dot = 0:   vertical line a = a_star under debt targeting;
                 a = Gamma / (Psi - pi - n - Theta) under the activist rule,
                 with near-singular points masked out.
    """
    if p.beta == 0.0:
        raise ValueError(
            "pi_dot isocline degenerates at beta = 0 (vertical Fisher-root lines)"
        )
    pis = np.linspace(pi_range[0], pi_range[1], n_points)
    wealth = p.beta * (p.rho + p.mu)
    a_pi = np.array([
        (rule.psi(x) - x - p.rho) * lambda_big(rule.psi(x), p) / wealth for x in pis
    ])
    locus_pi = Polyline("pi_dot=0", a_pi, pis.copy())

    if isinstance(regime, DebtTargeting):
        locus_a = Polyline(
            "a_dot=0", np.full_like(pis, regime.a_star), pis.copy()
        )
    else:
        vals, keep = [], []
        for x in pis:
            R = rule.psi(x)
            r = R - x
            denom = R - x - p.n - theta(regime, r, 0.0, p)
            if abs(denom) > 1e-6:
                vals.append(gamma(regime, r) / denom)
                keep.append(x)
        locus_a = Polyline("a_dot=0", np.array(vals), np.array(keep))
    return locus_pi, locus_a


def manifold(
    regime: FiscalRegime,
    p: ModelParams,
    rule: TaylorRule,
    ss: SteadyState,
    which: str,
    branch: int = +1,
    horizon: float = 500.0,
    box: Box | None = None,
    steady_states: list[SteadyState] | None = None,
) -> Trajectory:
    """One branch of the stable or unstable manifold of a hyperbolic ss.

    Seeds at ss + branch * 1e-6 * v where v is the unit eigenvector of the
    requested-sign real eigenvalue, then integrates forward (unstable) or
    backward (stable).
    """
    if which not in ("stable", "unstable"):
        raise ValueError(f"which must be stable or unstable, got {which!r}")
    rep = eigen2(_jacobian(regime, p, rule, ss))
    if rep.eigenvectors is None:
        raise WrongClassification(
            f"no real eigendirections at a {rep.classification!r} point"
        )
    want_negative = which == "stable"
    candidates = [
        (lam, vec)
        for lam, vec in zip(rep.eigenvalues, rep.eigenvectors)
        if (lam < 0) == want_negative
    ]
    if not candidates:
        raise WrongClassification(
            f"no {which} real eigenvalue at {rep.classification!r} point"
        )
    # Non-dominant direction first for unstable nodes: tangency of generic
    # paths is along the smaller positive eigenvalue.
    candidates.sort(key=lambda it: abs(it[0]))
    lam, vec = candidates[0]
    seed = (ss.a + branch * SEED_OFFSET * vec[0], ss.pi + branch * SEED_OFFSET * vec[1])
    direction = "backward" if which == "stable" else "forward"
    return integrate(
        regime, p, rule, seed, horizon, direction=direction,
        steady_states=steady_states, box=box,
    )


def heteroclinic(
    regime: Activist,
    p: ModelParams,
    rule: TaylorRule,
    ss_trap: SteadyState,
    ss_target: SteadyState,
    horizon: float = HETEROCLINIC_HORIZON,
    box: Box | None = None,
) -> Trajectory:
    """Connecting orbit from the trap to the target saddle.

    Traced backward from the target's stable eigendirection, seed sign
    chosen toward the trap, until the path enters a small ball around the
    trap.  Raises NoConnection with closest-approach diagnostics otherwise.
    """
    rep_target = eigen2(jacobian_activist(p, rule, regime, ss_target))
    if not rep_target.is_saddle:
        raise WrongClassification(
            f"target must be a saddle, got {rep_target.classification!r}"
        )
    rep_trap = eigen2(jacobian_activist(p, rule, regime, ss_trap))
    if rep_trap.classification not in ("unstable node", "unstable spiral"):
        raise WrongClassification(
            f"trap must be an unstable node or spiral, got {rep_trap.classification!r}"
        )
    idx = 0 if rep_target.eigenvalues[0] < 0 else 1
    vec = rep_target.eigenvectors[idx]
    # Point the seed displacement toward the trap.
    to_trap = (ss_trap.a - ss_target.a, ss_trap.pi - ss_target.pi)
    sign = 1.0 if (vec[0] * to_trap[0] + vec[1] * to_trap[1]) >= 0 else -1.0
    seed = (
        ss_target.a + sign * SEED_OFFSET * vec[0],
        ss_target.pi + sign * SEED_OFFSET * vec[1],
    )
    traj = _integrate_until_ball(
        regime, p, rule, seed, horizon, ss_trap, HETEROCLINIC_BALL, box
    )
    if traj is not None:
        return traj
    fallback = _shoot_forward(regime, p, rule, ss_trap, ss_target,
                              rep_trap, horizon, box)
    if fallback is not None:
        return fallback
    probe = integrate(regime, p, rule, seed, horizon,
                      direction="backward", box=box)
    d = np.hypot(probe.a - ss_trap.a, probe.pi - ss_trap.pi)
    k = int(np.argmin(d))
    raise NoConnection(
        "backward-traced stable arm does not reach the trap ball",
        closest_distance=float(d[k]),
        closest_state=(float(probe.a[k]), float(probe.pi[k])),
    )


def _shoot_forward(regime, p, rule, ss_trap, ss_target, rep_trap, horizon, box):
    """Forward-shooting fallback for the node case: bisect the seed angle
    around the non-dominant unstable eigenvector, minimizing the distance
    of closest approach to the target; None when no real eigendirection
    exists (spiral trap) or the best shot misses the target ball.
    """
    if rep_trap.eigenvectors is None:
        return None
    positive = [
        (lam, vec)
        for lam, vec in zip(rep_trap.eigenvalues, rep_trap.eigenvectors)
        if lam > 0
    ]
    if not positive:
        return None
    positive.sort(key=lambda it: abs(it[0]))
    _, vec = positive[0]
    base = math.atan2(vec[1], vec[0])
    to_target = math.atan2(ss_target.pi - ss_trap.pi, ss_target.a - ss_trap.a)
    if math.cos(base - to_target) < 0:
        base += math.pi

    def closest(angle):
        seed = (
            ss_trap.a + 100 * SEED_OFFSET * math.cos(angle),
            ss_trap.pi + 100 * SEED_OFFSET * math.sin(angle),
        )
        traj = integrate(regime, p, rule, seed, horizon, box=box,
                         steady_states=[ss_target])
        d = np.hypot(traj.a - ss_target.a, traj.pi - ss_target.pi)
        k = int(np.argmin(d))
        return float(d[k]), traj, k

    lo, hi = base - 0.5, base + 0.5
    for _ in range(60):
        third = (hi - lo) / 3.0
        if closest(lo + third)[0] < closest(hi - third)[0]:
            hi = hi - third
        else:
            lo = lo + third
    best, traj, k = closest(0.5 * (lo + hi))
    if best > HETEROCLINIC_BALL:
        return None
    return Trajectory(
        traj.t[: k + 1], traj.a[: k + 1], traj.pi[: k + 1],
        traj.R[: k + 1], traj.m[: k + 1], traj.b[: k + 1], traj.s[: k + 1],
        "converged", ss_target, "forward",
    )


def _integrate_until_ball(regime, p, rule, seed, horizon, ss, ball, box):
    """Backward integration terminating inside a ball around ss; None on miss."""
    from scipy.integrate import solve_ivp

    if box is None:
        box = Box(-0.5, 5.0, -0.4, 0.4)

    def rhs(t, y):
        da, dpi = vector_field(regime, p, rule, y)
        return (-da, -dpi)

    # Terminate just inside the ball so the endpoint residual is strictly
    # below it.
    def near(t, y):
        return math.hypot(y[0] - ss.a, y[1] - ss.pi) - 0.99 * ball

    near.terminal = True

    def escape(t, y):
        return box.margin(y[0], y[1])

    escape.terminal = True

    sol = solve_ivp(rhs, (0.0, horizon), list(seed), method="RK45",
                    rtol=1e-9, atol=1e-12, dense_output=True,
                    events=[near, escape])
    if sol.status != 1 or len(sol.t_events[0]) == 0:
        return None
    from .flow import _derived_series

    ts = sol.t
    a, pi = sol.y[0], sol.y[1]
    # Reverse to run from the trap toward the target in forward time.
    ts = ts[-1] - ts[::-1]
    a, pi = a[::-1], pi[::-1]
    R, m, b, s = _derived_series(p, rule, regime, a, pi)
    return Trajectory(ts, a, pi, R, m, b, s, "converged", ss, "forward")


def basin_grid(
    regime: FiscalRegime,
    p: ModelParams,
    rule: TaylorRule,
    steady_states: list[SteadyState],
    box: Box,
    resolution: int = 20,
    horizon: float = BASIN_HORIZON,
) -> dict:
    """Label a grid of initial conditions by their long-run destination.

    Labels: 'target', 'trap', 'escaped', 'undecided'.  The steady state
    with the higher inflation is the target.
    """
    ordered = sorted(steady_states, key=lambda s: s.pi)
    trap, target = ordered[0], ordered[-1]
    a0s = np.linspace(box.a_min, box.a_max, resolution)
    pi0s = np.linspace(box.pi_min, box.pi_max, resolution)
    rows_a, rows_pi, labels = [], [], []
    # Integration box slightly larger than the sampling box.
    pad_a = 0.25 * (box.a_max - box.a_min)
    pad_pi = 0.25 * (box.pi_max - box.pi_min)
    big = Box(box.a_min - pad_a, box.a_max + pad_a,
              box.pi_min - pad_pi, box.pi_max + pad_pi)
    for a0 in a0s:
        for pi0 in pi0s:
            traj = integrate(
                regime, p, rule, (a0, pi0), horizon,
                steady_states=steady_states, box=big,
            )
            labels.append(_basin_label(traj, trap, target))
            rows_a.append(float(a0))
            rows_pi.append(float(pi0))
    return {"a0": np.array(rows_a), "pi0": np.array(rows_pi),
            "labels": labels, "resolution": resolution}


def _basin_label(traj: Trajectory, trap: SteadyState, target: SteadyState) -> str:
    if traj.status == "escaped":
        return "escaped"
    af, pf = traj.final_state
    d_trap = math.hypot(af - trap.a, pf - trap.pi)
    d_target = math.hypot(af - target.a, pf - target.pi)
    if traj.status == "converged" or min(d_trap, d_target) < BASIN_BALL:
        return "trap" if d_trap < d_target else "target"
    return "undecided"


def build_portrait(
    regime: FiscalRegime,
    p: ModelParams,
    rule: TaylorRule,
    steady_states: list[SteadyState],
    pi_range,
    box: Box | None = None,
    basin_resolution: int | None = None,
    with_heteroclinic: bool = False,
) -> PhasePortrait:
    """Assemble isoclines, classifications, manifolds, and optional extras."""
    ordered = sorted(steady_states, key=lambda s: s.pi)
    trap, target = ordered[0], ordered[-1]
    classes = [
        eigen2(_jacobian(regime, p, rule, ss)).classification for ss in ordered
    ]
    locus_pi, locus_a = isoclines(regime, p, rule, pi_range)

    manifolds = []
    rep_target = eigen2(_jacobian(regime, p, rule, target))
    if rep_target.is_saddle:
        for branch, tag in ((+1, "+"), (-1, "-")):
            arm = manifold(regime, p, rule, target, "stable", branch,
                           box=box, steady_states=[trap])
            manifolds.append(Polyline(f"stable_arm{tag}", arm.a, arm.pi))
    rep_trap = eigen2(_jacobian(regime, p, rule, trap))
    if rep_trap.classification == "unstable node":
        for branch, tag in ((+1, "+"), (-1, "-")):
            um = manifold(regime, p, rule, trap, "unstable", branch,
                          box=box, steady_states=[target])
            manifolds.append(Polyline(f"unstable_branch{tag}", um.a, um.pi))

    orbit = None
    if with_heteroclinic and isinstance(regime, Activist):
        traj = heteroclinic(regime, p, rule, trap, target, box=box)
        orbit = Polyline("heteroclinic", traj.a, traj.pi)

    basin = None
    if basin_resolution and box is not None:
        basin = basin_grid(regime, p, rule, steady_states, box, basin_resolution)

    return PhasePortrait(
        steady_states=ordered,
        classifications=classes,
        isocline_pi=locus_pi,
        isocline_a=locus_a,
        manifolds=manifolds,
        heteroclinic=orbit,
        basin=basin,
    )
