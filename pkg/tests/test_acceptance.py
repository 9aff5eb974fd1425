"""End-to-end acceptance battery.

Each test is one pass/fail criterion; `pytest -v` prints one line per
criterion.  Timed criteria assert their own wall-clock budgets.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest
from click.testing import CliRunner
from scipy.linalg import expm

from olgdyn.calib import BASELINE, j22_local, sweep_j22
from olgdyn.cli import main as cli_main
from olgdyn.flow import ATOL, RTOL, Trajectory, integrate, solvency_report, vector_field
from olgdyn.localdyn import (
    activist_conditions,
    eigen2,
    jacobian_activist,
    jacobian_debt,
)
from olgdyn.policy import Activist
from olgdyn.portrait import heteroclinic, manifold
from olgdyn.steady import fisher_residual, solve_activist, solve_debt_targeting


def _timed(budget):
    start = time.perf_counter()

    def check():
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"runtime {elapsed:.1f}s over budget {budget}s"

    return check


# -- A1: replication point check -------------------------------------------

def test_a1_replication_point_check(tmp_path):
    done = _timed(1.0)
    runner = CliRunner()
    res = runner.invoke(cli_main, ["replicate-appendix-c", "--out", str(tmp_path)])
    assert res.exit_code == 0
    doc = json.loads((tmp_path / "appendix_c.json").read_text())
    assert doc["j22_eps_0.6"] == pytest.approx(-1.951, abs=0.0005)
    assert doc["j22_eps_0.5"] == pytest.approx(-2.342, abs=0.001)
    assert doc["j22_eps_0.5"] < 0
    done()


# -- A2: robustness sweeps -------------------------------------------------

def test_a2_robustness_sweeps(tmp_path):
    done = _timed(10.0)
    coarse = sweep_j22(BASELINE, points_per_axis=5)
    assert coarse.n_points == 5 ** 5
    assert coarse.all_negative, coarse.sign_violations[:5]
    fine = sweep_j22(BASELINE, points_per_axis=9)
    assert fine.n_points == 9 ** 5
    assert fine.all_negative, fine.sign_violations[:5]
    done()


# -- A3: regime-1 structure ------------------------------------------------

def test_a3_regime1_structure(fig1):
    states = solve_debt_targeting(fig1.params, fig1.rule, fig1.regime)
    assert len(states) == 2
    trap, target = states
    assert fig1.rule.psi_prime(trap.pi) < 1 < fig1.rule.psi_prime(target.pi)
    rep_trap = eigen2(jacobian_debt(fig1.params, fig1.rule, fig1.regime, trap))
    rep_tgt = eigen2(jacobian_debt(fig1.params, fig1.rule, fig1.regime, target))
    assert rep_trap.classification == "stable node"
    assert rep_tgt.classification == "saddle"
    for rep in (rep_trap, rep_tgt):
        assert min(abs(lam + fig1.regime.phi) for lam in rep.eigenvalues) < 1e-14


# -- A4: basin property ----------------------------------------------------

def test_a4_basin_property(fig1):
    done = _timed(30.0)
    trap, target = solve_debt_targeting(fig1.params, fig1.rule, fig1.regime)
    arms = [
        manifold(fig1.regime, fig1.params, fig1.rule, target, "stable", br,
                 box=fig1.box, steady_states=[trap])
        for br in (+1, -1)
    ]
    # exact computed arm nodes; interpolated points would be dragged off
    # the arm by the unstable direction before reaching the target
    a_all = np.concatenate([arm.a for arm in arms])
    pi_all = np.concatenate([arm.pi for arm in arms])
    inside = np.array([
        fig1.box.margin(a, pi) > 0.05 for a, pi in zip(a_all, pi_all)
    ])
    keep = (np.abs(a_all - target.a) > 0.02) & inside
    a_all, pi_all = a_all[keep], pi_all[keep]
    order = np.argsort(a_all)
    a_all, pi_all = a_all[order], pi_all[order]
    pick = np.linspace(0, len(a_all) - 1, 20).astype(int)
    for a0, pi0 in zip(a_all[pick], pi_all[pick]):
        below = integrate(fig1.regime, fig1.params, fig1.rule,
                          (a0, pi0 - 1e-3), horizon=2000.0,
                          steady_states=[trap, target], box=fig1.box)
        assert below.status == "converged" and below.converged_to is trap, \
            f"off-arm start ({a0}, {pi0 - 1e-3}) -> {below.status}"
        d = math.hypot(below.final_state[0] - trap.a,
                       below.final_state[1] - trap.pi)
        assert d < 1e-6
        on = integrate(fig1.regime, fig1.params, fig1.rule, (a0, pi0),
                       horizon=2000.0, steady_states=[trap, target],
                       box=fig1.box)
        assert on.status == "converged" and on.converged_to is target, \
            f"on-arm start ({a0}, {pi0}) -> {on.status}"
        d = math.hypot(on.final_state[0] - target.a,
                       on.final_state[1] - target.pi)
        assert d < 1e-6
    done()


# -- A5: comparative statics -----------------------------------------------

def test_a5_comparative_statics(fig1):
    from olgdyn.localdyn import comparative_statics
    from olgdyn.policy import DebtTargeting
    from olgdyn.prefs import ModelParams

    long_run, impact = comparative_statics(fig1.params, fig1.rule, fig1.regime,
                                           nominal_ratio=1.0)
    assert long_run > 0
    h = 1e-4
    hi = solve_debt_targeting(
        fig1.params, fig1.rule,
        DebtTargeting(fig1.regime.a_star + h, fig1.regime.phi))[1]
    lo = solve_debt_targeting(
        fig1.params, fig1.rule,
        DebtTargeting(fig1.regime.a_star - h, fig1.regime.phi))[1]
    fd = (hi.pi - lo.pi) / (2 * h)
    assert long_run == pytest.approx(fd, rel=1e-4)
    assert 0 < impact < long_run
    p0 = ModelParams(rho=fig1.params.rho, mu=fig1.params.mu,
                     n=-fig1.params.mu, beta=0.0,
                     eps=fig1.params.eps, delta=fig1.params.delta)
    assert comparative_statics(p0, fig1.rule, fig1.regime, 1.0) == (0.0, 0.0)


# -- A6: regime-2 node case ------------------------------------------------

def _anchored_gamma0(params, rule, theta0, theta1, gamma1, a_trap=3.8):
    """gamma0 pinning the trap at a_trap for a given schedule, using the
    inflation root of the trap branch at that liability level."""
    from scipy.optimize import brentq

    # bracket the left-branch root: the residual is positive far left and
    # negative at the rule's unit-slope point
    k = rule.slope_at_target / rule.r_star
    pi_m = rule.pi_star + math.log(1.0 / rule.slope_at_target) / k
    pi_l = brentq(lambda x: fisher_residual(x, a_trap, params, rule),
                  -0.2, pi_m, xtol=1e-14)
    r_l = rule.psi(pi_l) - pi_l
    return (r_l * (1.0 - theta1) - params.n - theta0) * a_trap - gamma1 * r_l


def test_a6_regime2_node_case(fig2):
    done = _timed(60.0)
    found = None
    for theta1 in (0.5, 1.0, 1.5):
        for gamma1 in np.arange(1300.0, 1575.0, 25.0):
            gamma0 = _anchored_gamma0(fig2.params, fig2.rule, -3.0, theta1,
                                      gamma1)
            regime = Activist(theta0=-3.0, theta1=theta1, gamma0=gamma0,
                              gamma1=gamma1, a_threshold=1e6)
            try:
                trap, target = solve_activist(fig2.params, fig2.rule, regime)
            except Exception:
                continue
            c = activist_conditions(fig2.params, fig2.rule, regime, target, trap)
            if c.node_case:
                found = (regime, trap, target, c)
                break
        if found:
            break
    assert found is not None, "grid search found no node-case parameterization"
    regime, trap, target, c = found

    rep_trap = eigen2(jacobian_activist(fig2.params, fig2.rule, regime, trap))
    rep_tgt = eigen2(jacobian_activist(fig2.params, fig2.rule, regime, target))
    assert c.target_determinacy == (rep_tgt.det < 0)
    assert c.trap_positive_det == (rep_trap.det > 0)
    assert c.trap_positive_trace == (rep_trap.trace > 0)
    assert c.real_roots_at_trap == (rep_trap.discriminant > 0)
    assert rep_trap.classification == "unstable node"
    assert rep_tgt.classification == "saddle"

    orbit = heteroclinic(regime, fig2.params, fig2.rule, trap, target,
                         box=fig2.box)
    assert math.hypot(orbit.a[0] - trap.a, orbit.pi[0] - trap.pi) < 1e-4
    assert math.hypot(orbit.a[-1] - target.a, orbit.pi[-1] - target.pi) < 1e-4

    # a(t) changes direction exactly where its own time derivative crosses
    # zero; verify by a sign test at the crossing.
    da = np.diff(orbit.a)
    flips = np.where(np.sign(da[:-1]) * np.sign(da[1:]) < 0)[0]
    assert len(flips) >= 1
    k = int(flips[0]) + 1
    a_dot_before, _ = vector_field(regime, fig2.params, fig2.rule,
                                   (orbit.a[k - 1], orbit.pi[k - 1]))
    a_dot_after, _ = vector_field(regime, fig2.params, fig2.rule,
                                  (orbit.a[k + 1], orbit.pi[k + 1]))
    assert a_dot_before * a_dot_after < 0
    done()


# -- A7: regime-2 spiral case ----------------------------------------------

def test_a7_regime2_spiral_case(fig3):
    trap, target = solve_activist(fig3.params, fig3.rule, fig3.regime)
    rep = eigen2(jacobian_activist(fig3.params, fig3.rule, fig3.regime, trap))
    assert rep.classification == "unstable spiral"

    # winding: seed at radius 1e-4, accumulate phase until radius 1e-2
    seed = (trap.a + 1e-4, trap.pi)
    traj = integrate(fig3.regime, fig3.params, fig3.rule, seed,
                     horizon=100.0, sample_interval=0.02, box=fig3.box)
    dx = traj.a - trap.a
    dy = (traj.pi - trap.pi) * (abs(trap.a) / 0.01)  # rescale axes comparably
    radius = np.hypot(traj.a - trap.a, traj.pi - trap.pi)
    outside = np.where(radius > 1e-2)[0]
    assert len(outside) > 0
    stop = outside[0]
    angles = np.unwrap(np.arctan2(dy[: stop + 1], dx[: stop + 1]))
    winding = abs(angles[-1] - angles[0])
    assert winding > 2 * math.pi, f"winding only {winding:.2f} rad"

    orbit = heteroclinic(fig3.regime, fig3.params, fig3.rule, trap, target,
                         box=fig3.box)
    assert math.hypot(orbit.a[0] - trap.a, orbit.pi[0] - trap.pi) < 1e-4
    assert math.hypot(orbit.a[-1] - target.a, orbit.pi[-1] - target.pi) < 1e-4


def test_a7_predicate_spectrum_agreement(fig3):
    rng = np.random.default_rng(20260824)
    checked = 0
    attempts = 0
    while checked < 200 and attempts < 2000:
        attempts += 1
        theta0 = rng.uniform(-3.5, -1.0)
        theta1 = rng.uniform(0.0, 2.0)
        gamma1 = rng.uniform(800.0, 1600.0)
        gamma0 = _anchored_gamma0(fig3.params, fig3.rule, theta0, theta1,
                                  gamma1)
        try:
            regime = Activist(theta0=theta0, theta1=theta1, gamma0=gamma0,
                              gamma1=gamma1, a_threshold=1e6)
            trap, target = solve_activist(fig3.params, fig3.rule, regime)
        except Exception:
            continue
        # the displayed inequalities assume the rule is passive at the trap
        # and active at the target; stay inside that configuration
        if not (fig3.rule.psi_prime(trap.pi) < 1 < fig3.rule.psi_prime(target.pi)):
            continue
        c = activist_conditions(fig3.params, fig3.rule, regime, target, trap)
        rep_trap = eigen2(jacobian_activist(fig3.params, fig3.rule, regime,
                                            trap))
        rep_tgt = eigen2(jacobian_activist(fig3.params, fig3.rule, regime,
                                           target))
        assert c.target_determinacy == (rep_tgt.det < 0)
        assert c.trap_positive_det == (rep_trap.det > 0)
        assert c.trap_positive_trace == (rep_trap.trace > 0)
        assert c.real_roots_at_trap == (rep_trap.discriminant > 0)
        if c.node_case:
            assert rep_trap.classification == "unstable node"
        if c.spiral_case:
            assert rep_trap.classification == "unstable spiral"
        checked += 1
    assert checked >= 200, f"only {checked} valid parameterizations in {attempts}"


# -- A8: solvency ----------------------------------------------------------

def test_a8_solvency_heteroclinic(fig2):
    trap, target = solve_activist(fig2.params, fig2.rule, fig2.regime)
    orbit = heteroclinic(fig2.regime, fig2.params, fig2.rule, trap, target,
                         box=fig2.box)
    rep = solvency_report(orbit, fig2.params, fig2.rule, fig2.regime,
                          horizon=2000.0)
    assert abs(rep.discounted_terminal) < 1e-3
    assert abs(rep.ibc_residual) < 1e-2 * abs(orbit.a[0])


def test_a8_solvency_saddle_path(fig1):
    trap, target = solve_debt_targeting(fig1.params, fig1.rule, fig1.regime)
    arm = manifold(fig1.regime, fig1.params, fig1.rule, target, "stable",
                   branch=+1, box=fig1.box)
    # time-reverse the backward-traced arm into a forward saddle path
    ts = arm.t[-1] - arm.t[::-1]
    path = Trajectory(
        ts, arm.a[::-1], arm.pi[::-1], arm.R[::-1], arm.m[::-1],
        arm.b[::-1], arm.s[::-1], "converged", target, "forward",
    )
    rep = solvency_report(path, fig1.params, fig1.rule, fig1.regime,
                          horizon=2000.0)
    assert abs(rep.discounted_terminal) < 1e-3
    assert abs(rep.ibc_residual) < 1e-2 * abs(path.a[0])


# -- A9: integrator validation ---------------------------------------------

A9_MATRIX = np.array([[-0.3, 0.7], [-0.7, -0.3]])
A9_X0 = np.array([1.0, 0.5])


def _a9_solve(t_end, rtol, atol):
    from scipy.integrate import solve_ivp

    sol = solve_ivp(lambda t, y: A9_MATRIX @ y, (0.0, t_end), A9_X0,
                    method="RK45", rtol=rtol, atol=atol)
    return sol.y[:, -1]


def test_a9_linear_benchmark():
    exact = expm(A9_MATRIX * 10.0) @ A9_X0
    got = _a9_solve(10.0, RTOL, ATOL)
    assert np.linalg.norm(got - exact) < 1e-9


def test_a9_tolerance_scaling():
    exact = expm(A9_MATRIX * 10.0) @ A9_X0
    err_loose = np.linalg.norm(_a9_solve(10.0, 1e-5, 1e-8) - exact)
    err_tight = np.linalg.norm(_a9_solve(10.0, 1e-6, 1e-9) - exact)
    assert 8.0 <= err_loose / err_tight <= 60.0


def test_a9_round_trip(fig1):
    x0 = (0.9, 0.0)
    fwd = integrate(fig1.regime, fig1.params, fig1.rule, x0, horizon=2.0,
                    box=fig1.box)
    back = integrate(fig1.regime, fig1.params, fig1.rule, fwd.final_state,
                     horizon=float(fwd.t[-1]), direction="backward",
                     box=fig1.box)
    err = math.hypot(back.final_state[0] - x0[0], back.final_state[1] - x0[1])
    assert err < 1e-7


# -- A10: figure rendering (separate figures package) ----------------------

def test_a10_figure_scripts_render(tmp_path):
    pytest.importorskip("phasefig")
    runner = CliRunner()
    jobs = [("figure1", "fig1"), ("figure2", "fig2"), ("figure3", "fig3")]
    expectations = {
        "fig1": "a_dot=0",          # vertical line layer in the portrait
        "fig2": "heteroclinic",     # orbit H over U-shaped loci
        "fig3": "heteroclinic",     # outward spiral traced near the trap
    }
    for preset_name, tag in jobs:
        out = tmp_path / tag
        res = runner.invoke(
            cli_main,
            ["portrait", "--preset", preset_name, "--out", str(out),
             "--resolution", "4"],
        )
        assert res.exit_code == 0, res.output
        png = out / f"{tag}.png"
        proc = subprocess.run(
            [sys.executable, "-m", "phasefig",
             str(out / "portrait.json"), str(png)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert png.exists() and png.stat().st_size > 1000
        assert expectations[tag] in proc.stdout
