"""Calibration presets, the local trap-point eigenvalue check, and the
robustness sweeps over its inputs.

The local check evaluates the lower-right Jacobian entry of the debt-
targeting regime directly from anchors at the trap point (the nominal rate
and the rule slope there), so it does not depend on any global choice of
interest-rate rule.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product

import numpy as np

from .prefs import calibrate_delta

__all__ = ["CalibrationPreset", "BASELINE", "j22_local", "sweep_j22", "SweepReport"]


@dataclass(frozen=True)
class CalibrationPreset:
    """Annual-data calibration constants and trap-point anchors."""

    rho: float = 0.04
    n: float = 0.0047
    mu: float = 0.012366
    r_star: float = 0.06
    psi_trap: float = 0.001        # nominal rate at the trap point
    psi_prime_trap: float = 0.1    # rule slope at the trap point
    a_star: float = 0.6
    velocity: float = 1.0

    @property
    def beta(self) -> float:
        return self.n + self.mu


BASELINE = CalibrationPreset()

# Sweep ranges for (eps, velocity, psi_trap, psi_prime_trap, a_star); open
# endpoints are inset by 1e-6.
_INSET = 1e-6
SWEEP_RANGES = {
    "eps": (0.05 + _INSET, 0.5),
    "velocity": (1.0 + _INSET, 20.0 - _INSET),
    "psi_trap": (0.001 + _INSET, 0.1 - _INSET),
    "psi_prime_trap": (0.01 + _INSET, 0.1 - _INSET),
    "a_star": (0.6 + _INSET, 2.0 - _INSET),
}


def j22_local(preset: CalibrationPreset, eps: float) -> float:
    """Trap-point value of the inflation-dynamics eigenvalue,
    (Psi' - 1) * Lambda / (Psi' * Lambda') + beta * (rho + mu) * a* / Lambda,
    with delta calibrated from the velocity at the target-state rate.
    """
    if not (preset.psi_trap > 0 and preset.psi_prime_trap > 0):
        raise ValueError("trap-point anchors must be positive")
    # kappa = (delta/(1-delta))^(-eps) with delta from the velocity
    # calibration; written algebraically so extreme share ratios (delta
    # within float eps of 1) cannot underflow.
    kappa = preset.r_star ** eps / preset.velocity
    R = preset.psi_trap
    lam = 1.0 + kappa * R ** (1.0 - eps)
    lam_p = (1.0 - eps) * kappa * R ** (-eps)
    first = (preset.psi_prime_trap - 1.0) * lam / (preset.psi_prime_trap * lam_p)
    second = preset.beta * (preset.rho + preset.mu) * preset.a_star / lam
    return first + second


@dataclass(frozen=True)
class SweepReport:
    """Cartesian-grid sweep summary."""

    n_points: int
    min_value: float
    max_value: float
    sign_violations: list  # (eps, velocity, psi_trap, psi_prime_trap, a_star, value)

    @property
    def all_negative(self) -> bool:
        return not self.sign_violations


def sweep_j22(
    preset: CalibrationPreset = BASELINE,
    points_per_axis: int = 5,
    ranges: dict | None = None,
) -> SweepReport:
    """Evaluate j22_local on the full Cartesian grid of the sweep ranges
    and report the extrema and any points where the value is non-negative.
    """
    rng = dict(SWEEP_RANGES)
    if ranges:
        rng.update(ranges)
    axes = {
        key: np.linspace(lo, hi, points_per_axis)
        for key, (lo, hi) in rng.items()
    }
    lo = float("inf")
    hi = float("-inf")
    violations = []
    count = 0
    for eps, vel, psi_t, psi_p, a_s in product(
        axes["eps"], axes["velocity"], axes["psi_trap"],
        axes["psi_prime_trap"], axes["a_star"],
    ):
        pt = replace(
            preset, velocity=float(vel), psi_trap=float(psi_t),
            psi_prime_trap=float(psi_p), a_star=float(a_s),
        )
        val = j22_local(pt, float(eps))
        count += 1
        lo = min(lo, val)
        hi = max(hi, val)
        if val >= 0:
            violations.append(
                (float(eps), float(vel), float(psi_t), float(psi_p),
                 float(a_s), val)
            )
    return SweepReport(count, lo, hi, violations)
