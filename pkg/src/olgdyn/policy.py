"""Monetary rule and the two fiscal regimes.

The interest-rate rule is an exponential family: positive, increasing and
strictly convex everywhere, anchored so that the rate and its slope at the
inflation target are free parameters.  The activist regime's sensitivity
and direct-surplus schedules are affine in the real rate, with a floor on
the sensitivity beyond a liabilities threshold that keeps the discounted
liabilities path contracting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError
from .prefs import ModelParams

__all__ = [
    "TaylorRule",
    "DebtTargeting",
    "Activist",
    "FiscalRegime",
    "theta",
    "theta_prime",
    "gamma",
    "gamma_prime",
    "surplus",
]


@dataclass(frozen=True)
class TaylorRule:
    """Interest-rate feedback rule R = Psi(pi).

    pi_star         : target inflation
    r_star          : nominal rate at target, Psi(pi_star)
    slope_at_target : Psi'(pi_star), must exceed 1 (Taylor principle)
    """

    pi_star: float
    r_star: float
    slope_at_target: float

    def __post_init__(self):
        if not self.r_star > 0:
            raise DomainError(f"r_star must be positive, got {self.r_star}")
        if not self.slope_at_target > 1:
            raise DomainError(
                f"slope_at_target must exceed 1, got {self.slope_at_target}"
            )

    def psi(self, pi: float) -> float:
        """Nominal rate: r_star * exp((slope/r_star) * (pi - pi_star))."""
        return self.r_star * math.exp(
            (self.slope_at_target / self.r_star) * (pi - self.pi_star)
        )

    def psi_prime(self, pi: float) -> float:
        """Exact derivative of the rule: (slope/r_star) * psi(pi)."""
        return (self.slope_at_target / self.r_star) * self.psi(pi)


@dataclass(frozen=True)
class DebtTargeting:
    """Strict fiscal discipline: liabilities adjust toward a_star at speed phi."""

    a_star: float
    phi: float

    def __post_init__(self):
        if not self.a_star > 0:
            raise DomainError(f"a_star must be positive, got {self.a_star}")
        if not self.phi > 0:
            raise DomainError(f"phi must be positive, got {self.phi}")


@dataclass(frozen=True)
class Activist:
    """Feedback surplus rule s = Theta(r) * a + Gamma(r), r the real rate.

    Theta(r) = theta0 + theta1 * r, floored at theta_floor once liabilities
    exceed a_threshold so the sensitivity becomes permanently positive on
    explosive paths.  Gamma(r) = gamma0 + gamma1 * r.  theta_floor defaults
    to n + 0.01 at evaluation time when left unset.
    """

    theta0: float
    theta1: float
    gamma0: float
    gamma1: float
    a_threshold: float = 1e6
    theta_floor: float | None = None

    def __post_init__(self):
        if self.theta1 < 0:
            raise DomainError(f"theta1 must be non-negative, got {self.theta1}")
        if self.gamma1 < 0:
            raise DomainError(f"gamma1 must be non-negative, got {self.gamma1}")
        if not self.a_threshold > 0:
            raise DomainError(f"a_threshold must be positive, got {self.a_threshold}")


FiscalRegime = Union[DebtTargeting, Activist]


def _floor(reg: Activist, p: ModelParams) -> float:
    return reg.theta_floor if reg.theta_floor is not None else p.n + 0.01


def theta(reg: Activist, r: float, a: float, p: ModelParams) -> float:
    """Surplus sensitivity to liabilities, floored beyond the threshold."""
    base = reg.theta0 + reg.theta1 * r
    if a > reg.a_threshold:
        return max(base, _floor(reg, p))
    return base


def theta_prime(reg: Activist, r: float, a: float, p: ModelParams) -> float:
    """d Theta / d r; zero where the floor binds."""
    if a > reg.a_threshold and reg.theta0 + reg.theta1 * r < _floor(reg, p):
        return 0.0
    return reg.theta1


def gamma(reg: Activist, r: float) -> float:
    """Direct surplus term."""
    return reg.gamma0 + reg.gamma1 * r


def gamma_prime(reg: Activist, r: float) -> float:
    return reg.gamma1


def surplus(
    reg: FiscalRegime, rule: TaylorRule, p: ModelParams, a: float, pi: float
) -> float:
    """Primary surplus implied by the regime at state (a, pi)."""
    R = rule.psi(pi)
    if isinstance(reg, DebtTargeting):
        return (R + reg.phi - pi - p.n) * a - reg.phi * reg.a_star
    r = R - pi
    return theta(reg, r, a, p) * a + gamma(reg, r)
