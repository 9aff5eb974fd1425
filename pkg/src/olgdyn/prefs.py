"""CES preference kernel: money demand, the total-consumption multiplier,
its derivative, and the velocity-based calibration of the share weight.

All functions take the nominal rate R in annual terms and require R > 0;
money demand is undefined at a zero nominal rate.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import DomainError

__all__ = ["ModelParams", "omega", "lambda_big", "lambda_prime", "calibrate_delta"]


@dataclass(frozen=True)
class ModelParams:
    """Demographic and preference constants, all in annual units.

    rho   : pure time-preference rate
    mu    : death hazard
    n     : population growth rate
    beta  : birth rate, equal to n + mu by construction
    eps   : elasticity of substitution between consumption and real balances
    delta : CES share weight on consumption
    """

    rho: float
    mu: float
    n: float
    beta: float
    eps: float
    delta: float

    def __post_init__(self):
        problems = []
        if not self.rho > 0:
            problems.append(f"rho must be positive, got {self.rho}")
        if not self.mu > 0:
            problems.append(f"mu must be positive, got {self.mu}")
        if not self.beta >= 0:
            problems.append(f"beta must be non-negative, got {self.beta}")
        if abs(self.beta - (self.n + self.mu)) > 1e-12:
            problems.append(
                f"beta must equal n + mu, got beta={self.beta}, n+mu={self.n + self.mu}"
            )
        if not 0 < self.eps < 1:
            problems.append(f"eps must lie in (0, 1), got {self.eps}")
        if not 0 < self.delta < 1:
            problems.append(f"delta must lie in (0, 1), got {self.delta}")
        if problems:
            raise DomainError("; ".join(problems))

    @classmethod
    def from_demographics(cls, rho, n, mu, eps, delta):
        """Build with beta pinned to n + mu exactly."""
        return cls(rho=rho, mu=mu, n=n, beta=n + mu, eps=eps, delta=delta)

    def with_delta(self, delta):
        return replace(self, delta=delta)

    @property
    def share_ratio(self) -> float:
        """delta / (1 - delta), the CES share ratio."""
        return self.delta / (1.0 - self.delta)


def _check_rate(R: float) -> None:
    if not R > 0:
        raise DomainError(f"nominal rate must be positive, got {R}")


def omega(R: float, p: ModelParams) -> float:
    """Consumption-to-money ratio (consumption velocity): (d/(1-d))^eps * R^eps.

    Strictly increasing in R on R > 0.
    """
    _check_rate(R)
    return (p.share_ratio * R) ** p.eps


def lambda_big(R: float, p: ModelParams) -> float:
    """Total-consumption multiplier: 1 + (d/(1-d))^(-eps) * R^(1-eps) > 1.

    Identical to 1 + R / omega(R).
    """
    _check_rate(R)
    return 1.0 + p.share_ratio ** (-p.eps) * R ** (1.0 - p.eps)


def lambda_prime(R: float, p: ModelParams) -> float:
    """Derivative of the multiplier: (1-eps) * (d/(1-d))^(-eps) * R^(-eps) > 0."""
    _check_rate(R)
    return (1.0 - p.eps) * p.share_ratio ** (-p.eps) * R ** (-p.eps)


def calibrate_delta(velocity: float, R_star: float, eps: float) -> float:
    """Share weight delta such that the consumption velocity at R_star equals
    the given value, i.e. d/(1-d) = velocity^(1/eps) / R_star.
    """
    if not velocity > 0:
        raise DomainError(f"velocity must be positive, got {velocity}")
    _check_rate(R_star)
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    ratio = velocity ** (1.0 / eps) / R_star
    return ratio / (1.0 + ratio)
