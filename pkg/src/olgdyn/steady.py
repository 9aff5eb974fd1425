"""Steady-state location by scan-and-bisect in the inflation rate.

Both regimes reduce to a one-dimensional root problem in pi.  Under debt
targeting the liabilities ratio at a steady state is the policy target
itself; under the activist rule the liabilities branch a(pi) is substituted
from the stationary liabilities condition before solving the modified
Fisher relation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    MultipleRootsDetected,
    NoLowSteadyState,
    NonpositiveLiabilities,
    SingularBranch,
)
from .policy import Activist, DebtTargeting, TaylorRule, gamma, theta
from .prefs import ModelParams, lambda_big

__all__ = ["SteadyState", "fisher_residual", "solve_debt_targeting", "solve_activist"]

SCAN_BELOW = 0.25
SCAN_ABOVE = 0.10
SCAN_STEP = 1e-3
BISECT_TOL = 1e-13
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class SteadyState:
    """Fixed point of the planar system with its defining-equation residual."""

    a: float
    pi: float
    R: float
    regime_tag: str
    residual: float


def fisher_residual(
    pi: float, a: float, p: ModelParams, rule: TaylorRule
) -> float:
    """Residual of the modified Fisher relation:
    Psi(pi) - pi - rho - beta*(rho+mu)*a / Lambda(Psi(pi)).
    """
    R = rule.psi(pi)
    return R - pi - p.rho - p.beta * (p.rho + p.mu) * a / lambda_big(R, p)


def _bisect(f, lo, hi, tol=BISECT_TOL):
    flo = f(lo)
    if flo == 0.0:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo < tol:
            return mid
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (flo < 0) == (fmid < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_roots(f, lo, hi, step):
    """Bracket every sign change of f on [lo, hi] and bisect each."""
    roots = []
    n = max(2, int(round((hi - lo) / step)) + 1)
    grid = [lo + i * (hi - lo) / (n - 1) for i in range(n)]
    prev_x, prev_f = grid[0], f(grid[0])
    for x in grid[1:]:
        fx = f(x)
        if prev_f == 0.0:
            roots.append(prev_x)
        elif (prev_f < 0) != (fx < 0):
            roots.append(_bisect(f, prev_x, x))
        prev_x, prev_f = x, fx
    if prev_f == 0.0:
        roots.append(prev_x)
    return roots


def _scan_window(rule: TaylorRule):
    return rule.pi_star - SCAN_BELOW, rule.pi_star + SCAN_ABOVE


def solve_debt_targeting(
    p: ModelParams,
    rule: TaylorRule,
    regime: DebtTargeting,
    step: float = SCAN_STEP,
) -> list[SteadyState]:
    """Both steady states of the debt-targeting regime, sorted by inflation.

    Raises NoLowSteadyState when fewer than two roots are found and
    MultipleRootsDetected (with all roots attached) when more than two are.
    """
    lo, hi = _scan_window(rule)
    f = lambda pi: fisher_residual(pi, regime.a_star, p, rule)
    roots = _scan_roots(f, lo, hi, step)
    states = [
        SteadyState(
            a=regime.a_star,
            pi=pi,
            R=rule.psi(pi),
            regime_tag="debt_targeting",
            residual=abs(f(pi)),
        )
        for pi in sorted(roots)
    ]
    if len(states) > 2:
        raise MultipleRootsDetected(states)
    if len(states) < 2:
        raise NoLowSteadyState(
            f"found {len(states)} steady state(s) in [{lo:.4f}, {hi:.4f}]; "
            "the rule admits no liquidity-trap root"
        )
    return states


def activist_liabilities(
    pi: float, p: ModelParams, rule: TaylorRule, regime: Activist
) -> float:
    """Liabilities branch a(pi) from the stationary liabilities condition:
    a = Gamma(r) / (Psi(pi) - pi - n - Theta(r)).

    The sensitivity floor is resolved consistently: the unfloored branch is
    used when it lands at or below the threshold, the floored branch when
    that one lands above it.
    """
    R = rule.psi(pi)
    r = R - pi
    base = theta(regime, r, 0.0, p)  # a=0 <= threshold: unfloored value
    g = gamma(regime, r)
    denom = R - pi - p.n - base
    if denom != 0.0:
        a = g / denom
        if a <= regime.a_threshold:
            return a
        floored = theta(regime, r, a, p)
        if floored != base:
            denom_f = R - pi - p.n - floored
            if denom_f != 0.0:
                a_f = g / denom_f
                if a_f > regime.a_threshold:
                    return a_f
        return a
    return float("inf")


def _activist_denominator(
    pi: float, p: ModelParams, rule: TaylorRule, regime: Activist
) -> float:
    R = rule.psi(pi)
    r = R - pi
    return R - pi - p.n - theta(regime, r, 0.0, p)


def solve_activist(
    p: ModelParams,
    rule: TaylorRule,
    regime: Activist,
    step: float = SCAN_STEP,
) -> list[SteadyState]:
    """Both steady states of the activist regime, sorted by inflation.

    The scan window is split at poles of the liabilities branch; a residual
    sign change whose bracket also contains a pole raises SingularBranch.
    Roots implying non-positive liabilities raise NonpositiveLiabilities.
    """
    lo, hi = _scan_window(rule)
    denom = lambda pi: _activist_denominator(pi, p, rule, regime)
    poles = _scan_roots(denom, lo, hi, step)

    def residual(pi):
        return fisher_residual(pi, activist_liabilities(pi, p, rule, regime), p, rule)

    # Split the window at poles (with a small exclusion band around each)
    # and search each clean segment.
    band = 10 * BISECT_TOL
    edges = [lo]
    for pole in sorted(poles):
        if lo < pole < hi:
            edges.extend([pole - band, pole + band])
    edges.append(hi)
    roots = []
    for seg_lo, seg_hi in zip(edges[::2], edges[1::2]):
        if seg_hi <= seg_lo:
            continue
        for root in _scan_roots(residual, seg_lo, seg_hi, step):
            d = denom(root)
            if abs(d) < 1e-9:
                raise SingularBranch(
                    f"liabilities branch is singular at pi={root!r} (denominator {d!r})"
                )
            roots.append(root)

    states = []
    for pi in sorted(roots):
        a = activist_liabilities(pi, p, rule, regime)
        if not a > 0:
            raise NonpositiveLiabilities(
                f"steady state at pi={pi!r} implies liabilities a={a!r}"
            )
        states.append(
            SteadyState(
                a=a,
                pi=pi,
                R=rule.psi(pi),
                regime_tag="activist",
                residual=abs(residual(pi)),
            )
        )
    if len(states) > 2:
        raise MultipleRootsDetected(states)
    if len(states) < 2:
        raise NoLowSteadyState(
            f"found {len(states)} steady state(s) in [{lo:.4f}, {hi:.4f}]"
        )
    return states
