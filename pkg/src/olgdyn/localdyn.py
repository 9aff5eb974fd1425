"""Local analysis at the steady states: analytic Jacobians, closed-form
2x2 spectral decomposition, fixed-point classification, saddle-path and
unstable-branch slopes, comparative statics, and the activist-regime
determinacy/aggressiveness predicates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotASaddle, WrongClassification
from .policy import (
    Activist,
    DebtTargeting,
    TaylorRule,
    gamma_prime,
    theta,
    theta_prime,
)
from .prefs import ModelParams, lambda_big, lambda_prime, omega
from .steady import SteadyState, solve_debt_targeting

__all__ = [
    "Jacobian2",
    "EigenReport",
    "jacobian_debt",
    "jacobian_activist",
    "eigen2",
    "saddle_arm_slope",
    "unstable_branch_slope",
    "comparative_statics",
    "activist_conditions",
    "ActivistConditionReport",
]

DEGENERACY_BAND = 1e-14


@dataclass(frozen=True)
class Jacobian2:
    """Jacobian of (a_dot, pi_dot) with respect to (a, pi)."""

    a_a: float
    a_pi: float
    pi_a: float
    pi_pi: float

    @property
    def trace(self) -> float:
        return self.a_a + self.pi_pi

    @property
    def det(self) -> float:
        return self.a_a * self.pi_pi - self.a_pi * self.pi_a

    def as_rows(self):
        return ((self.a_a, self.a_pi), (self.pi_a, self.pi_pi))


@dataclass(frozen=True)
class EigenReport:
    """Closed-form spectral report for a 2x2 Jacobian.

    Eigenvalues are a real pair or a complex-conjugate pair; eigenvectors
    (as (da, dpi) tuples) are reported only in the real non-degenerate case.
    """

    trace: float
    det: float
    discriminant: float
    eigenvalues: tuple
    eigenvectors: tuple | None
    classification: str

    @property
    def is_saddle(self) -> bool:
        return self.classification == "saddle"


def _wealth_coeff(p: ModelParams) -> float:
    return p.beta * (p.rho + p.mu)


def _j22(p: ModelParams, rule: TaylorRule, pi: float, a: float) -> float:
    R = rule.psi(pi)
    lam = lambda_big(R, p)
    lam_p = lambda_prime(R, p)
    psi_p = rule.psi_prime(pi)
    return (psi_p - 1.0) * lam / (lam_p * psi_p) + _wealth_coeff(p) * a / lam


def jacobian_debt(
    p: ModelParams, rule: TaylorRule, regime: DebtTargeting, ss: SteadyState
) -> Jacobian2:
    """Lower-triangular Jacobian of the debt-targeting regime at ss."""
    R = rule.psi(ss.pi)
    lam_p = lambda_prime(R, p)
    psi_p = rule.psi_prime(ss.pi)
    return Jacobian2(
        a_a=-regime.phi,
        a_pi=0.0,
        pi_a=-_wealth_coeff(p) / (lam_p * psi_p),
        pi_pi=_j22(p, rule, ss.pi, regime.a_star),
    )


def jacobian_activist(
    p: ModelParams, rule: TaylorRule, regime: Activist, ss: SteadyState
) -> Jacobian2:
    """Full Jacobian of the activist regime at ss."""
    R = rule.psi(ss.pi)
    r = R - ss.pi
    lam_p = lambda_prime(R, p)
    psi_p = rule.psi_prime(ss.pi)
    th = theta(regime, r, ss.a, p)
    th_p = theta_prime(regime, r, ss.a, p)
    ga_p = gamma_prime(regime, r)
    return Jacobian2(
        a_a=R - ss.pi - p.n - th,
        a_pi=(psi_p - 1.0) * (ss.a - th_p * ss.a - ga_p),
        pi_a=-_wealth_coeff(p) / (lam_p * psi_p),
        pi_pi=_j22(p, rule, ss.pi, ss.a),
    )


def eigen2(j: Jacobian2) -> EigenReport:
    """Eigen-decomposition of a 2x2 matrix in closed form, with the
    classification implied by the (trace, det, discriminant) sign pattern.
    """
    tr, det = j.trace, j.det
    disc = tr * tr - 4.0 * det

    if abs(disc) < DEGENERACY_BAND:
        lam = 0.5 * tr
        return EigenReport(tr, det, disc, (lam, lam), None, "degenerate")

    if disc > 0.0:
        root = math.sqrt(disc)
        lam1 = 0.5 * (tr - root)
        lam2 = 0.5 * (tr + root)
        vecs = tuple(_eigvec(j, lam) for lam in (lam1, lam2))
        if det < 0.0:
            label = "saddle"
        elif tr < 0.0:
            label = "stable node"
        elif tr > 0.0:
            label = "unstable node"
        else:
            label = "degenerate"
        return EigenReport(tr, det, disc, (lam1, lam2), vecs, label)

    root = math.sqrt(-disc)
    lam1 = complex(0.5 * tr, -0.5 * root)
    lam2 = complex(0.5 * tr, 0.5 * root)
    if tr < 0.0:
        label = "stable spiral"
    elif tr > 0.0:
        label = "unstable spiral"
    else:
        label = "degenerate"
    return EigenReport(tr, det, disc, (lam1, lam2), None, label)


def _eigvec(j: Jacobian2, lam: float) -> tuple:
    # (A - lam I) v = 0; take the better-conditioned row.
    r1 = (j.a_a - lam, j.a_pi)
    r2 = (j.pi_a, j.pi_pi - lam)
    row = r1 if math.hypot(*r1) >= math.hypot(*r2) else r2
    v = (-row[1], row[0])
    norm = math.hypot(*v)
    if norm == 0.0:
        return (1.0, 0.0)
    return (v[0] / norm, v[1] / norm)


def stable_eigendirection(report: EigenReport) -> tuple:
    """Unit eigenvector of the negative eigenvalue of a saddle."""
    if not report.is_saddle:
        raise NotASaddle(f"classification is {report.classification!r}")
    idx = 0 if report.eigenvalues[0] < 0 else 1
    return report.eigenvectors[idx]


def saddle_arm_slope(
    p: ModelParams,
    rule: TaylorRule,
    regime,
    ss: SteadyState,
) -> float:
    """Slope dpi/da of the stable arm at the target saddle.

    Debt targeting: beta*(rho+mu) / (Lambda' * Psi' * (phi + J22)); activist:
    -beta*(rho+mu) / (Lambda' * Psi' * (eps1 - K22)) with eps1 the stable
    eigenvalue.  Both are positive in the configurations of interest.
    """
    R = rule.psi(ss.pi)
    lam_p = lambda_prime(R, p)
    psi_p = rule.psi_prime(ss.pi)
    if isinstance(regime, DebtTargeting):
        jac = jacobian_debt(p, rule, regime, ss)
        rep = eigen2(jac)
        if not rep.is_saddle:
            raise NotASaddle(f"classification is {rep.classification!r}")
        return _wealth_coeff(p) / (lam_p * psi_p * (regime.phi + jac.pi_pi))
    jac = jacobian_activist(p, rule, regime, ss)
    rep = eigen2(jac)
    if not rep.is_saddle:
        raise NotASaddle(f"classification is {rep.classification!r}")
    eps1 = min(rep.eigenvalues)
    return -_wealth_coeff(p) / (lam_p * psi_p * (eps1 - jac.pi_pi))


def unstable_branch_slope(
    p: ModelParams,
    rule: TaylorRule,
    regime: Activist,
    ss_trap: SteadyState,
    report: EigenReport | None = None,
) -> float:
    """Slope dpi/da of the non-dominant unstable branch at an unstable-node
    trap: -beta*(rho+mu) / (Lambda' * Psi' * (eta1 - K22)) with eta1 the
    smaller positive eigenvalue.
    """
    if report is None:
        report = eigen2(jacobian_activist(p, rule, regime, ss_trap))
    if report.classification != "unstable node":
        raise WrongClassification(
            f"need an unstable node, got {report.classification!r}"
        )
    eta1 = min(report.eigenvalues)
    R = rule.psi(ss_trap.pi)
    lam_p = lambda_prime(R, p)
    psi_p = rule.psi_prime(ss_trap.pi)
    jac = jacobian_activist(p, rule, regime, ss_trap)
    return -_wealth_coeff(p) / (lam_p * psi_p * (eta1 - jac.pi_pi))


def comparative_statics(
    p: ModelParams,
    rule: TaylorRule,
    regime: DebtTargeting,
    nominal_ratio: float,
) -> tuple:
    """Long-run and impact derivatives of inflation with respect to the
    liabilities target: (dpi*/da*, dpi(0)+/da*).

    nominal_ratio is the predetermined initial nominal liabilities-to-money
    ratio A(0)/M(0).  The long-run derivative follows from differentiating
    the modified Fisher relation and equals beta*(rho+mu)/(Lambda'*Psi'*J22)
    at the target; the impact derivative accounts for the jump of (a, pi)
    onto the new stable arm with a(0)*Omega(Psi(pi(0))) held fixed.
    """
    if not nominal_ratio > 0:
        raise ValueError(f"A(0)/M(0) must be positive, got {nominal_ratio}")
    if p.beta == 0.0:
        return 0.0, 0.0
    target = solve_debt_targeting(p, rule, regime)[1]
    jac = jacobian_debt(p, rule, regime, target)
    rep = eigen2(jac)
    if not rep.is_saddle:
        raise NotASaddle(f"target classification is {rep.classification!r}")
    R = rule.psi(target.pi)
    lam_p = lambda_prime(R, p)
    psi_p = rule.psi_prime(target.pi)
    j22 = jac.pi_pi
    bw = _wealth_coeff(p)

    long_run = bw / (lam_p * psi_p * j22)
    slope = bw / (lam_p * psi_p * (regime.phi + j22))

    # Impact jump evaluated at the pre-change steady state pi(0) = pi*.
    om = omega(R, p)
    om_p = p.eps * om / R  # exact derivative of the CES velocity
    da0_dpi0 = -nominal_ratio * om_p * psi_p / (om * om)
    impact = (long_run - slope) / (1.0 - slope * da0_dpi0)
    return long_run, impact


@dataclass(frozen=True)
class ActivistConditionReport:
    """Booleans and margins for the four activist-regime inequalities.

    Margins are (lhs - rhs) for '>' conditions, (rhs - lhs) for '<', so a
    positive margin always means the condition holds.
    """

    target_determinacy: bool
    target_determinacy_margin: float
    trap_positive_det: bool
    trap_positive_det_margin: float
    trap_positive_trace: bool
    trap_positive_trace_margin: float
    real_roots_at_trap: bool
    real_roots_margin: float

    @property
    def node_case(self) -> bool:
        return (
            self.trap_positive_det
            and self.trap_positive_trace
            and self.real_roots_at_trap
        )

    @property
    def spiral_case(self) -> bool:
        return (
            self.trap_positive_det
            and self.trap_positive_trace
            and not self.real_roots_at_trap
        )


def activist_conditions(
    p: ModelParams,
    rule: TaylorRule,
    regime: Activist,
    ss_target: SteadyState,
    ss_trap: SteadyState,
) -> ActivistConditionReport:
    """Evaluate the determinacy condition at the target, the instability and
    positive-trace conditions at the trap, and the real-vs-complex root
    condition at the trap, each as the displayed parameter inequality.
    """
    bw = _wealth_coeff(p)

    def pieces(ss):
        R = rule.psi(ss.pi)
        r = R - ss.pi
        psi_p = rule.psi_prime(ss.pi)
        lam_p = lambda_prime(R, p)
        th = theta(regime, r, ss.a, p)
        a11 = R - ss.pi - p.n - th
        k22 = _j22(p, rule, ss.pi, ss.a)
        lhs = gamma_prime(regime, r) + theta_prime(regime, r, ss.a, p) * ss.a
        return R, r, psi_p, lam_p, th, a11, k22, lhs

    # Target: det K < 0 iff Gamma' + Theta' a > a + a11 * Lam' * Psi' * K22
    #         / (beta (rho+mu) (Psi'-1)).
    R, r, psi_p, lam_p, th, a11, k22, lhs = pieces(ss_target)
    rhs = ss_target.a + a11 * lam_p * psi_p * k22 / (bw * (psi_p - 1.0))
    m1 = lhs - rhs

    # Trap: det K > 0 iff Gamma' + Theta' a > a + a11 * Lam' * Psi' * (-K22)
    #       / (beta (rho+mu) (1-Psi')).
    R, r, psi_p, lam_p, th, a11, k22, lhs = pieces(ss_trap)
    shared = a11 * lam_p * psi_p * (-k22) / (bw * (1.0 - psi_p))
    rhs2 = ss_trap.a + shared
    m2 = lhs - rhs2

    # Trap: tr K > 0 iff Theta < rho - n + beta (rho+mu) a / Lambda + K22.
    lam = lambda_big(R, p)
    rhs3 = p.rho - p.n + bw * ss_trap.a / lam + k22
    m3 = rhs3 - th

    # Trap: tr^2 - 4 det > 0 iff lhs < a + shared
    #       + Lam' Psi' (a11 + K22)^2 / (4 beta (rho+mu) (1-Psi')).
    rhs4 = rhs2 + lam_p * psi_p * (a11 + k22) ** 2 / (4.0 * bw * (1.0 - psi_p))
    m4 = rhs4 - lhs

    return ActivistConditionReport(
        target_determinacy=m1 > 0,
        target_determinacy_margin=m1,
        trap_positive_det=m2 > 0,
        trap_positive_det_margin=m2,
        trap_positive_trace=m3 > 0,
        trap_positive_trace_margin=m3,
        real_roots_at_trap=m4 > 0,
        real_roots_margin=m4,
    )
