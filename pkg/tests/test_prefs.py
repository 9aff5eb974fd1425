"""CES kernel: values against an independent high-precision oracle,
algebraic identities, domain validation, and the velocity calibration."""

import math

import pytest
from hypothesis import given, strategies as st

from olgdyn.errors import DomainError
from olgdyn.prefs import (
    ModelParams,
    calibrate_delta,
    lambda_big,
    lambda_prime,
    omega,
)

P = ModelParams.from_demographics(
    rho=0.04, n=0.0047, mu=0.012366, eps=0.6, delta=0.9434
)


class TestOracleValues:
    """Frozen values computed independently at 40 decimal digits."""

    def test_omega_at_trap_rate(self):
        assert omega(0.001, P) == pytest.approx(0.08572898155823718, rel=1e-12)

    def test_lambda_at_trap_rate(self):
        assert lambda_big(0.001, P) == pytest.approx(1.0116646667419078, rel=1e-12)

    def test_lambda_prime_at_trap_rate(self):
        assert lambda_prime(0.001, P) == pytest.approx(4.665866696763137, rel=1e-12)

    def test_calibrated_delta_unit_velocity(self):
        # d/(1-d) = 1/0.06 => d = (1/0.06)/(1 + 1/0.06) = 50/53
        assert calibrate_delta(1.0, 0.06, 0.6) == pytest.approx(
            50.0 / 53.0, rel=1e-15
        )


positive_rates = st.floats(min_value=1e-6, max_value=5.0)


class TestIdentities:
    @given(R=positive_rates)
    def test_multiplier_decomposition(self, R):
        # Lambda(R) = 1 + R / Omega(R)
        assert lambda_big(R, P) == pytest.approx(1.0 + R / omega(R, P), rel=1e-12)

    @given(R=positive_rates)
    def test_multiplier_slope_matches_finite_difference(self, R):
        h = 1e-7 * max(R, 1e-3)
        fd = (lambda_big(R + h, P) - lambda_big(R - h, P)) / (2 * h)
        assert lambda_prime(R, P) == pytest.approx(fd, rel=1e-5)

    @given(R=positive_rates)
    def test_velocity_increasing_and_multiplier_above_one(self, R):
        assert omega(R * 1.01 + 1e-9, P) > omega(R, P)
        assert lambda_big(R, P) > 1.0

    @given(velocity=st.floats(min_value=0.5, max_value=20.0))
    def test_calibration_round_trip(self, velocity):
        delta = calibrate_delta(velocity, 0.06, 0.6)
        q = ModelParams.from_demographics(
            rho=0.04, n=0.0047, mu=0.012366, eps=0.6, delta=delta
        )
        assert omega(0.06, q) == pytest.approx(velocity, rel=1e-9)


class TestValidation:
    def test_nonpositive_rate_rejected(self):
        for bad in (0.0, -0.01):
            with pytest.raises(DomainError):
                omega(bad, P)
            with pytest.raises(DomainError):
                lambda_big(bad, P)
            with pytest.raises(DomainError):
                lambda_prime(bad, P)

    def test_birth_rate_must_equal_n_plus_mu(self):
        with pytest.raises(DomainError, match="beta must equal n"):
            ModelParams(rho=0.04, mu=0.01, n=0.005, beta=0.02, eps=0.6, delta=0.9)

    def test_elasticity_and_share_bounds(self):
        with pytest.raises(DomainError):
            ModelParams.from_demographics(rho=0.04, n=0.005, mu=0.01, eps=1.0, delta=0.9)
        with pytest.raises(DomainError):
            ModelParams.from_demographics(rho=0.04, n=0.005, mu=0.01, eps=0.5, delta=1.0)

    def test_error_report_aggregates_problems(self):
        with pytest.raises(DomainError) as exc:
            ModelParams(rho=-1.0, mu=-1.0, n=0.0, beta=-1.0, eps=2.0, delta=0.5)
        text = str(exc.value)
        assert "rho" in text and "mu" in text and "eps" in text

    def test_zero_birth_rate_allowed(self):
        q = ModelParams(rho=0.04, mu=0.01, n=-0.01, beta=0.0, eps=0.6, delta=0.9)
        assert q.beta == 0.0
