"""Exception hierarchy for the toolkit."""


class OlgdynError(Exception):
    """Base class for all toolkit errors."""


class DomainError(OlgdynError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(OlgdynError, ValueError):
    """Invalid configuration; carries a list of individual problems."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class NoLowSteadyState(OlgdynError):
    """Fewer than two steady states found: the low-inflation state is absent."""


class MultipleRootsDetected(OlgdynError):
    """More than two steady states found; all roots are attached."""

    def __init__(self, roots):
        self.roots = roots
        super().__init__(f"expected two steady states, found {len(roots)}")


class SingularBranch(OlgdynError):
    """The liabilities branch a(pi) has a pole inside a scan bracket."""


class NonpositiveLiabilities(OlgdynError):
    """A steady-state root implies a non-positive liabilities ratio."""


class NotASaddle(OlgdynError):
    """The steady state supplied is not a saddle point."""


class WrongClassification(OlgdynError):
    """The steady state does not have the classification the operation needs."""


class StiffnessError(OlgdynError):
    """Integrator step size underflowed; the partial trajectory is attached."""

    def __init__(self, message, trajectory=None):
        self.trajectory = trajectory
        super().__init__(message)


class NoConnection(OlgdynError):
    """No heteroclinic connection found; closest-approach data attached."""

    def __init__(self, message, closest_distance=None, closest_state=None):
        self.closest_distance = closest_distance
        self.closest_state = closest_state
        super().__init__(message)
