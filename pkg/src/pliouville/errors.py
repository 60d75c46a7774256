"""Exception hierarchy shared across the package."""


class PliouvilleError(Exception):
    """Base class for all package errors."""


class ConfigError(PliouvilleError):
    """Invalid configuration or unparsable input (CLI exit code 2)."""


class SolverError(PliouvilleError):
    """A solve failed to produce a usable result (CLI exit code 3)."""


class NoBracket(SolverError):
    """Terminal values at the endpoints of the shooting interval do not
    straddle the boundary target. Signals a potential violating b >= 0
    or a grid too coarse to resolve the problem."""

    def __init__(self, terminal_lo: float, terminal_hi: float):
        self.terminal_lo = terminal_lo
        self.terminal_hi = terminal_hi
        super().__init__(
            f"shooting endpoints do not bracket the boundary value: "
            f"terminal(0)={terminal_lo:.6g}, terminal(1)={terminal_hi:.6g}"
        )


class NonMonotoneDetected(SolverError):
    """Diagnostic: a coarse scan of the shooting parameter contradicts the
    assumed monotonicity of the terminal map."""


class MaxIterExceeded(SolverError):
    """Iteration budget exhausted. Carries the last iterate and residual."""

    def __init__(self, message: str, iterate=None, residual: float = float("nan")):
        self.iterate = iterate
        self.residual = residual
        super().__init__(f"{message} (residual={residual:.3e})")


class InsufficientResolution(PliouvilleError):
    """An inner ball spans too few grid cells to evaluate its energy."""


class VerificationError(PliouvilleError):
    """A verified invariant failed (CLI exit code 4)."""


class MonotonicityViolation(VerificationError):
    """Profiles in a sweep violate the expected ordering in the ball radius."""

    def __init__(self, k_small: float, k_large: float, max_excess: float):
        self.k_small = k_small
        self.k_large = k_large
        self.max_excess = max_excess
        super().__init__(
            f"profile for k={k_large:g} exceeds profile for k={k_small:g} "
            f"by {max_excess:.3e} on shared nodes"
        )


class OracleMismatch(VerificationError):
    """Cross-method check exceeded its tolerance."""
