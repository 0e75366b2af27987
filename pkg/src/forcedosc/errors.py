"""Exception types shared across the package."""


class AliasingError(ValueError):
    """Grid too coarse to represent a trigonometric series."""


class ResonanceError(ValueError):
    """Forcing has a non-negligible component at the natural frequency."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"resonant forcing: cos={report.cos_coeff:.3e}, "
            f"sin={report.sin_coeff:.3e}, tol={report.tolerance:.3e}"
        )


class PreconditionError(ValueError):
    """Input violates a hypothesis the operation relies on."""


class StrictnessImpossible(PreconditionError):
    """rho(z) + rho(-z) vanishes somewhere, so no strictly supporting form exists."""


class InconsistencyError(RuntimeError):
    """Admissible interval for the second coordinate came out empty."""


class CertificationError(RuntimeError):
    """A certified bound failed to reach the required sign."""

    def __init__(self, message, certificate=None):
        self.certificate = certificate
        super().__init__(message)
