"""Error taxonomy shared by every numerical routine in the package.

All exceptions derive from NumericsError so callers can catch the whole
family at once; RegimeWarning is an ordinary warning category, raised
where an expansion is evaluated outside the regime it is built for.
"""


class NumericsError(Exception):
    """Base class for numerical failures raised by this package."""


class ParameterPole(NumericsError):
    """A lower parameter sits at a non-positive integer (Gamma pole)."""


class DivergentSeries(NumericsError):
    """Series arguments lie outside the region of convergence."""


class NotConverged(NumericsError):
    """Iteration or refinement hit its budget before reaching tolerance."""


class BranchCrossing(NumericsError):
    """An integration path crosses the principal-branch cut."""


class PoleHit(NumericsError):
    """Evaluation point lands on a pole of the integrand/state."""


class ZeroAmplitude(NumericsError):
    """Operator application needs f(x) != 0 but the amplitude vanishes."""


class OutOfValidityWindow(NumericsError):
    """Requested quantity does not converge for this deformation q."""


class SlowDecay(NumericsError):
    """Tail sampling suggests the integrand is not integrable at infinity."""


class ConventionMismatch(NumericsError):
    """Closed form disagrees with the oracle beyond tolerance after calibration."""


class RegimeWarning(UserWarning):
    """Evaluation outside the small-deformation regime an expansion assumes."""
