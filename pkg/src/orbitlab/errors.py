"""Exception hierarchy shared across the package."""


class OrbitLabError(Exception):
    """Base class for all orbitlab errors."""


class OddDimension(OrbitLabError):
    """Matrix dimension is odd where an even (symplectic) one is required."""


class NotSymplectic(OrbitLabError):
    """Symplecticity residual exceeded the configured tolerance."""


class SingularFrame(OrbitLabError):
    """Frame-change matrix is numerically singular."""


class TrivialPairNotFound(OrbitLabError):
    """Monodromy lacks the expected pair of eigenvalues near 1."""


class TrivialEigenvalueNotFound(OrbitLabError):
    """Unreduced 3x3 block carries no eigenvalue near 1."""


class NotReciprocalPairs(OrbitLabError):
    """Multipliers cannot be grouped into reciprocal pairs."""


class NonFinite(OrbitLabError):
    """Input contains NaN or infinity."""


class NotPalindromic(OrbitLabError):
    """Characteristic polynomial is not palindromic within tolerance."""


class InvalidEigenvalue(OrbitLabError):
    """Eigenvalue is neither on the unit circle nor hyperbolic real."""


class NotRealDistinct(OrbitLabError):
    """Block eigenvalues are complex or numerically coincident."""


class IndeterminateSign(OrbitLabError):
    """Quadratic-form witness is below the sign floor."""


class DegenerateEllipticPair(OrbitLabError):
    """Elliptic multiplier is not simple."""


class DegenerateType(OrbitLabError):
    """Orbit type sits on a bifurcation boundary; parity undefined."""


class DegenerateEntry(OrbitLabError):
    """Ledger entry has a degenerate cover; counting invariant undefined."""


class SingularC(OrbitLabError):
    """C block is singular (degenerate chord)."""


class SingularU(OrbitLabError):
    """Chebyshev U factor is singular at the requested iterate."""


class CollisionSingularity(OrbitLabError):
    """Trajectory entered the collision floor around a primary."""


class StepFailure(OrbitLabError):
    """Adaptive integrator failed to advance."""


class NoConvergence(OrbitLabError):
    """Newton correction failed to converge."""


class LeftFixedLocus(OrbitLabError):
    """Seed state does not lie on the requested fixed locus."""


class StepFloorReached(OrbitLabError):
    """Continuation step fell below the configured floor."""


class SignUndefined(OrbitLabError):
    """B-signature undefined on at least one side of a bifurcation."""


class EmptyInput(OrbitLabError):
    """Input file or record list is empty."""
