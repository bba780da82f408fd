"""Exception types shared across the library.

Every error raised by qwiso derives from QwisoError, so callers can catch
the whole family with one clause. Construction errors carry the offending
value in their message.
"""


class QwisoError(Exception):
    """Base class for all qwiso errors."""


class NotPrime(QwisoError):
    """The modulus is not an odd prime in the supported range."""


class ZeroInSet(QwisoError):
    """A connection set contained 0 after reduction mod p."""


class NotSymmetric(QwisoError):
    """A connection set is not closed under negation mod p."""


class NotCongruentOneModFour(QwisoError):
    """Quadratic-residue construction requires p = 1 (mod 4)."""


class ImaginaryResidualTooLarge(QwisoError):
    """A quantity forced real by symmetry came out with a large imaginary part."""


class DegreeTooSmall(QwisoError):
    """The coin dimension must be at least 2."""


class OddDegree(QwisoError):
    """The degree k must be even (forced by S = -S over odd prime order)."""


class ResidualTooLarge(QwisoError):
    """Off-block mass after Fourier conjugation exceeds the hard threshold."""


class UnpairedEigenvalue(QwisoError):
    """An off-axis eigenvalue has no complex-conjugate partner."""


class MoreThanOnePair(QwisoError):
    """A block spectrum has more than one conjugate pair off +-1."""


class COutOfRange(QwisoError):
    """The coefficient c must lie strictly inside (-1, 1)."""


class DegenerateBlock(QwisoError):
    """All block eigenvalues sit at +-1, so no coefficient can be read off."""


class ClusteringAmbiguous(QwisoError):
    """Root clusters cannot be resolved into a well-separated multiset."""


class RoundingResidualTooLarge(QwisoError):
    """A recovered indicator value is too far from both 0 and 1."""


class WrongCardinality(QwisoError):
    """The recovered set does not have the expected number of elements."""


class NonzeroAtOrigin(QwisoError):
    """The recovered indicator is nonzero at u = 0."""


class ModulusMismatch(QwisoError):
    """Two inputs live over different moduli."""


class DegreeMismatch(QwisoError):
    """Two connection sets have different sizes."""


class RecoveredSetMismatch(QwisoError):
    """The round-trip recovered set differs from the original."""


class TooLarge(QwisoError):
    """Input exceeds the size guard of a brute-force oracle."""


class ShapeMismatch(QwisoError):
    """Adjacency matrices have incompatible shapes."""


class TooManySets(QwisoError):
    """The requested enumeration exceeds the candidate budget."""
