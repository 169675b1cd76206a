"""
Error hierarchy for austere-kit
"""

from typing import Optional


class AustereError(Exception):
    """Base class for every error raised by austere-kit"""


class NumericalDegeneracy(AustereError):
    """Input is valid in form but numerically degenerate"""


class ZeroVector(NumericalDegeneracy):
    """Homogeneous representative is (numerically) zero"""


class DegenerateBasis(NumericalDegeneracy):
    """Gram-Schmidt pivot fell below tolerance"""


class OutOfDomain(NumericalDegeneracy):
    """Parameter point or its stencil leaves the chart domain"""


class ImmersionFailure(NumericalDegeneracy):
    """Chart is not an immersion at the sampled point"""


class ChartSingular(NumericalDegeneracy):
    """Affine chart undefined (leading homogeneous coordinate vanishes)"""


class NotHorizontal(AustereError):
    """Vector has a component along the Hopf fiber"""


class NotUnit(AustereError):
    """Vector expected to have unit length does not"""


class NotNormal(AustereError):
    """Normal direction is not orthogonal to the tangent frame"""


class RankAmbiguous(AustereError):
    """A singular value of the tangent J-projection sits between 0 and 1"""

    def __init__(self, message: str, singular_values=None):
        super().__init__(message)
        self.singular_values = singular_values


class NotInB(AustereError):
    """Pair (zeta, xi) violates the orthogonality defining the normal bundle model"""


class TauOutOfRange(AustereError):
    """Fiber parameter tau outside [0, 1)"""


class DimensionMismatch(AustereError):
    """Array shapes do not agree"""


class NotStandardPosition(AustereError):
    """Frame is not at z = E0, e_2n = i En"""


class NotComplexStructure(AustereError):
    """Supplied J is not an orthogonal complex structure anticommuting with H"""


class FrameAlignmentError(AustereError):
    """Frame does not satisfy i e_2n = cos(theta) e_1 + sin(theta) e_(2n-1)"""


class WrongDimension(AustereError):
    """Operation requires a different intrinsic dimension"""


class BadDimension(AustereError):
    """Invalid dimension arguments for a catalog constructor"""


class ConfigError(AustereError):
    """Run configuration could not be parsed or validated"""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        location = []
        if field:
            location.append(f"field '{field}'")
        if line is not None:
            location.append(f"line {line}")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.reason = message
