"""Exception hierarchy.

Every error raised for a violated mathematical precondition derives from
:class:`MathError`; the CLI maps those to exit code 3.
"""


class MathError(Exception):
    """Base class for mathematical precondition violations."""


class SymmetryViolation(MathError):
    pass


class NotPositiveDefinite(MathError):
    pass


class IllConditionedLattice(MathError):
    pass


class ZeroLambda(MathError):
    pass


class OnZeroFiber(MathError):
    pass


class SameFiber(MathError):
    pass


class ChartMismatch(MathError):
    pass


class IncompatibleMatrix(MathError):
    pass


class NotThetaScaling(MathError):
    pass


class NotInKernel(MathError):
    pass
