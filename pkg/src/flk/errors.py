"""Exception types raised across the package."""


class FlkError(Exception):
    pass


# scalars
class BadParameters(FlkError, ValueError):
    pass


class NonIntegral(FlkError, ArithmeticError):
    pass


class PoleAtRootOfUnity(FlkError, ArithmeticError):
    pass


# rootdata
class UnsupportedType(FlkError, ValueError):
    pass


class NotReduced(FlkError, ValueError):
    pass


class NotLongestWord(FlkError, ValueError):
    pass


# algebras
class ClosureViolation(FlkError, ArithmeticError):
    pass


class NotFiltered(FlkError, ValueError):
    pass


class HopfDataMissing(FlkError, ValueError):
    pass


class NotASubalgebraMap(FlkError, ValueError):
    pass


# modules
class UnsupportedAlgebra(FlkError, ValueError):
    pass


class BudgetExceeded(FlkError, RuntimeError):
    pass


class FieldTooLarge(FlkError, ValueError):
    pass


# cohomology
class NotLocal(FlkError, ValueError):
    pass


class CutoffUnstable(FlkError, RuntimeError):
    pass


class WeightsMissing(FlkError, ValueError):
    pass


class DegreeOutOfRange(FlkError, ValueError):
    pass


class BasisMismatch(FlkError, ValueError):
    pass


class TooShort(FlkError, ValueError):
    pass


# cli / persistence
class ConfigInvalid(FlkError, ValueError):
    pass


class VersionMismatch(FlkError, ValueError):
    pass


class FieldMismatch(FlkError, ValueError):
    pass
