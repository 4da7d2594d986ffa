"""Exception hierarchy shared by every module of the engine."""


class AlgebraError(Exception):
    """Base class for all errors raised by koszulkit."""


# ring
class UnknownVariable(AlgebraError, ValueError):
    pass


class MalformedTerm(AlgebraError, ValueError):
    pass


class ZeroCharacteristicOverflow(AlgebraError, ValueError):
    """A rational coefficient has no image in the prime field (denominator divisible by p)."""


class RingMismatch(AlgebraError, ValueError):
    pass


class LengthMismatch(AlgebraError, ValueError):
    pass


# groebner
class RankMismatch(AlgebraError, ValueError):
    pass


class ShapeMismatch(AlgebraError, ValueError):
    pass


class ZeroDivisorArgument(AlgebraError, ValueError):
    pass


class NotFiniteDimensional(AlgebraError, ValueError):
    pass


# modmath
class HasRelations(AlgebraError, ValueError):
    pass


class AmbientMismatch(AlgebraError, ValueError):
    pass


class NotContained(AlgebraError, ValueError):
    pass


class IllFormed(AlgebraError, ValueError):
    pass


class IllFormedMap(AlgebraError, ValueError):
    pass


class LengthNotLocal(AlgebraError, ValueError):
    """The module is finite dimensional but is not supported only at the origin."""


class TargetMismatch(AlgebraError, ValueError):
    pass


# complexes
class DegreeOutOfRange(AlgebraError, IndexError):
    pass


class ResolutionTruncated(AlgebraError, RuntimeError):
    pass


# multitor
class ZeroDivisorGenerator(AlgebraError, ValueError):
    pass


class ZeroScalar(AlgebraError, ValueError):
    pass


class NotZeroDimensional(AlgebraError, ValueError):
    pass


# cli
class JobSyntaxError(AlgebraError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class UndeclaredName(AlgebraError, ValueError):
    pass


class DuplicateName(AlgebraError, ValueError):
    pass
