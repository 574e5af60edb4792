"""Exception hierarchy shared by all modules."""


class LRCError(Exception):
    """Base class for every error raised by this package."""


# finite fields
class NonPrimeCharacteristic(LRCError):
    pass


class ReducibleModulus(LRCError):
    pass


class DivisionByZero(LRCError, ZeroDivisionError):
    pass


class NonDividingDegree(LRCError):
    pass


class OrderNotDividing(LRCError):
    pass


class EvenCharacteristic(LRCError):
    pass


# linear algebra
class DimensionMismatch(LRCError):
    pass


class Inconsistent(LRCError):
    pass


class BudgetExceeded(LRCError):
    pass


# curves
class FieldTooLarge(LRCError):
    pass


class PointNotOnCurve(LRCError):
    pass


class SingularCurve(LRCError):
    pass


class NoSuchSubgroup(LRCError):
    pass


class NotASubgroup(LRCError):
    pass


class InvalidCurve(LRCError):
    pass


class NotHyperelliptic(LRCError):
    pass


class KernelNotClosed(LRCError):
    pass


class TranslationNotAutomorphism(LRCError):
    pass


class WrongRootCount(LRCError):
    pass


class NotGenus2(LRCError):
    pass


class ImageOffCurve(LRCError):
    pass


class NonSquareField(LRCError):
    def __init__(self, msg, count=None):
        super().__init__(msg)
        self.count = count


# function spaces
class UnsupportedPlace(LRCError):
    pass


class OrderTooLarge(LRCError):
    pass


class CapExceeded(LRCError):
    pass


class LadderGapMismatch(LRCError):
    pass


class NoInvariantFound(LRCError):
    pass


# recipes
class ParameterOutOfRange(LRCError):
    pass


class SelectionFailed(LRCError):
    pass


class PoleAtEvaluationPlace(LRCError):
    pass


class RankDeficient(LRCError):
    pass


class InvolutionInGroup(LRCError):
    pass


class NotMaximal(LRCError):
    pass


class OrientationDegenerate(LRCError):
    pass


class EvenSWithoutTwist(LRCError):
    pass


# verification / repair
class CertificateFailed(LRCError):
    pass


class LengthMismatch(LRCError):
    pass


class Unrecoverable(LRCError):
    pass


class ArtifactError(LRCError):
    pass
