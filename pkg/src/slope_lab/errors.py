"""Exception types raised by slope_lab.

Every error derives from SlopeLabError so the CLI can map them to exit code 1
in one place.
"""


class SlopeLabError(ValueError):
    """Base class for all library errors."""


# wps_ring
class CapExceeded(SlopeLabError):
    pass


class IndexOutOfRange(SlopeLabError):
    pass


class InvalidWeights(SlopeLabError):
    pass


# hn_engine
class EmptyProfile(SlopeLabError):
    pass


class NotStrictlyIncreasingRanks(SlopeLabError):
    pass


class NotStrictlyDecreasingSlopes(SlopeLabError):
    pass


class InvalidSequence(SlopeLabError):
    pass


class ModelMismatch(SlopeLabError):
    pass


class InvalidModel(SlopeLabError):
    pass


class TooShort(SlopeLabError):
    pass


# bound_lib
class AmbientTooSmall(SlopeLabError):
    pass


class TooFewSections(SlopeLabError):
    pass


class DimensionTooSmall(SlopeLabError):
    pass


class GapOne(SlopeLabError):
    pass


class InvalidCodim(SlopeLabError):
    pass


# slope_theorems
class NoSections(SlopeLabError):
    pass


class ZeroPushforwardDegree(SlopeLabError):
    pass


class HypothesisNotMet(SlopeLabError):
    pass


class UnknownTheorem(SlopeLabError):
    pass


class InconsistentInvariants(SlopeLabError):
    pass


class InvalidThreshold(SlopeLabError):
    pass


class NonIntegralTwist(SlopeLabError):
    pass


class TwistTooSmall(SlopeLabError):
    pass


class DegenerateDenominator(SlopeLabError):
    pass


# families
class NotNef(SlopeLabError):
    pass


class NonpositiveDegree(SlopeLabError):
    pass


class WrongRank(SlopeLabError):
    pass


class RankRange(SlopeLabError):
    pass


class AssumptionViolated(SlopeLabError):
    pass


class NotWellFormed(SlopeLabError):
    pass


class BranchTooSmall(SlopeLabError):
    pass


class ParamRange(SlopeLabError):
    pass
