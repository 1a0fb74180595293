"""
Exception hierarchy shared by the library, the CLI and the HTTP API.

Library code raises; cli.py and api.py translate InvalidInputError into
exit code 2 / HTTP 400 and BudgetExceeded into exit code 3.
"""


class FFFramesError(Exception):
    pass


class InvalidInputError(FFFramesError):
    pass


class BudgetExceeded(FFFramesError):
    pass


# gf
class NotPrime(InvalidInputError):
    pass


class CharTwoRejected(InvalidInputError):
    pass


class ReduciblePolynomial(InvalidInputError):
    pass


class InvolutionUnavailable(InvalidInputError):
    pass


class DenominatorVanishes(InvalidInputError):
    pass


# linalg / geometry
class NotSquare(InvalidInputError):
    pass


class DimensionMismatch(InvalidInputError):
    pass


class NotHermitian(InvalidInputError):
    pass


class Degenerate(InvalidInputError):
    pass


class NoInvertiblePrincipalBlock(InvalidInputError):
    pass


class InconsistentRank(InvalidInputError):
    pass


# frames
class NotEquiangular(InvalidInputError):
    pass


class NotTight(InvalidInputError):
    pass


class ZeroTight(InvalidInputError):
    pass


class HypothesisViolated(InvalidInputError):
    pass


class ComplementVerificationFailed(FFFramesError):
    pass


# equivalence
class IndexOutOfRange(InvalidInputError):
    pass


class ShapeMismatch(InvalidInputError):
    pass


class StrategyPreconditionFailed(InvalidInputError):
    pass


# combinatorics
class BetaNotRoot(InvalidInputError):
    pass


class CaseU(InvalidInputError):
    pass


class InvalidTwoGraph(InvalidInputError):
    pass


class CompleteOrEmpty(InvalidInputError):
    pass


class UnequalBlockSizes(InvalidInputError):
    pass


class NotIncoherent(InvalidInputError):
    pass


class NotMaximal(InvalidInputError):
    pass


class NotIndependent(InvalidInputError):
    pass


class HypothesesNotMet(InvalidInputError):
    pass
