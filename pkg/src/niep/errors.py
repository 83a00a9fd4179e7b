"""Exception hierarchy.

Everything raised on purpose by the package derives from :class:`NiepError`,
so callers (and the CLI) can separate input problems from programming errors.
"""


class NiepError(Exception):
    pass


class InputError(NiepError, ValueError):
    """The caller handed us something outside an operation's contract."""


class NotConjugateClosed(InputError):
    pass


class NoPerronCandidate(InputError):
    pass


class NotAnEigenpair(InputError):
    pass


class NotAnEigenvalue(InputError):
    pass


class RankDeficientX(InputError):
    pass


class EigenRelationViolated(InputError):
    pass


class NotOrthonormal(InputError):
    pass


class NotSymmetric(InputError):
    pass


class NotUnit(InputError):
    pass


class NegativeEps(InputError):
    pass


class EpsTooSmall(InputError):
    pass


class EpsTooLarge(InputError):
    pass


class OrderViolated(InputError):
    pass


class BadSigns(InputError):
    pass


class Lambda2NotReal(InputError):
    pass


class DegenerateEigenvector(InputError):
    pass


class PerronExceedsCorner(InputError):
    pass


class TailTooLarge(InputError):
    pass


class NotDiagonalizable(InputError):
    pass


class IllConditioned(InputError):
    pass


class CriterionNotSatisfied(NiepError):
    """A sufficient condition does not hold; says nothing about realizability."""


class RegionViolated(CriterionNotSatisfied):
    pass


class NoPartitionFound(CriterionNotSatisfied):
    pass


class ConditionsNotSatisfied(CriterionNotSatisfied):
    pass


class PositiveRealizationNotFound(CriterionNotSatisfied):
    pass


class InternalConstructionError(NiepError, RuntimeError):
    """A construction produced output that fails its own oracle check. A bug."""


class NoNonnegativeRoot(InternalConstructionError):
    pass


class ComplexPerturbation(InternalConstructionError):
    pass


class RankChainInconsistent(InternalConstructionError):
    pass


class BoundNotFound(InternalConstructionError):
    pass
