"""Exception types raised by the geometry kernels."""


class NKError(Exception):
    """Base class for all errors raised by nkahler."""


class BasisMismatchError(NKError, ValueError):
    pass


class UnknownBasisError(NKError, ValueError):
    pass


class RankDeficientError(NKError, ValueError):
    pass


class DomainError(NKError, ValueError):
    """A point or parameter lies outside the chart domain."""


class AntiDiagonalError(DomainError):
    """(mu1, mu2) lies on (or too close to) the removed set mu1 * conj(mu2) = -1."""


class ImmersionError(NKError, ValueError):
    def __init__(self, message, params=None):
        super().__init__(message)
        self.params = params


class DegenerateMetricError(NKError, ValueError):
    pass


class DegenerateCurveError(NKError, ValueError):
    pass
