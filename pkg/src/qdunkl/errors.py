"""Exception types raised by the library."""


class QDunklError(ValueError):
    """Base class for all library errors."""


class InvalidParam(QDunklError):
    pass


class ZeroQuaternion(QDunklError):
    pass


class ZeroBase(QDunklError):
    pass


class ThetaSingular(QDunklError):
    """Raised when |sin(theta)| is below the configured floor."""


class GridMismatch(QDunklError):
    pass


class GridContainsZero(QDunklError):
    pass


class TruncationTooHigh(QDunklError):
    pass


class TruncationSuspect(QDunklError):
    """The minimum of a diagonal table sits on the truncation boundary."""


class UnsupportedDegree(QDunklError):
    pass


class ZeroFunction(QDunklError):
    pass
