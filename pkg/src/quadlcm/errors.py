"""Exception types raised by quadlcm.

Every error derives from :class:`QuadLCMError`, itself a ``ValueError``, so
callers can catch the whole family or one precise failure.
"""


class QuadLCMError(ValueError):
    pass


class ConstantPolynomial(QuadLCMError):
    pass


class CoefficientTooLarge(QuadLCMError):
    pass


class NotNormalizable(QuadLCMError):
    pass


class NotDependent(QuadLCMError):
    pass


class NotApplicable(QuadLCMError):
    pass


class LimitTooLarge(QuadLCMError):
    pass


class ZeroBottom(QuadLCMError):
    pass


class BadResidueClass(QuadLCMError):
    pass


class ModeMismatch(QuadLCMError):
    pass


class EmptySet(QuadLCMError):
    pass


class TooLarge(QuadLCMError):
    pass


class BadOrder(QuadLCMError):
    pass


class DegenerateFactor(QuadLCMError):
    pass


class PrecisionUnreachable(QuadLCMError):
    pass


class BadDensity(QuadLCMError):
    pass


class RegimeTooSparse(QuadLCMError):
    pass
