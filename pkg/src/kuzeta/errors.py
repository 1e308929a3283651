"""Exception types shared across the package."""


class KuZetaError(ValueError):
    """Base class for every error raised by kuzeta."""


class ValidationError(KuZetaError):
    """A K-theory datum or input document violates an invariant."""


class OutOfRangeError(KuZetaError):
    """A query falls outside the range where an exact answer is defined."""


class PoleError(OutOfRangeError):
    """Evaluation requested at a pole."""


class TranscendentalValueError(OutOfRangeError):
    """An exact value was requested at an argument where it is not rational."""


class NotRationalError(KuZetaError):
    """A cyclotomic element expected to be rational is not."""
