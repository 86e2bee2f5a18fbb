"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: precondition/input problems exit
with 2, violated internal certificates exit with 3.
"""


class MetricLieError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(MetricLieError):
    """An operation was called on input violating its preconditions."""


class CertificateError(MetricLieError):
    """An internal consistency certificate failed.

    This signals a bug (or an input that slipped past precondition
    checks), never a legitimate outcome.
    """


class DocumentError(MetricLieError):
    """A serialized algebra document could not be parsed or validated."""
