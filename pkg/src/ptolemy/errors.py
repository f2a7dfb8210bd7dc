"""Exception hierarchy shared by every module of the engine."""


class PtolemyError(Exception):
    """Base class for every error raised by the engine."""


class ArcError(PtolemyError, ValueError):
    """An arc or vertex is invalid for the model it is used in."""


class DiagramError(PtolemyError, ValueError):
    """A diagram violates a structural invariant."""


class WindowOverflow(PtolemyError):
    """A result would leave the window of an infinite model."""


class NotPtolemy(PtolemyError):
    """An operation requiring a Ptolemy diagram received something else."""


class InvalidMutatingSet(PtolemyError):
    """The mutating set is not contained in the core, or is not functorially finite."""


class TriangleCheckFailed(PtolemyError):
    """A mutation triangle failed one of its checks.

    Carries the offending report in ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DocumentError(PtolemyError, ValueError):
    """A diagram document could not be parsed or validated."""


class MutationError(PtolemyError):
    """Mutation produced an inconsistent result (an engine bug if ever raised)."""
