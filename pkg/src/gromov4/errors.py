"""Exception and warning types shared across the package.

DomainError covers violations of mathematical preconditions (the CLI maps
these to exit code 1); ValueError subclasses cover malformed input such as
unparseable class expressions or invalid model files (CLI exit code 2).
"""

from __future__ import annotations


class DomainError(Exception):
    """A computation was asked to run outside its mathematical domain."""


class LatticeMismatchError(DomainError):
    """Classes from different lattices were combined."""


class PreconditionError(DomainError):
    """An operation's stated precondition does not hold."""


class ParityError(DomainError):
    """c1(A) + A.A is odd, so the canonical class is not characteristic."""


class NotInExceptionalSetError(DomainError):
    """A class was used as exceptional without being in the stored set."""


class InvalidCandidateError(DomainError):
    """A decomposition candidate has non-positive area."""


class UnknownGr0Error(DomainError):
    """A decomposition part has no Gr0 value in the model tables."""

    def __init__(self, classes):
        self.classes = tuple(classes)
        names = ", ".join(str(c) for c in self.classes)
        super().__init__(f"unknown Gr0 value for class {names}")


class UnknownSphereCountError(DomainError):
    """A sphere configuration references a class missing from sphere_table."""


class ClassParseError(ValueError):
    """A class expression could not be parsed."""


class UnknownPresetError(ValueError):
    """No preset with the requested name exists."""


class ModelFileError(ValueError):
    """A manifold model file failed validation.

    `path` locates the offending value inside the document ("$.gram[1][0]").
    """

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class ReductionConsistencyWarning(UserWarning):
    """k(B) = k'(A) failed; the stored exceptional set is not orthogonal."""


class AssignmentAmbiguityWarning(UserWarning):
    """Repeated components with several representatives each; the point
    assignment count is a documented convention, not a pinned-down value."""
