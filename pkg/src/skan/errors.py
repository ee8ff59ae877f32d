"""Exception hierarchy shared by every skan module."""


class SkanError(Exception):
    """Base class for all errors raised by skan."""


class InvalidArgument(SkanError, ValueError):
    pass


class SimplicialIdentityViolation(SkanError):
    def __init__(self, message, generator=None, identity=None):
        super().__init__(message)
        self.generator = generator
        self.identity = identity


class DanglingFace(SkanError):
    pass


class DegenerateGeneratorListed(SkanError):
    pass


class InsufficientDimensionBound(SkanError):
    pass


class EmptyInput(SkanError):
    pass


class VertexNotFound(SkanError, KeyError):
    pass


class RelationNotSimplicial(SkanError):
    pass


class InvalidMap(SkanError):
    pass


class BudgetExceeded(SkanError):
    pass


class CombinatorialBlowup(SkanError):
    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class CertificateNotFound(SkanError):
    def __init__(self, message, failing=None):
        super().__init__(message)
        self.failing = failing


class CertificateMissing(SkanError):
    pass


class TargetNotKan(SkanError):
    pass


class SourceNotKan(SkanError):
    pass


class NotAbelian(SkanError):
    pass


class NotReduced(SkanError):
    pass


class ActionNotFree(SkanError):
    pass


class InvalidGroup(SkanError):
    pass


class InvalidAction(SkanError):
    pass


class ProjectionNotFibration(SkanError):
    pass


class TwistingIdentityViolation(SkanError):
    pass


class CrossCheckMismatch(SkanError):
    """Two independent constructions disagreed; always an implementation bug."""


class SectionNotFound(SkanError):
    pass


class IntersectionNotContractible(SkanError):
    def __init__(self, message, members=None):
        super().__init__(message)
        self.members = members


class ParseError(SkanError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaError(SkanError):
    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
