"""Exception types shared across dehnkit."""


class DomainError(ValueError):
    """An input lies outside the domain of the requested operation."""


class InvalidSlopeError(DomainError):
    pass


class NotInvertibleError(DomainError):
    pass


class NotKnotPolynomialError(DomainError):
    """No unit multiple of the polynomial is a symmetric knot polynomial."""


class InconclusiveError(DomainError):
    """The comparison falls outside the regime where it is decidable here."""


class RecordError(ValueError):
    """A knotdb record failed to parse or validate."""

    def __init__(self, record, field, message):
        self.record = record
        self.field = field
        super().__init__(f"record {record!r}, field {field!r}: {message}")
