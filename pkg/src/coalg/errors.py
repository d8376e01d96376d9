"""Exception hierarchy shared by all coalg modules."""


class CoalgError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(CoalgError):
    """Shapes or index ranges are inconsistent."""


class UsageError(CoalgError):
    """A request is malformed (unknown name, bad parameter, bad combination)."""


class PreconditionError(CoalgError):
    """A stated hypothesis of an operation does not hold for the given input."""


class InvalidStructureError(CoalgError):
    """An input structure fails its defining axioms.

    Carries the validation report that witnessed the failure.
    """

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations) if violations is not None else []


class ParseError(CoalgError):
    """A structure file is malformed. `location` names the offending spot."""

    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{message} (at {location})")
        self.location = location
