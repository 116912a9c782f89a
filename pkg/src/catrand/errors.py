"""Exception hierarchy.  CLI exit codes are attached to each class."""


class CatrandError(Exception):
    exit_code = 1


class DimensionError(CatrandError, ValueError):
    """Subsystem dimensions do not factor the operator, or plans do not fit."""

    exit_code = 5


class InvalidObjectError(CatrandError, ValueError):
    """A matrix fails the validity checks of a state or channel."""

    exit_code = 3


class InvalidStateError(InvalidObjectError):
    pass


class InvalidChannelError(InvalidObjectError):
    pass


class NotHermitianError(InvalidObjectError):
    pass


class ClassificationError(CatrandError):
    """Essential-decomposition blocks could not be typed at the requested tolerance,
    or a factorized block was met in strict mode."""

    exit_code = 4


class NotCatalyticError(CatrandError, ValueError):
    exit_code = 3


class ResourceCapError(CatrandError):
    exit_code = 6


class ParseError(CatrandError):
    """An input file is not valid JSON or lacks required fields."""

    exit_code = 2
