class LSplineError(Exception):
    """Base class of every error raised by the lspline package.

    The command line front end maps each subclass onto a process exit code
    through the ``exit_code`` class attribute.
    """

    exit_code = 4  #: Exit status reported by the command line front end.


class DomainError(LSplineError, ValueError):
    """An argument lies outside the domain of a kernel function."""


class DimensionMismatch(LSplineError, ValueError):
    """Array lengths do not agree with the knot grid or the system size."""


class NonFiniteInput(LSplineError, ValueError):
    """An input array contains NaN or an infinity."""


class SingularSystem(LSplineError, ArithmeticError):
    """A pivot of the tridiagonal elimination vanished."""


class SingularMatrix(LSplineError, ArithmeticError):
    """The dense reference solver met a vanishing pivot."""


class InvalidOrder(LSplineError, ValueError):
    """A derivative order other than 1 or 2 was requested."""


class BadSpec(LSplineError, ValueError):
    """A sampling request is malformed."""


class ConfigError(LSplineError):
    """The run configuration is inconsistent."""

    exit_code = 1


class ParseError(LSplineError):
    """An input file could not be parsed.

    Args:
        message: A description of the problem.
        line: The 1-based line number of the offending input line.
        column: The 1-based column number, if known.
    """

    exit_code = 2

    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line  #: The 1-based line number of the offending input line.
        self.column = column  #: The 1-based column of the offending field.
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{message}")


class IoError(LSplineError):
    """A file could not be read or written."""

    exit_code = 3
