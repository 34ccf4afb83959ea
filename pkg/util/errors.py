from util.state_manager import ExitCode

class ScarLadderError(Exception):
    """Base class of the errors the command line turns into exit codes."""
    kind: str = "error"
    exit_code: ExitCode = ExitCode.CONFIG

    def one_line(self) -> str:
        """
        Returns the machine-parsable one-line form of the error.

        :return: The line printed on stderr.
        :rtype: str
        """
        message = str(self).replace('"', "'").replace("\n", " ")
        return f'error kind={self.kind} code={self.exit_code.value} message="{message}"'

class ConfigError(ScarLadderError, ValueError):
    """Raised for invalid settings, flags, names and grids."""
    kind = "config"
    exit_code = ExitCode.CONFIG

class UnsupportedGeometryError(ConfigError):
    """Raised when an operation does not support the requested geometry."""

class CapacityError(ScarLadderError):
    """Raised when a matrix is too large for dense diagonalization."""
    kind = "capacity"
    exit_code = ExitCode.CAPACITY

class ToleranceError(ScarLadderError, ArithmeticError):
    """Raised when a numerical check exceeds its budget."""
    kind = "tolerance"
    exit_code = ExitCode.TOLERANCE
