# qadc/core/errors.py

"""
Exception hierarchy for qadc.

Every error raised by the numerical library derives from `QadcError` and carries the
process exit code the CLI maps it to. The mapping is printed in the `--help` epilogue.
"""


class QadcError(Exception):
    """Base class for all qadc errors."""

    exit_code: int = 3


class ModelFileError(QadcError):
    """A model, strategy, state or channel file could not be read or parsed."""

    exit_code = 2


class UsageError(QadcError):
    """A required command-line flag is missing or flags conflict."""

    exit_code = 2


class InvalidChannel(QadcError):
    """A Kraus family violates complete positivity or trace preservation."""

    exit_code = 3


class InvalidState(QadcError):
    """A matrix violates the density-matrix invariants."""

    exit_code = 3


class InvalidStrategy(QadcError):
    """A strategy is internally inconsistent."""

    exit_code = 3


class RegisterMismatch(QadcError):
    """Two registers that must agree do not."""

    exit_code = 3


class DuplicateSubsystem(QadcError):
    """A subsystem name appears twice in one register."""

    exit_code = 3


class UnknownSubsystem(QadcError):
    """A subsystem name is not part of the register."""

    exit_code = 3


class NotHermitian(QadcError):
    """Hermitian input required but asymmetry exceeds tolerance."""

    exit_code = 4


class SingularFunction(QadcError):
    """Matrix function evaluated at a pole of a retained eigenvalue."""

    exit_code = 4


class BadPartition(QadcError):
    """Subsystem groups overlap, are empty, or do not cover the register."""

    exit_code = 5


class BadOrder(QadcError):
    """Divergence order or bound parameter outside its valid range."""

    exit_code = 6


class BadDistribution(QadcError):
    """Probability table is negative, unnormalized, or has no mass."""

    exit_code = 7


class BadCodeParams(QadcError):
    """Code sizes are not positive powers of two or give a zero total rate."""

    exit_code = 7


class TooLarge(QadcError):
    """Construction exceeds the configured dimension limit."""

    exit_code = 8


class BadOperatorRange(QadcError):
    """Operator outside the required range (e.g. not 0 <= S <= I)."""

    exit_code = 9


class ReferenceTooLarge(QadcError):
    """Source reference is larger than the target reference."""

    exit_code = 9


EXIT_CODES: dict[int, str] = {
    0: "success",
    1: "verification or validation check failed",
    2: "unreadable or malformed input file, or bad command line",
    3: "invalid channel, state, strategy or register",
    4: "non-Hermitian input or singular matrix function",
    5: "bad subsystem partition",
    6: "divergence order out of range",
    7: "bad distribution or code parameters",
    8: "construction too large",
    9: "operator range violation or reference too large",
}


def describe_exit_codes() -> str:
    """Render the exit-code table for help output."""
    lines = ["exit codes:"]
    lines.extend(f"  {code}  {text}" for code, text in EXIT_CODES.items())
    return "\n".join(lines)
