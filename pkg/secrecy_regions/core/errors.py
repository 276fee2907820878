"""Error types shared by the evaluators and the CLI."""


class ConfigError(ValueError):
    """Invalid user input: malformed pmf, inconsistent power split, bad axis sets, bad CLI pairing.

    ``field`` names the offending input so the CLI can report it.
    """

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.field}: {msg}" if self.field else msg


class NumericError(RuntimeError):
    """Internal-consistency failure (negative information, unbounded or failed LP)."""
