"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed edge-list document; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class SpecError(ValueError):
    """Invalid generator spec (bad grammar or parameters)."""


class ContractViolation(RuntimeError):
    """An internal precondition or proved guarantee failed.

    Raised instead of returning a possibly-wrong answer; seeing one means a
    caller skipped a required screening step or there is a bug.
    """
