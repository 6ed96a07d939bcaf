class ParseError(ValueError):
    """Input could not be read as a problem document or BUI literal."""

    exit_code = 2


class ValidationError(ValueError):
    """Input was well formed but violates a value or shape constraint."""

    exit_code = 3
