"""Exception types shared across the package."""


class DataError(ValueError):
    """Input data is well-formed but unusable (empty, zero counts, ...)."""


class ParseError(ValueError):
    """A data file does not match its schema."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)
