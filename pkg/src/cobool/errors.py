"""Exception hierarchy shared by every module."""


class CoboolError(Exception):
    """Base class for all toolkit errors."""


class ParseError(CoboolError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class ValidationError(CoboolError):
    """A value violates a type invariant (bad table, unknown name, ...)."""


class ContractError(CoboolError):
    """A caller broke an operation's precondition."""


class InternalError(CoboolError):
    """An engine produced a result that failed its own re-check."""
