"""Exception hierarchy shared across the package."""


class NetcacheError(Exception):
    """Base class for all errors raised by this package."""


class DanglingId(NetcacheError):
    """An edge, request, or allocation references an id that does not exist."""


class BadDistribution(NetcacheError):
    """A user's request probabilities are negative or do not sum to one."""


class NonPositive(NetcacheError):
    """A weight, content size, or cache capacity is not strictly positive."""


class UnknownUser(NetcacheError):
    """A user id was queried that is not part of the instance."""


class TooLarge(NetcacheError):
    """An a-priori size guard was exceeded; refuse rather than blow up."""


class NotHomogeneous(NetcacheError):
    """An operation that requires equal content sizes got mixed sizes."""


class NoFeasibleAlgorithm(NetcacheError):
    """Every solver's a-priori bound exceeds the given budget."""


class InvalidCase(NetcacheError):
    """Unknown interreduction case number."""


class InvalidFormula(NetcacheError):
    """A CNF input violates the structural requirements of a construction."""


class InvalidInstance(NetcacheError):
    """A source-problem instance violates its invariants."""


class SolverDisagreement(NetcacheError):
    """Two exact solvers reported different optima for the same instance."""


class ParseError(NetcacheError):
    """A document could not be parsed; carries the offending position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
