"""Exception hierarchy.

Every error carries the process exit code the command line front end uses
for it: 2 parse, 3 domain, 4 internal infeasibility, 5 data mismatch.
"""


class LinsanError(Exception):
    exit_code = 1


class ParseError(LinsanError):
    exit_code = 2


class ValidationError(LinsanError, ValueError):
    """Input violates a domain constraint."""

    exit_code = 3


class NegativeEntry(ValidationError):
    pass


class SumNotOne(ValidationError):
    pass


class DeadSymbol(ValidationError):
    pass


class RowNotStochastic(ValidationError):
    pass


class AlphaOutOfRange(ValidationError):
    pass


class InvalidDistortion(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class UnknownLabel(LinsanError, KeyError):
    exit_code = 5

    def __str__(self):
        # KeyError quotes its argument; keep the plain message.
        return str(self.args[0]) if self.args else ""


class LpError(LinsanError):
    exit_code = 4


class LpInfeasible(LpError):
    """A mechanism LP that is feasible by construction reported otherwise."""


class NumericalBreakdown(LpError):
    pass
