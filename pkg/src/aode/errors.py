"""Exception hierarchy shared across the toolkit."""


class AodeError(Exception):
    """Base class for all toolkit errors."""


class UndefinedOrderError(AodeError):
    """Order or lowest coefficient requested for the zero function."""


class NotADifferentialEquationError(AodeError):
    """No term of the input involves y or any of its derivatives."""


class DegenerateEquationError(AodeError):
    """The input collapses to the identically zero equation."""


class ZeroIndicialError(AodeError):
    """An order bound was requested at a place whose indicial polynomial vanishes."""

    def __init__(self, place: str):
        super().__init__(f"indicial polynomial is identically zero at {place}")
        self.place = place


class CriticalEquationError(AodeError):
    """Degree-bound computation requested for an equation with zero indicial polynomial at infinity."""


class CapError(AodeError):
    """A configurable resource cap was exceeded; computation aborted."""


class FactorDegreeCapError(CapError):
    """Irreducible factorization requested beyond the configured degree cap."""


class ReductionBudgetError(CapError):
    """Groebner basis computation exceeded its reduction-step budget."""


class AnsatzCapError(CapError):
    """Candidate-solution construction exceeded the unknown-count or bound caps."""


class ParseError(AodeError):
    """Syntax or lowering error in the textual equation language."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
