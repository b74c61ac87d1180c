"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
1 for netlist/parse problems, 2 for numerical failures, 3 when a spectral
feature could not be located.
"""


class CouplingError(Exception):
    exit_code = 2


# -- numerical failures --------------------------------------------------------

class SingularMatrix(CouplingError):
    pass


class ZeroMagnitudeSample(CouplingError):
    pass


class NoConvergence(CouplingError):
    pass


class StepTooLarge(CouplingError):
    pass


class ZeroKappa(CouplingError):
    pass


class SingularJunction(CouplingError):
    pass


class CouplingOutOfRange(CouplingError, ValueError):
    pass


class InvalidSplitting(CouplingError, ValueError):
    pass


class SingularResponse(CouplingError):
    pass


class SingularAtResonantLength(CouplingError):
    pass


class ElementSingularAtFrequency(CouplingError):
    pass


class SingularNetwork(CouplingError):
    pass


class PoorFit(CouplingError):
    pass


# -- feature location ----------------------------------------------------------

class FeatureNotFound(CouplingError):
    exit_code = 3


class NoModeInWindow(FeatureNotFound):
    pass


# -- netlist input -------------------------------------------------------------

class NetlistError(CouplingError):
    exit_code = 1


class ParseError(NetlistError):
    def __init__(self, line, col, message, token=None):
        self.line = line
        self.col = col
        self.token = token
        self.message = message
        where = f"line {line}, col {col}"
        if token is not None:
            where += f" (token {token})"
        super().__init__(f"{where}: {message}")


class UnknownNode(NetlistError):
    pass


class DuplicateName(NetlistError):
    pass
