"""Exception types; each carries the process exit code the CLI reports."""


class TropError(Exception):
    code = "error"
    exit_code = 1


class ParseError(TropError):
    code = "parse-error"
    exit_code = 2


class InvariantError(TropError, ValueError):
    code = "invariant-violation"
    exit_code = 3


class DimensionError(TropError):
    code = "dimension-condition"
    exit_code = 4


class GeneralityError(TropError):
    code = "generality-violation"
    exit_code = 5


class FieldExtensionRequired(TropError):
    code = "field-extension-required"
    exit_code = 6


class PrecisionError(TropError, ArithmeticError):
    code = "precision-exhausted"
    exit_code = 7


class LiftingStalled(TropError):
    code = "lifting-stalled"
    exit_code = 8
