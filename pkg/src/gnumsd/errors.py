"""Exception types shared across the package."""


class OutOfRangeError(ValueError):
    """An index or parameter lies outside its documented domain."""


class DimensionMismatchError(ValueError):
    """Operands describe different numbers of qubits."""


class ZeroSuccessProbabilityError(ArithmeticError):
    """Post-selection accepts with probability too small to normalise."""


class NoSolutionError(RuntimeError):
    """No input state reaches the requested target on this code."""


class NoCrossoverError(RuntimeError):
    """Two error curves do not cross anywhere on the search grid."""
