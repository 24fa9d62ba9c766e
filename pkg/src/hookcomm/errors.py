"""Exception and warning types shared across the package."""


class UnsupportedHookError(ValueError):
    """A hook type (n, 1^m) with n >= 3 and m >= 1 was required."""


class ResourceLimitError(RuntimeError):
    """An enumeration or grid would exceed its configured size cap."""


class NotNilpotentError(ValueError):
    """A matrix expected to be nilpotent has a power of stable nonzero rank."""


class BadPrimeError(ArithmeticError):
    """A modular reduction hit a denominator divisible by the prime.

    Callers should retry with a fresh prime.
    """


class WitnessUnavailableError(RuntimeError):
    """No explicit witness construction applies to the given certificate."""


class VerificationError(RuntimeError):
    """An internal consistency check failed.  Indicates a bug, not bad input."""


class DominanceAnomalyWarning(UserWarning):
    """Sampled Jordan types had no common dominance upper bound among them."""
