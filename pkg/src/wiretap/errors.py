"""Exception types raised across the package."""


class WiretapError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(WiretapError, ValueError):
    pass


class ExponentNotCoprime(WiretapError, ValueError):
    pass


class WrongLength(WiretapError, ValueError):
    pass


class InfeasibleParameters(WiretapError, ValueError):
    pass


class NotMember(WiretapError, ValueError):
    pass


class DimensionTooLarge(WiretapError, ValueError):
    pass


class InterpolationFailed(WiretapError, RuntimeError):
    pass


class TooLarge(WiretapError, ValueError):
    """Raised when an exhaustive computation would exceed its enumeration cap."""


class InvalidSets(WiretapError, ValueError):
    pass


class NotRestricted(WiretapError, ValueError):
    pass


class DomainError(WiretapError, ValueError):
    pass


class ConfigError(WiretapError, ValueError):
    """Malformed parameter document or CLI input."""
