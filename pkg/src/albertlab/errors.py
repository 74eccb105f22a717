"""Exception hierarchy for the whole package."""


class AlbertLabError(Exception):
    """Base class for all package errors."""


class ConfigError(AlbertLabError):
    """Malformed configuration or descriptor (CLI exit code 2)."""


class VerificationFailure(AlbertLabError):
    """A machine check that must hold failed (CLI exit code 1)."""


# field tower errors

class NonPrimeModulus(ConfigError):
    pass


class NotIrreducible(ConfigError):
    pass


class NotGaloisClosure(ConfigError):
    """f(rho(alpha)) is not 0 mod f, or rho does not generate Gal(L/k)."""


class LevelMismatch(AlbertLabError):
    """Element does not live in the tower level named by the caller."""


# associative algebra errors

class DescentFailure(AlbertLabError):
    """A value that must lie in a subfield failed the descent check."""


class NotSecondKind(ConfigError):
    pass


class TwistNotHermitian(ConfigError):
    pass


class NotInvertible(AlbertLabError):
    pass


# Tits construction errors

class NotAdmissible(ConfigError):
    """(u, mu) fails N_B(u) = mu * bar(mu)."""


class NoVerifiedMap(VerificationFailure):
    """No candidate isomorphism passed the norm-pullback certificate."""
