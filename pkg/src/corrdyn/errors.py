"""Exception hierarchy for corrdyn."""


class CorrdynError(Exception):
    """Base class for all corrdyn errors."""


class NonPhysical(CorrdynError, ValueError):
    """Correlation vector lies outside the Bell tetrahedron."""


class NegativeTime(CorrdynError, ValueError):
    pass


class BadStep(CorrdynError, ValueError):
    pass


class BadKappa(CorrdynError, ValueError):
    pass


class OutOfRange(CorrdynError, ValueError):
    pass


class NotInClass(CorrdynError, ValueError):
    pass


class PureEntangled(CorrdynError, ValueError):
    """Dissonance is undefined when the largest Bell population equals one."""


class ConfigError(CorrdynError, ValueError):
    pass
