"""
Engine Exceptions
Config errors map to exit status 2, capability errors to exit status 3.
"""


class ProphetError(Exception):
    """Base exception for engine errors."""
    exit_status = 1


class ConfigInvalidError(ProphetError):
    """A document, directive or parameter is malformed or out of range."""
    exit_status = 2


class EllOutOfRangeError(ConfigInvalidError):
    """Threshold family index outside its admissible range."""
    pass


class IndexOutOfRangeError(ConfigInvalidError):
    """Order-statistic index outside 1..n."""
    pass


class RankOutOfRangeError(ConfigInvalidError):
    """Agent rank outside 1..k."""
    pass


class RuleMismatchError(ConfigInvalidError):
    """Operation requires the other tie-breaking rule."""
    pass


class CapabilityError(ProphetError):
    """The instance is valid but beyond what exact computation supports."""
    exit_status = 3


class NotDiscreteError(CapabilityError):
    """Exact computation requested on a continuous distribution."""
    pass


class ExplosionCapError(CapabilityError):
    """Joint realization count exceeds the enumeration cap."""
    pass


class TooManyAgentsError(CapabilityError):
    """Active-set state space too large for the best-response DP."""
    pass
