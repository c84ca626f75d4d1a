"""Exception types shared across the package."""


class VolkovwpError(Exception):
    """Base class for all package errors."""


class EvanescentMode(VolkovwpError):
    """The correlation constraint has no real longitudinal momentum here."""


class SingularSlice(VolkovwpError):
    """The requested velocity coincides with p3/E; the transverse Jacobian
    diverges and every nonzero transverse momentum turns evanescent."""


class DesignerSingular(VolkovwpError):
    """The out-of-field velocity map has a vanishing denominator."""


class ParaxialInvalid(VolkovwpError):
    """Transverse momentum spread too large for the paraxial fast path."""


class FlatSlice(VolkovwpError):
    """A density slice has no distinguishable maximum."""


class ResolutionError(VolkovwpError):
    """A space-time grid is too coarse for the momentum content."""


class CacheRangeError(VolkovwpError):
    """A cumulative field integral was queried outside its cached range."""


class ScenarioError(VolkovwpError):
    """Scenario validation failed; ``errors`` lists every violation."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
