"""Exception types shared across the package."""


class PolmaxError(Exception):
    """Base class for all polmax errors."""


class NonPositiveLength(PolmaxError):
    def __init__(self, field):
        self.field = field
        super().__init__(f"domain length '{field}' must be strictly positive")


class NonPositiveParameter(PolmaxError):
    def __init__(self, field):
        self.field = field
        super().__init__(f"physical parameter '{field}' must be strictly positive")


class IncommensurateBlocks(PolmaxError):
    """Equal vertical spacing would require a non-integer layer count."""


class TooCoarse(PolmaxError):
    """A node count is below its minimum (or violates the parity rule)."""


class ShapeMismatch(PolmaxError):
    pass


class BlockMismatch(PolmaxError):
    """Field block layout incompatible with the requested basis."""


class NodalAxisDerivative(PolmaxError):
    """Vertical derivative requested on a representation without a vertical basis."""


class NodalAxisTrace(PolmaxError):
    """Vertical trace requested on a representation without a vertical basis."""


class ResonantFrequency(PolmaxError):
    """omega^2 too close to an eigenvalue of the coupled system.

    Carries the nearest eigenvalue with its mode indices and provenance.
    """

    def __init__(self, value, k, provenance, distance):
        self.value = value
        self.k = tuple(k)
        self.provenance = provenance
        self.distance = distance
        super().__init__(
            f"omega^2 within {distance:.3e} of eigenvalue {value!r} "
            f"at k={tuple(k)} ({provenance})"
        )


class ResonantAxialFrequency(PolmaxError):
    """omega^2*eps*mu too close to an axial wavenumber (2*pi*k1/l1)^2."""

    def __init__(self, value, k1, distance):
        self.value = value
        self.k1 = k1
        self.distance = distance
        super().__init__(
            f"omega^2 within {distance:.3e} of axial eigenvalue {value!r} at k1={k1}"
        )


class DegenerateMode(PolmaxError):
    """The requested closed-form mode is identically zero."""


class RecipeViolatesConstraints(PolmaxError):
    """A manufactured recipe breaks an interface or boundary invariant."""


class FieldFileError(PolmaxError):
    """Malformed or inconsistent binary field file."""


class ConfigError(PolmaxError):
    """Invalid run configuration."""
