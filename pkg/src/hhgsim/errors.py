"""Exception types shared across the package."""


class HhgError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(HhgError):
    """Invalid, unknown, or missing configuration key; carries the key path."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")


class TableRangeError(HhgError):
    """Query outside the tabulated intensity range (no extrapolation)."""


class TailConvergenceError(HhgError):
    """Return-time integral tail estimate above tolerance at tau_max."""

    def __init__(self, tail_estimate, tolerance, context=""):
        self.tail_estimate = tail_estimate
        self.tolerance = tolerance
        suffix = f" ({context})" if context else ""
        super().__init__(
            f"tau-integral tail estimate {tail_estimate:.3e} exceeds "
            f"tolerance {tolerance:.3e}; increase tau_max_periods{suffix}"
        )


class TransitionNotFoundError(HhgError):
    """No plateau-cutoff change of slope inside the scanned range."""


class FieldBlowUpError(HhgError):
    """Non-finite field during a propagation march; carries the plane index."""

    def __init__(self, plane_index, z_mm):
        self.plane_index = plane_index
        self.z_mm = z_mm
        super().__init__(f"non-finite field at plane {plane_index} (z = {z_mm:.3f} mm)")


class GridError(HhgError):
    """Inconsistent or unusable grid configuration."""


class WindowingError(HhgError):
    """Spectral window overlaps a neighboring harmonic."""


class FitError(HhgError):
    """Degenerate fit (too few usable points/bins)."""
