import math

SNAP_TOLERANCE = 1e-9


def snap_to_integer(x: float, tolerance: float = SNAP_TOLERANCE) -> float:
    """Returns round(x) when x sits within a relative tolerance of an integer, else x."""
    nearest = round(x)
    if abs(x - nearest) <= tolerance * max(1.0, abs(x)):
        return float(nearest)
    return x


def sample_size_ceiling(x: float) -> int:
    """ceil(x) clamped below at 1, after snapping float noise around integers."""
    if not math.isfinite(x):
        raise OverflowError(f"sample size is not finite: {x}")
    return max(1, math.ceil(snap_to_integer(x)))
