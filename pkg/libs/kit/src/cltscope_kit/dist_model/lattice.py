import math
from fractions import Fraction

from cltscope_core.errors import (
    NonLatticeError,
    InvalidInputError,
    LatticeUndefinedError,
    DegenerateDistributionError,
)

from .types import LatticeSpec, MomentSummary, DistributionSpec, FinitePopulation
from .moments import compute_moments

MAX_DENOMINATOR = 10**6
RATIONAL_TOLERANCE = 1e-9


def _as_rational(value: float) -> Fraction:
    fraction = Fraction(value).limit_denominator(MAX_DENOMINATOR)
    if abs(float(fraction) - value) > RATIONAL_TOLERANCE:
        raise NonLatticeError(
            f"support point {value!r} has no rational form with denominator <= {MAX_DENOMINATOR}"
        )
    return fraction


def standardize_lattice(a: float, h_max: float, ms: MomentSummary) -> LatticeSpec:
    if not h_max > 0.0:
        raise InvalidInputError(f"lattice span must be positive, got {h_max}")

    return LatticeSpec(
        a=a,
        h_max=h_max,
        a_star=(a - ms.mu) / ms.sigma,
        h_star=h_max / ms.sigma,
    )


def minimal_lattice(dist: DistributionSpec) -> LatticeSpec:
    """
    Smallest support point and maximal span of a discrete law.

    Support points are snapped to rationals; the span is the gcd of the gaps
    over a common denominator. Atoms with zero mass are not part of the support.
    """
    if isinstance(dist, FinitePopulation):
        raise LatticeUndefinedError(
            "a finite population has no lattice; give it as a FinitePMF instead"
        )

    support, probs = dist.atoms()
    points = [float(y) for y, p in zip(support, probs) if p > 0.0]
    if len(points) < 2:
        raise DegenerateDistributionError("a lattice span needs at least two support points")

    rationals = [_as_rational(y) for y in points]
    denominator = math.lcm(*(r.denominator for r in rationals))
    numerators = [r.numerator * (denominator // r.denominator) for r in rationals]
    span = math.gcd(*(k - numerators[0] for k in numerators[1:]))

    return standardize_lattice(
        a=points[0],
        h_max=float(Fraction(span, denominator)),
        ms=compute_moments(dist),
    )
