from .types import (
    TwoPoint,
    FinitePMF,
    LatticeSpec,
    MomentSummary,
    DistributionSpec,
    FinitePopulation,
)
from .lattice import minimal_lattice, standardize_lattice
from .moments import compute_moments, moments_of_mean, naive_sample_size
from .population_csv import read_population_csv, write_population_csv

__all__ = [
    "TwoPoint",
    "FinitePMF",
    "LatticeSpec",
    "MomentSummary",
    "compute_moments",
    "minimal_lattice",
    "moments_of_mean",
    "DistributionSpec",
    "FinitePopulation",
    "naive_sample_size",
    "standardize_lattice",
    "read_population_csv",
    "write_population_csv",
]
