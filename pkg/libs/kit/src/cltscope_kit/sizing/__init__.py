from .bounds import (
    ESSEEN_CONSTANT,
    DEFAULT_BERRY_ESSEEN_CONSTANT,
    WllnComparison,
    BerryEsseenBound,
    wlln_clt_n,
    esseen_extremal,
    wlln_comparison,
    chebyshev_wlln_n,
    berry_esseen_bound,
)
from .table import SampleSizeCell, sample_size_table
from .quartic import (
    QuarticProblem,
    g_of_z,
    n3_max,
    n3_star,
    n34_star,
    ferrari_roots,
    quartic_problem,
    quartic_residual,
    skewness_sample_size,
)

__all__ = [
    "SampleSizeCell",
    "sample_size_table",
    "g_of_z",
    "n3_max",
    "n3_star",
    "n34_star",
    "wlln_clt_n",
    "ferrari_roots",
    "QuarticProblem",
    "WllnComparison",
    "ESSEEN_CONSTANT",
    "esseen_extremal",
    "quartic_problem",
    "wlln_comparison",
    "BerryEsseenBound",
    "chebyshev_wlln_n",
    "quartic_residual",
    "berry_esseen_bound",
    "skewness_sample_size",
    "DEFAULT_BERRY_ESSEEN_CONSTANT",
]
