from .grid import (
    GridKind,
    GridFunction,
    step_cdf,
    read_grid_csv,
    standard_grid,
    write_grid_csv,
    normal_cdf_grid,
    normal_pdf_grid,
)
from .metrics import (
    KLResult,
    BhattacharyyaResult,
    hellinger,
    js_metric,
    ks_distance,
    wkr_distance,
    bhattacharyya,
    kl_divergence,
    on_common_grid,
    wkr_distance_quantile,
)

__all__ = [
    "GridKind",
    "KLResult",
    "step_cdf",
    "hellinger",
    "js_metric",
    "ks_distance",
    "GridFunction",
    "wkr_distance",
    "bhattacharyya",
    "kl_divergence",
    "read_grid_csv",
    "standard_grid",
    "on_common_grid",
    "write_grid_csv",
    "normal_cdf_grid",
    "normal_pdf_grid",
    "BhattacharyyaResult",
    "wkr_distance_quantile",
]
