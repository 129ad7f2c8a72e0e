from .types import ApproxOrder, ApproxQuery, ApproxValue, KurtosisForm
from .edgeworth import (
    tau,
    edgeworth_cdf,
    edgeworth_pdf,
    min_n_nonneg_pdf,
    cdf_correction_A,
    cdf_correction_B,
    pdf_correction_C,
    pdf_correction_D,
    edgeworth_cdf_curve,
    edgeworth_pdf_curve,
)
from .lattice_clt import (
    ZigzagConfig,
    lattice_cdf,
    zigzag_fourier,
    zigzag_piecewise,
    lattice_cdf_curve,
    lattice_correction,
    standardize_lattice,
)
from .cornish_fisher import (
    cf_quantile,
    cf_correction_U,
    cf_correction_V,
    cf_quantile_curve,
    cf_correction_V_hermite,
)

__all__ = [
    "tau",
    "ApproxOrder",
    "ApproxQuery",
    "ApproxValue",
    "cf_quantile",
    "lattice_cdf",
    "KurtosisForm",
    "ZigzagConfig",
    "edgeworth_cdf",
    "edgeworth_pdf",
    "zigzag_fourier",
    "cf_correction_U",
    "cf_correction_V",
    "min_n_nonneg_pdf",
    "zigzag_piecewise",
    "cdf_correction_A",
    "cdf_correction_B",
    "pdf_correction_C",
    "pdf_correction_D",
    "cf_quantile_curve",
    "lattice_cdf_curve",
    "lattice_correction",
    "edgeworth_cdf_curve",
    "edgeworth_pdf_curve",
    "standardize_lattice",
    "cf_correction_V_hermite",
]
