"""
Solver configuration settings for general-product factorization
"""

from typing import Dict, Tuple

# Numerical tolerances (all relative)
DEFAULT_REL_TOL = 1e-10
DEFAULT_TOL_FACT = 1e-8
DEFAULT_TOL_ENT = 1e-3
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
SYMMETRY_TOL = 1e-10
WEIGHT_SUM_TOL = 1e-12

# Alternating least squares
DEFAULT_STARTS = 16
DEFAULT_MAX_SWEEPS = 500
DEFAULT_STALL_TOL = 1e-12
DEFAULT_WORKERS = 1

# Gauss-Newton refinement of the best ALS starts
DEFAULT_POLISH = True
POLISH_STARTS = 3
POLISH_MAX_NFEV = 100

# Reproducibility
DEFAULT_SEED = 0
SEED_ENV_VAR = "GPC_SEED"
LOG_LEVEL_ENV_VAR = "GPC_LOG_LEVEL"
LOG_FILE_ENV_VAR = "GPC_LOG_FILE"

# PPT is necessary and sufficient for separability up to 2x3
PPT_CONCLUSIVE_MAX_DIM = 6

# Builtin products: name -> (number of size arguments, minimum size)
BUILTIN_PRODUCTS: Dict[str, Tuple[int, int]] = {
    "tensor": (2, 1),
    "wedge": (1, 2),
    "symmetric_photon": (1, 2),
    "trilinear_geometric": (1, 1),
    "integer_multiplication": (1, 4),
}

# Catalog defaults
TRILINEAR_DEFAULTS = {
    "q": 0.5,
    "N": 16,
    "tol_fact": 1e-5,
}
TRILINEAR_SWEEP = (0.3, 0.5, 0.7, 0.8)

PHOTON_DEFAULTS = {
    "M": 4,
}

PRIME_DEFAULTS = {
    "p": 13,
    "n_max": 100,
}

# Expected-value tolerances used by the catalog
CATALOG_TOLERANCES = {
    "schmidt": 1e-10,
    "exact_residual": 1e-6,
    "als_vs_exact": 1e-3,
    "wedge_residual": 1e-8,
}

# Universality check
UNIVERSALITY_TOL = 1e-12
DEFAULT_UNIVERSAL_TRIALS = 100
