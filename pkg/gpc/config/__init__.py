"""
Configuration module for gpc.
Import all configurations here for easy access.
"""

from .solver_config import (
    DEFAULT_REL_TOL,
    DEFAULT_TOL_FACT,
    DEFAULT_TOL_ENT,
    HERMITIAN_TOL,
    PSD_TOL,
    SYMMETRY_TOL,
    WEIGHT_SUM_TOL,
    DEFAULT_STARTS,
    DEFAULT_MAX_SWEEPS,
    DEFAULT_STALL_TOL,
    DEFAULT_WORKERS,
    DEFAULT_POLISH,
    POLISH_STARTS,
    POLISH_MAX_NFEV,
    DEFAULT_SEED,
    SEED_ENV_VAR,
    LOG_LEVEL_ENV_VAR,
    LOG_FILE_ENV_VAR,
    PPT_CONCLUSIVE_MAX_DIM,
    BUILTIN_PRODUCTS,
    TRILINEAR_DEFAULTS,
    TRILINEAR_SWEEP,
    PHOTON_DEFAULTS,
    PRIME_DEFAULTS,
    CATALOG_TOLERANCES,
    UNIVERSALITY_TOL,
    DEFAULT_UNIVERSAL_TRIALS
)

from .paths import (
    ROOT_DIR,
    EXPORT_DIR,
    REPORT_EXPORT_DIR,
    PROFILE_EXPORT_DIR,
    get_export_path
)

__all__ = [
    'DEFAULT_REL_TOL',
    'DEFAULT_TOL_FACT',
    'DEFAULT_TOL_ENT',
    'HERMITIAN_TOL',
    'PSD_TOL',
    'SYMMETRY_TOL',
    'WEIGHT_SUM_TOL',
    'DEFAULT_STARTS',
    'DEFAULT_MAX_SWEEPS',
    'DEFAULT_STALL_TOL',
    'DEFAULT_WORKERS',
    'DEFAULT_POLISH',
    'POLISH_STARTS',
    'POLISH_MAX_NFEV',
    'DEFAULT_SEED',
    'SEED_ENV_VAR',
    'LOG_LEVEL_ENV_VAR',
    'LOG_FILE_ENV_VAR',
    'PPT_CONCLUSIVE_MAX_DIM',
    'BUILTIN_PRODUCTS',
    'TRILINEAR_DEFAULTS',
    'TRILINEAR_SWEEP',
    'PHOTON_DEFAULTS',
    'PRIME_DEFAULTS',
    'CATALOG_TOLERANCES',
    'UNIVERSALITY_TOL',
    'DEFAULT_UNIVERSAL_TRIALS',
    'ROOT_DIR',
    'EXPORT_DIR',
    'REPORT_EXPORT_DIR',
    'PROFILE_EXPORT_DIR',
    'get_export_path'
]
