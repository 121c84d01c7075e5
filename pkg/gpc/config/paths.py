"""
Path configurations for gpc reports and exports
"""

from pathlib import Path

# Base directories
ROOT_DIR = Path(__file__).parent.parent.parent
EXPORT_DIR = ROOT_DIR / 'exports'

# Export directories for different output types
REPORT_EXPORT_DIR = EXPORT_DIR / 'reports'
PROFILE_EXPORT_DIR = EXPORT_DIR / 'profiles'
CATALOG_EXPORT_DIR = EXPORT_DIR / 'catalog'

# File naming templates
FILE_TEMPLATES = {
    'report': 'factorization_{name}.json',
    'universal': 'universal_check_{name}.json',
    'mixed': 'mixed_{check}_{name}.json',
    'primes': 'primes_profile_{n_max}.{ext}',
    'catalog': 'scenario_{name}.json',
}

_EXPORT_DIRS = {
    'report': REPORT_EXPORT_DIR,
    'universal': REPORT_EXPORT_DIR,
    'mixed': REPORT_EXPORT_DIR,
    'primes': PROFILE_EXPORT_DIR,
    'catalog': CATALOG_EXPORT_DIR,
}


def get_export_path(data_type: str, **fields) -> Path:
    """
    Get the export path for a specific output type

    Args:
        data_type (str): Type of output (report, universal, mixed, primes, catalog)
        **fields: Values for the placeholders of the file template

    Returns:
        Path: Complete path for the export file; its directory exists
    """
    if data_type not in FILE_TEMPLATES:
        raise ValueError(f"Unknown data type: {data_type}")

    filename = FILE_TEMPLATES[data_type].format(**fields)
    directory = _EXPORT_DIRS[data_type]
    directory.mkdir(parents=True, exist_ok=True)
    return directory / filename
