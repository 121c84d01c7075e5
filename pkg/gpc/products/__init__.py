"""
Product module: general multilinear products and their universal maps.
"""

from .base import (
    StateVector,
    GeneralProduct,
    UniversalMap,
    apply,
    apply_universal,
    universal_map,
    compose_with_factor_maps,
    group_legs,
    permute_legs
)
from .builtins import (
    builtin_tensor,
    builtin_wedge,
    builtin_symmetric_photon,
    builtin_trilinear_geometric,
    builtin_integer_multiplication,
    parse_builtin
)

__all__ = [
    'StateVector',
    'GeneralProduct',
    'UniversalMap',
    'apply',
    'apply_universal',
    'universal_map',
    'compose_with_factor_maps',
    'group_legs',
    'permute_legs',
    'builtin_tensor',
    'builtin_wedge',
    'builtin_symmetric_photon',
    'builtin_trilinear_geometric',
    'builtin_integer_multiplication',
    'parse_builtin'
]
