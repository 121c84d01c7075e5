"""
Mixed-state module: classically ∘-correlated mixtures and the PPT witness.
"""

from .base import DensityMatrix, Ensemble, EnsembleItem
from .witness import (
    BiseparableSample,
    WitnessOutcome,
    WitnessResult,
    ensemble_to_density,
    ppt_witness,
    random_ensemble,
    sample_biseparable,
    separable_companion
)

__all__ = [
    'DensityMatrix',
    'Ensemble',
    'EnsembleItem',
    'BiseparableSample',
    'WitnessOutcome',
    'WitnessResult',
    'ensemble_to_density',
    'ppt_witness',
    'random_ensemble',
    'sample_biseparable',
    'separable_companion'
]
