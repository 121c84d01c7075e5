"""
Factorizer module: ALS fitting, exact certificates and verdict merging.
"""

from .base import (
    AlsConfig,
    BaseCertificate,
    Certificate,
    FactorizationReport,
    Outcome,
    Tolerances,
    Verdict
)
from .als import als_fit
from .schmidt import SchmidtResult, schmidt_decompose
from .preimage import PreimageCertificate, preimage_analysis
from .symmetric_rank import SymmetricRankCertificate, symmetric_rank_certificate
from .subspace import SubspaceProjectionCertificate, subspace_projection_residual
from .classify import classify, classify_bipartitions

__all__ = [
    'AlsConfig',
    'BaseCertificate',
    'Certificate',
    'FactorizationReport',
    'Outcome',
    'Tolerances',
    'Verdict',
    'als_fit',
    'SchmidtResult',
    'schmidt_decompose',
    'PreimageCertificate',
    'preimage_analysis',
    'SymmetricRankCertificate',
    'symmetric_rank_certificate',
    'SubspaceProjectionCertificate',
    'subspace_projection_residual',
    'classify',
    'classify_bipartitions'
]
