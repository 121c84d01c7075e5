"""
Verdict merging: exact certificates first, ALS upper bounds second.
"""

import logging
from typing import Dict, List, Optional

from ..products.base import GeneralProduct, group_legs, permute_legs
from ..utils.errors import InputError
from .als import als_fit
from .base import (
    AlsConfig,
    BaseCertificate,
    Certificate,
    FactorizationReport,
    Tolerances,
    Verdict,
    config_echo,
    relative_residual,
    target_array,
)
from .preimage import PreimageCertificate
from .subspace import SubspaceProjectionCertificate
from .symmetric_rank import SymmetricRankCertificate

logger = logging.getLogger(__name__)

FAMILY_CERTIFICATES: Dict[str, BaseCertificate] = {
    "symmetric_photon": SymmetricRankCertificate(),
    "trilinear_geometric": SubspaceProjectionCertificate(),
}

# Bipartitions of a three-factor product: slot order, then the grouping
BIPARTITIONS = {
    "AB|C": ([0, 1, 2], [[0, 1], [2]]),
    "BC|A": ([1, 2, 0], [[0, 1], [2]]),
    "CA|B": ([2, 0, 1], [[0, 1], [2]]),
}


def run_certificates(p: GeneralProduct, target, tolerances: Tolerances) -> List[Certificate]:
    """Family-specific certificate (if any), then preimage analysis"""
    certificates = []
    family_certificate = FAMILY_CERTIFICATES.get(p.family)
    if family_certificate is not None:
        certificates.append(family_certificate.run(p, target, tolerances))
    certificates.append(PreimageCertificate(range_tol=tolerances.tol_fact).run(p, target, tolerances))
    return certificates


def _verdict(certificates: List[Certificate], residual: float, tolerances: Tolerances) -> Verdict:
    decisive: Optional[Certificate] = next((c for c in certificates if c.decisive), None)
    if decisive is not None:
        return Verdict(decisive.outcome.value)
    if residual <= tolerances.tol_fact:
        return Verdict.FACTORIZABLE
    if residual >= tolerances.tol_ent:
        return Verdict.NUMERICALLY_ENTANGLED
    return Verdict.INCONCLUSIVE


def classify(
    p: GeneralProduct,
    target,
    cfg: AlsConfig = None,
    tolerances: Tolerances = None,
) -> FactorizationReport:
    """
    Decide whether target is ∘-factorizable under p.

    Certificates run in order and the first decisive one fixes the verdict.
    Otherwise the ALS residual decides: <= tol_fact is FACTORIZABLE,
    >= tol_ent NUMERICALLY_ENTANGLED, anything between INCONCLUSIVE.
    The reported residual and factors are the best of ALS and any factors
    a certificate constructed.
    """
    cfg = cfg or AlsConfig()
    tolerances = tolerances or Tolerances()
    amplitudes = target_array(p, target)

    certificates = run_certificates(p, amplitudes, tolerances)
    report = als_fit(p, amplitudes, cfg)

    for certificate in certificates:
        if not certificate.factors:
            continue
        residual = relative_residual(p, certificate.factors, amplitudes)
        if residual < report.relative_residual:
            report.relative_residual = residual
            report.factors = list(certificate.factors)

    report.certificates = certificates
    report.verdict = _verdict(certificates, report.relative_residual, tolerances)
    report.config = config_echo(cfg, tolerances)
    logger.info(f"classify {p.describe()}: {report.verdict.value} (residual {report.relative_residual:.3e})")
    return report


def classify_bipartitions(
    p: GeneralProduct,
    target,
    cfg: AlsConfig = None,
    tolerances: Tolerances = None,
) -> Dict[str, FactorizationReport]:
    """
    Partial ∘-entanglement of a three-factor product across each cut.

    For the cut XY|Z the two grouped factors are a joint vector on
    C^{d_X d_Y} and a vector on C^{d_Z}.
    """
    if p.arity != 3:
        raise InputError(f"bipartitions need an arity-3 product, got arity {p.arity}")
    reports = {}
    for cut, (order, partition) in BIPARTITIONS.items():
        grouped = group_legs(permute_legs(p, order), partition)
        reports[cut] = classify(grouped, target, cfg, tolerances)
    return reports


def residual_of(report: FactorizationReport, p: GeneralProduct, target) -> float:
    """Re-apply the reported factors (self-consistency check)"""
    return relative_residual(p, report.factors, target_array(p, target))
