"""
Base certificate class and the report types shared by all factorizers.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..config.solver_config import (
    DEFAULT_MAX_SWEEPS,
    DEFAULT_POLISH,
    DEFAULT_REL_TOL,
    DEFAULT_SEED,
    DEFAULT_STALL_TOL,
    DEFAULT_STARTS,
    DEFAULT_TOL_ENT,
    DEFAULT_TOL_FACT,
    DEFAULT_WORKERS,
)
from ..products.base import GeneralProduct, StateVector, apply
from ..utils.errors import InputError, UnsupportedProductError

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    FACTORIZABLE = "FACTORIZABLE"
    CERTIFIED_ENTANGLED = "CERTIFIED_ENTANGLED"
    NUMERICALLY_ENTANGLED = "NUMERICALLY_ENTANGLED"
    INCONCLUSIVE = "INCONCLUSIVE"


class Outcome(str, Enum):
    FACTORIZABLE = "FACTORIZABLE"
    CERTIFIED_ENTANGLED = "CERTIFIED_ENTANGLED"
    ABSTAIN = "ABSTAIN"


@dataclass(frozen=True)
class Tolerances:
    tol_fact: float = DEFAULT_TOL_FACT
    tol_ent: float = DEFAULT_TOL_ENT
    rel_tol: float = DEFAULT_REL_TOL

    def __post_init__(self):
        for name in ("tol_fact", "tol_ent", "rel_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise InputError(f"must lie in (0, 1), got {value}", field=name)
        if self.tol_fact > self.tol_ent:
            raise InputError(
                f"tol_fact ({self.tol_fact}) must not exceed tol_ent ({self.tol_ent})"
            )


@dataclass(frozen=True)
class AlsConfig:
    starts: int = DEFAULT_STARTS
    max_sweeps: int = DEFAULT_MAX_SWEEPS
    stall_tol: float = DEFAULT_STALL_TOL
    seed: int = DEFAULT_SEED
    workers: int = DEFAULT_WORKERS
    polish: bool = DEFAULT_POLISH

    def __post_init__(self):
        for name in ("starts", "max_sweeps", "workers"):
            if int(getattr(self, name)) < 1:
                raise InputError(f"must be a positive integer, got {getattr(self, name)}", field=name)
        if not self.stall_tol > 0:
            raise InputError(f"must be positive, got {self.stall_tol}", field="stall_tol")
        if int(self.seed) < 0:
            raise InputError(f"must be an unsigned integer, got {self.seed}", field="seed")


@dataclass(eq=False)
class Certificate:
    name: str
    outcome: Outcome
    evidence: Dict[str, Any] = field(default_factory=dict)
    factors: Optional[List[StateVector]] = None
    exact_residual: Optional[float] = None

    @property
    def decisive(self) -> bool:
        return self.outcome is not Outcome.ABSTAIN


@dataclass(eq=False)
class FactorizationReport:
    verdict: Verdict
    relative_residual: float
    factors: List[StateVector]
    certificates: List[Certificate] = field(default_factory=list)
    starts_used: int = 0
    sweeps_used: int = 0
    residual_history: List[float] = field(default_factory=list)
    best_start: Optional[int] = None
    product: Optional[str] = None
    config: Dict[str, Any] = field(default_factory=dict)


def target_array(p: GeneralProduct, target) -> np.ndarray:
    """Target amplitudes, checked against the product's output dimension"""
    amplitudes = target.amplitudes if isinstance(target, StateVector) else np.asarray(target, dtype=complex)
    if amplitudes.ndim != 1 or amplitudes.size != p.output_dim:
        raise InputError(
            f"target has shape {amplitudes.shape}, product output_dim is {p.output_dim}",
            field="target",
        )
    if not np.all(np.isfinite(amplitudes)):
        raise InputError("amplitudes must be finite", field="target")
    if not np.any(amplitudes):
        raise InputError("target must be nonzero", field="target")
    return amplitudes


def relative_residual(p: GeneralProduct, factors: Sequence, target: np.ndarray) -> float:
    """||target - apply(p, factors)|| / ||target||"""
    approx = apply(p, factors).amplitudes
    return float(np.linalg.norm(target - approx) / np.linalg.norm(target))


def fix_gauge(factors: List[np.ndarray]) -> List[np.ndarray]:
    """
    Push all norms into slot 0 and make slot 0's largest entry real >= 0.

    The product of the factors is unchanged.
    """
    factors = [np.array(f, dtype=complex) for f in factors]
    for slot in range(1, len(factors)):
        norm = np.linalg.norm(factors[slot])
        if norm == 0.0:
            factors[0] = np.zeros_like(factors[0])
            continue
        factors[slot] /= norm
        factors[0] *= norm

    lead = factors[0][np.argmax(np.abs(factors[0]))]
    if abs(lead) > 0.0:
        phase = lead / abs(lead)
        factors[0] *= np.conj(phase)
        factors[1] *= phase
    return factors


def as_states(p: GeneralProduct, factors: Sequence[np.ndarray], prefix: str = "factor") -> List[StateVector]:
    return [
        StateVector(f, label=f"{prefix}_{slot}", basis_start=p.basis_start)
        for slot, f in enumerate(factors)
    ]


class BaseCertificate(ABC):
    """
    Exact test deciding ∘-factorizability for some family of products.

    Subclasses say which products they handle and produce a Certificate;
    ``run`` validates the inputs and logs the outcome.
    """
    name: str = "certificate"

    @abstractmethod
    def applies_to(self, p: GeneralProduct) -> bool:
        """
        Whether the test is defined for this product.
        Must be implemented by child classes.
        """
        pass

    @abstractmethod
    def evaluate(self, p: GeneralProduct, target: np.ndarray, tolerances: Tolerances) -> Certificate:
        """
        Run the test on validated target amplitudes.
        Must be implemented by child classes.
        """
        pass

    def run(self, p: GeneralProduct, target, tolerances: Tolerances = None) -> Certificate:
        """
        Validate inputs and evaluate the certificate.

        Args:
            p: Product to test against
            target: StateVector or amplitude array
            tolerances: Decision tolerances (defaults if omitted)

        Returns:
            Certificate with outcome and numeric evidence
        """
        if not self.applies_to(p):
            raise UnsupportedProductError(
                f"{self.name} is not defined for product {p.describe()} (family {p.family})"
            )
        tolerances = tolerances or Tolerances()
        amplitudes = target_array(p, target)
        certificate = self.evaluate(p, amplitudes, tolerances)
        logger.info(f"{self.name} on {p.describe()}: {certificate.outcome.value}")
        return certificate


def config_echo(cfg: AlsConfig, tolerances: Tolerances) -> Dict[str, Any]:
    return {"als": asdict(cfg), "tolerances": asdict(tolerances)}
