"""
Ensembles of factor tuples and the density matrices they generate.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..config.solver_config import HERMITIAN_TOL, PSD_TOL, WEIGHT_SUM_TOL
from ..products.base import GeneralProduct, StateVector
from ..utils.errors import InputError
from ..utils.linalg import as_matrix, hermitian_eigvalsh, is_hermitian


@dataclass(frozen=True)
class EnsembleItem:
    weight: float
    factors: Tuple[StateVector, ...]


@dataclass(frozen=True)
class Ensemble:
    """Finite probability distribution over factor tuples."""
    items: Tuple[EnsembleItem, ...]

    def __post_init__(self):
        if not self.items:
            raise InputError("ensemble needs at least one item", field="items")
        for position, item in enumerate(self.items):
            if not np.isfinite(item.weight) or item.weight <= 0.0:
                raise InputError(f"weight must be positive, got {item.weight}", field=f"items[{position}].p")
            if not item.factors:
                raise InputError("factor tuple is empty", field=f"items[{position}].factors")
        total = sum(item.weight for item in self.items)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise InputError(f"weights sum to {total!r}, expected 1", field="items")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[float, Sequence]]) -> "Ensemble":
        """Build from (weight, [factor, ...]) pairs; factors may be plain arrays"""
        items = []
        for weight, factors in pairs:
            states = tuple(
                f if isinstance(f, StateVector) else StateVector(np.asarray(f, dtype=complex))
                for f in factors
            )
            items.append(EnsembleItem(float(weight), states))
        return cls(tuple(items))

    @property
    def weights(self) -> np.ndarray:
        return np.array([item.weight for item in self.items])

    def check_arity(self, p: GeneralProduct) -> None:
        for position, item in enumerate(self.items):
            if len(item.factors) != p.arity:
                raise InputError(
                    f"expected {p.arity} factors, got {len(item.factors)}",
                    field=f"items[{position}].factors",
                )
            for slot, (f, d) in enumerate(zip(item.factors, p.input_dims)):
                if f.dim != d:
                    raise InputError(
                        f"factor has dim {f.dim}, expected {d}",
                        field=f"items[{position}].factors[{slot}]",
                    )


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Hermitian positive semidefinite operator.

    ``normalized`` asks for unit trace on top of the PSD check.
    """
    entries: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        rho = as_matrix(self.entries, name="rho")
        if rho.shape[0] != rho.shape[1]:
            raise InputError(f"density matrix must be square, got {rho.shape}", field="rho")
        if not is_hermitian(rho, HERMITIAN_TOL):
            raise InputError("density matrix is not Hermitian", field="rho")
        rho = 0.5 * (rho + rho.conj().T)
        smallest = float(hermitian_eigvalsh(rho)[0])
        scale = max(1.0, float(np.max(np.abs(rho))))
        if smallest < -PSD_TOL * scale:
            raise InputError(f"density matrix has eigenvalue {smallest:.3e} < 0", field="rho")
        trace = float(np.real(np.trace(rho)))
        if self.normalized and abs(trace - 1.0) > HERMITIAN_TOL:
            raise InputError(f"trace is {trace!r}, expected 1", field="rho")
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigvalsh(self.entries)

    @classmethod
    def pure(cls, v) -> "DensityMatrix":
        """|v><v| / <v|v>"""
        amplitudes = v.amplitudes if isinstance(v, StateVector) else np.asarray(v, dtype=complex)
        norm = np.linalg.norm(amplitudes)
        if norm == 0.0:
            raise InputError("cannot project onto the zero vector", field="v")
        amplitudes = amplitudes / norm
        return cls(np.outer(amplitudes, amplitudes.conj()))


def ensemble_factor_lists(e: Ensemble) -> List[List[np.ndarray]]:
    return [[f.amplitudes for f in item.factors] for item in e.items]
