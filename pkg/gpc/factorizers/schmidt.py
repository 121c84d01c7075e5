"""
Schmidt decomposition of bipartite vectors (the L = identity special case).
"""

from dataclasses import dataclass

import numpy as np

from ..config.solver_config import DEFAULT_REL_TOL
from ..products.base import StateVector
from ..utils.errors import InputError
from ..utils.linalg import as_vector, svd


@dataclass(frozen=True, eq=False)
class SchmidtResult:
    """
    v / ||v|| = sum_k coefficients[k] * left_vectors[:, k] (x) right_vectors[:, k]
    """
    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    rel_tol: float = DEFAULT_REL_TOL

    @property
    def rank(self) -> int:
        if self.coefficients.size == 0 or self.coefficients[0] == 0.0:
            return 0
        return int(np.count_nonzero(self.coefficients > self.rel_tol * self.coefficients[0]))


def schmidt_decompose(v, d_a: int, d_b: int, rel_tol: float = DEFAULT_REL_TOL) -> SchmidtResult:
    """
    SVD of the d_a x d_b reshaping of v (Kronecker order, first factor slowest).

    Raises:
        InputError: dimension mismatch or zero vector
    """
    amplitudes = v.amplitudes if isinstance(v, StateVector) else as_vector(v, name="v")
    if amplitudes.size != d_a * d_b:
        raise InputError(f"vector has dim {amplitudes.size}, expected {d_a} * {d_b}", field="v")
    if not np.any(amplitudes):
        raise InputError("cannot decompose the zero vector", field="v")

    result = svd(amplitudes.reshape(d_a, d_b))
    s = result.singular_values
    return SchmidtResult(
        coefficients=s / np.linalg.norm(s),
        left_vectors=result.left_vectors,
        right_vectors=result.right_vectors.conj(),
        rel_tol=rel_tol,
    )
