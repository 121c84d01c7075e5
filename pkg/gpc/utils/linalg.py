"""
Complex linear algebra kernel.

Thin, validated wrappers around numpy/scipy used by every other module.
All tolerances are relative to the largest singular value of the input.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.linalg

from ..config.solver_config import DEFAULT_REL_TOL, HERMITIAN_TOL
from .decorators import retry_with_fallback
from .errors import InputError, KernelError

ArrayLike = Union[np.ndarray, list, tuple]


@dataclass(frozen=True)
class SvdResult:
    """m = left_vectors @ diag(singular_values) @ right_vectors^H"""
    left_vectors: np.ndarray
    singular_values: np.ndarray
    right_vectors: np.ndarray

    @property
    def s_max(self) -> float:
        return float(self.singular_values[0]) if self.singular_values.size else 0.0

    def reconstruct(self) -> np.ndarray:
        k = self.singular_values.size
        return (self.left_vectors[:, :k] * self.singular_values) @ self.right_vectors[:, :k].conj().T


def as_matrix(m: ArrayLike, name: str = "matrix") -> np.ndarray:
    """Validate and convert to a finite complex 2-D array"""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise InputError(f"expected a 2-D array, got shape {arr.shape}", field=name)
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputError(f"rows and cols must be positive, got shape {arr.shape}", field=name)
    if not np.all(np.isfinite(arr)):
        raise InputError("entries must be finite (no NaN/Inf)", field=name)
    return arr


def as_vector(v: ArrayLike, name: str = "vector") -> np.ndarray:
    """Validate and convert to a finite complex 1-D array"""
    arr = np.asarray(v, dtype=complex)
    if arr.ndim != 1 or arr.size < 1:
        raise InputError(f"expected a non-empty 1-D array, got shape {arr.shape}", field=name)
    if not np.all(np.isfinite(arr)):
        raise InputError("entries must be finite (no NaN/Inf)", field=name)
    return arr


def _check_rel_tol(rel_tol: float) -> None:
    if not 0.0 < rel_tol < 1.0:
        raise InputError(f"rel_tol must lie in (0, 1), got {rel_tol}", field="rel_tol")


def kron(a: ArrayLike, b: ArrayLike) -> np.ndarray:
    """
    Kronecker product; the first factor carries the slowest index.

    Vectors stay vectors: kron(e_i, e_j) = e_{i * dim_b + j}.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return np.kron(a, b)


def kron_all(items) -> np.ndarray:
    """Kronecker product of a sequence, left to right"""
    items = list(items)
    if not items:
        raise InputError("kron_all needs at least one operand")
    out = np.asarray(items[0], dtype=complex)
    for item in items[1:]:
        out = kron(out, item)
    return out


@retry_with_fallback()
def _svd(m: np.ndarray, full_matrices: bool, lapack_driver: str = "gesdd"):
    return scipy.linalg.svd(
        m,
        full_matrices=full_matrices,
        check_finite=False,
        lapack_driver=lapack_driver,
    )


def svd(m: ArrayLike, full_matrices: bool = False) -> SvdResult:
    """
    Singular value decomposition with sorted, non-negative singular values.

    Raises:
        InputError: non-finite or malformed input
        KernelError: no LAPACK driver converged
    """
    m = as_matrix(m)
    u, s, vh = _svd(m, full_matrices)
    return SvdResult(left_vectors=u, singular_values=s, right_vectors=vh.conj().T)


def numerical_rank(m: ArrayLike, rel_tol: float = DEFAULT_REL_TOL) -> int:
    """Count of singular values above rel_tol * s_max; 0 for the zero matrix"""
    _check_rel_tol(rel_tol)
    s = svd(m).singular_values
    return _rank_from_singular_values(s, rel_tol)


def _rank_from_singular_values(s: np.ndarray, rel_tol: float) -> int:
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rel_tol * s[0]))


def least_squares_solve(a: ArrayLike, b: ArrayLike, rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """
    Minimum-norm least squares solution (pseudoinverse applied to b).

    Singular values below rel_tol * s_max are treated as zero.
    """
    _check_rel_tol(rel_tol)
    a = as_matrix(a, name="a")
    b = as_vector(b, name="b")
    if a.shape[0] != b.size:
        raise InputError(f"a has {a.shape[0]} rows but b has length {b.size}")

    result = svd(a)
    s = result.singular_values
    rank = _rank_from_singular_values(s, rel_tol)
    if rank == 0:
        return np.zeros(a.shape[1], dtype=complex)

    u = result.left_vectors[:, :rank]
    v = result.right_vectors[:, :rank]
    return v @ ((u.conj().T @ b) / s[:rank])


def pseudo_inverse(a: ArrayLike, rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse with a relative singular value cutoff"""
    _check_rel_tol(rel_tol)
    result = svd(as_matrix(a, name="a"))
    s = result.singular_values
    rank = _rank_from_singular_values(s, rel_tol)
    u = result.left_vectors[:, :rank]
    v = result.right_vectors[:, :rank]
    return (v / s[:rank]) @ u.conj().T


def nullspace_basis(m: ArrayLike, rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """
    Orthonormal basis (as columns) of the numerical nullspace.

    The column count is cols - numerical_rank; it may be zero.
    """
    _check_rel_tol(rel_tol)
    m = as_matrix(m)
    cols = m.shape[1]
    result = svd(m, full_matrices=True)
    rank = _rank_from_singular_values(result.singular_values, rel_tol)
    if rank == 0:
        return np.eye(cols, dtype=complex)
    return result.right_vectors[:, rank:]


def is_hermitian(rho: ArrayLike, tol: float = HERMITIAN_TOL) -> bool:
    rho = np.asarray(rho, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(rho)))) if rho.size else 1.0
    return bool(np.max(np.abs(rho - rho.conj().T), initial=0.0) <= tol * scale)


def hermitian_eigvalsh(rho: ArrayLike) -> np.ndarray:
    """Ascending eigenvalues of the Hermitian part of rho"""
    rho = as_matrix(rho, name="rho")
    herm = 0.5 * (rho + rho.conj().T)
    try:
        return scipy.linalg.eigvalsh(herm, check_finite=False)
    except np.linalg.LinAlgError as e:
        raise KernelError(f"eigenvalue solver did not converge: {e}") from e


def partial_transpose(rho: ArrayLike, dim_a: int, dim_b: int) -> np.ndarray:
    """
    Transpose on the second factor of a (dim_a * dim_b)-square operator.

    rho'[(i, j), (k, l)] = rho[(i, l), (k, j)]
    """
    rho = as_matrix(rho, name="rho")
    n = dim_a * dim_b
    if dim_a < 1 or dim_b < 1 or rho.shape != (n, n):
        raise InputError(
            f"rho has shape {rho.shape}, expected ({n}, {n}) for dims ({dim_a}, {dim_b})"
        )
    if not is_hermitian(rho):
        raise InputError("rho must be Hermitian within 1e-10", field="rho")

    tensor = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    return tensor.transpose(0, 3, 2, 1).reshape(n, n)
