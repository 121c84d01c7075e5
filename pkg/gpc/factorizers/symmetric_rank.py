"""
Rank certificate for the two-photon product.

Products of two single photons are the matrices alpha beta^T + beta alpha^T,
which are exactly the complex-symmetric matrices of rank <= 2. Conversely,
a symmetric S of rank <= 2 has a Takagi form S = x x^T + y y^T, and
alpha = (x + i y) / sqrt(2), beta = (x - i y) / sqrt(2) reproduce it.
Below the same converse is carried out without an explicit Takagi
factorization: S = U C U^T on its column space U, and the 2 x 2 symmetric
C is split through the roots of its quadratic form.
"""

import logging
from typing import Tuple

import numpy as np

from ..config.solver_config import DEFAULT_REL_TOL, SYMMETRY_TOL
from ..products.base import GeneralProduct
from ..utils.errors import InputError
from ..utils.linalg import svd
from .base import BaseCertificate, Certificate, Outcome, Tolerances, as_states, fix_gauge

logger = logging.getLogger(__name__)


def _factor_small_symmetric(c: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """a, b with a b^T + b a^T == c for a symmetric 1x1 or 2x2 matrix c"""
    if c.shape == (1, 1):
        root = np.sqrt(c[0, 0] / 2.0)
        return np.array([root]), np.array([root])

    p, q, s = c[0, 0], c[0, 1], c[1, 1]
    scale = np.max(np.abs(c))
    # a b^T + b a^T has quadratic form 2 (a.z)(b.z); factor z^T c z into linear forms
    if abs(p) >= abs(s) and abs(p) > 1e-14 * scale:
        lam1, lam2 = np.roots([p, 2.0 * q, s])
        root = np.sqrt(p / 2.0)
        return root * np.array([1.0, -lam1]), root * np.array([1.0, -lam2])
    if abs(s) > 1e-14 * scale:
        mu1, mu2 = np.roots([s, 2.0 * q, p])
        root = np.sqrt(s / 2.0)
        return root * np.array([-mu1, 1.0]), root * np.array([-mu2, 1.0])
    return np.array([1.0, 0.0], dtype=complex), np.array([0.0, q], dtype=complex)


def symmetric_outer_factors(matrix: np.ndarray, rank: int) -> Tuple[np.ndarray, np.ndarray]:
    """alpha, beta with alpha beta^T + beta alpha^T == matrix, for symmetric rank <= 2"""
    basis = svd(matrix).left_vectors[:, :rank]
    small = basis.conj().T @ matrix @ basis.conj()
    small = 0.5 * (small + small.T)
    a, b = _factor_small_symmetric(small)
    return basis @ a, basis @ b


class SymmetricRankCertificate(BaseCertificate):
    name = "symmetric_rank"

    def applies_to(self, p: GeneralProduct) -> bool:
        return p.family == "symmetric_photon"

    def evaluate(self, p: GeneralProduct, target: np.ndarray, tolerances: Tolerances) -> Certificate:
        modes = p.size_args[0]
        matrix = target.reshape(modes, modes)
        asymmetry = float(np.max(np.abs(matrix - matrix.T)))
        if asymmetry > SYMMETRY_TOL * float(np.max(np.abs(matrix))):
            raise InputError(
                f"target is not a symmetric {modes}x{modes} matrix (max |S - S^T| = {asymmetry:.3e})",
                field="target",
            )

        s = svd(matrix).singular_values
        rank = int(np.count_nonzero(s > tolerances.rel_tol * s[0]))
        exact_residual = float(np.sqrt(np.sum(s[2:] ** 2)) / np.linalg.norm(s))
        evidence = {
            "rank": rank,
            "singular_values": s,
            "exact_residual": exact_residual,
        }

        if rank > 2:
            evidence["reason"] = "symmetric rank exceeds 2"
            return Certificate(self.name, Outcome.CERTIFIED_ENTANGLED, evidence, exact_residual=exact_residual)

        alpha, beta = symmetric_outer_factors(matrix, rank)
        factors = fix_gauge([alpha, beta])
        evidence["reason"] = "symmetric rank <= 2, factors constructed"
        return Certificate(
            self.name,
            Outcome.FACTORIZABLE,
            evidence,
            factors=as_states(p, factors),
            exact_residual=exact_residual,
        )


def symmetric_rank_certificate(p: GeneralProduct, target, rel_tol: float = DEFAULT_REL_TOL) -> Certificate:
    """
    Decide ∘-factorizability under the two-photon product by matrix rank.

    Raises:
        UnsupportedProductError: p is not a symmetric-photon builtin
        InputError: target does not reshape to a symmetric matrix
    """
    return SymmetricRankCertificate().run(p, target, Tolerances(rel_tol=rel_tol))
