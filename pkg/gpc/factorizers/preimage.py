"""
Preimage analysis through the universal map.

Every ∘-product lies in the range of L, so a target outside the range is
∘-entangled. When L is injective and bilinear the preimage is unique and
the question reduces to its Schmidt rank.
"""

import logging

import numpy as np

from ..config.solver_config import DEFAULT_REL_TOL
from ..products.base import GeneralProduct, universal_map
from ..utils.linalg import least_squares_solve, numerical_rank
from .base import BaseCertificate, Certificate, Outcome, Tolerances, as_states, fix_gauge
from .schmidt import schmidt_decompose

logger = logging.getLogger(__name__)


class PreimageCertificate(BaseCertificate):
    name = "preimage"

    def __init__(self, range_tol: float = None):
        self.range_tol = range_tol

    def applies_to(self, p: GeneralProduct) -> bool:
        return True

    def evaluate(self, p: GeneralProduct, target: np.ndarray, tolerances: Tolerances) -> Certificate:
        rel_tol = tolerances.rel_tol
        range_tol = self.range_tol if self.range_tol is not None else rel_tol
        matrix = universal_map(p).matrix

        preimage = least_squares_solve(matrix, target, rel_tol)
        range_residual = float(np.linalg.norm(matrix @ preimage - target) / np.linalg.norm(target))
        rank = numerical_rank(matrix, rel_tol)
        evidence = {
            "range_residual": range_residual,
            "range_tol": range_tol,
            "rank": rank,
            "input_size": p.input_size,
            "nullspace_dim": p.input_size - rank,
        }

        if range_residual > range_tol:
            evidence["reason"] = "not in range of the universal map"
            return Certificate(self.name, Outcome.CERTIFIED_ENTANGLED, evidence)

        if rank < p.input_size or p.arity != 2:
            evidence["reason"] = (
                "nontrivial nullspace" if rank < p.input_size else "injective test needs arity 2"
            )
            return Certificate(self.name, Outcome.ABSTAIN, evidence)

        d_a, d_b = p.input_dims
        schmidt = schmidt_decompose(preimage, d_a, d_b, rel_tol)
        evidence["schmidt_rank"] = schmidt.rank
        evidence["schmidt_coefficients"] = schmidt.coefficients

        if schmidt.rank >= 2:
            evidence["reason"] = "unique preimage has Schmidt rank >= 2"
            return Certificate(self.name, Outcome.CERTIFIED_ENTANGLED, evidence)

        scale = np.linalg.norm(preimage) * schmidt.coefficients[0]
        factors = fix_gauge([scale * schmidt.left_vectors[:, 0], schmidt.right_vectors[:, 0]])
        evidence["reason"] = "unique preimage is an elementary tensor"
        return Certificate(self.name, Outcome.FACTORIZABLE, evidence, factors=as_states(p, factors))


def preimage_analysis(
    p: GeneralProduct,
    target,
    rel_tol: float = DEFAULT_REL_TOL,
    range_tol: float = None,
) -> Certificate:
    """
    Range test, then a Schmidt test for injective bilinear universal maps.

    Args:
        p: Product under test
        target: Nonzero target state
        rel_tol: Relative cutoff for ranks and the pseudoinverse
        range_tol: Relative range residual above which the target is certified
            ∘-entangled; defaults to rel_tol

    Returns:
        Certificate with outcome CERTIFIED_ENTANGLED, FACTORIZABLE or ABSTAIN
    """
    return PreimageCertificate(range_tol).run(p, target, Tolerances(rel_tol=rel_tol))
