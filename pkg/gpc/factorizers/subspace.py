"""
Exact distance to the product set of the trilinear geometric product.

With p_n = a_n b_n c_n ranging over all of C^N, the product set is the linear
subspace {(sum_n p_n, p_0, ..., p_{N-1})}. Its orthogonal complement is
spanned by w = (1, -1, ..., -1), so the squared distance of a target t is
|t_0 - sum_{n>=1} t_n|^2 / (N + 1).
"""

import numpy as np

from ..config.solver_config import DEFAULT_TOL_ENT, DEFAULT_TOL_FACT
from ..products.base import GeneralProduct
from .base import BaseCertificate, Certificate, Outcome, Tolerances, as_states, fix_gauge


class SubspaceProjectionCertificate(BaseCertificate):
    name = "subspace_projection"

    def applies_to(self, p: GeneralProduct) -> bool:
        return p.family == "trilinear_geometric"

    def evaluate(self, p: GeneralProduct, target: np.ndarray, tolerances: Tolerances) -> Certificate:
        n_components = p.output_dim - 1
        normal = np.concatenate(([1.0], -np.ones(n_components)))
        overlap = target[0] - np.sum(target[1:])
        distance = abs(overlap) / np.sqrt(n_components + 1)
        exact_residual = float(distance / np.linalg.norm(target))

        projection = target - overlap * normal / (n_components + 1)
        ones = np.ones(n_components, dtype=complex)
        factors = fix_gauge([projection[1:], ones, ones])

        outcome = Outcome.FACTORIZABLE if exact_residual <= tolerances.tol_fact else Outcome.CERTIFIED_ENTANGLED
        evidence = {
            "exact_residual": exact_residual,
            "tol_fact": tolerances.tol_fact,
            "overlap": complex(overlap),
        }
        return Certificate(
            self.name,
            outcome,
            evidence,
            factors=as_states(p, factors),
            exact_residual=exact_residual,
        )


def subspace_projection_residual(p: GeneralProduct, target, tol_fact: float = DEFAULT_TOL_FACT) -> Certificate:
    """
    Closed-form projection residual for the trilinear geometric product.

    Raises:
        UnsupportedProductError: p is not a trilinear-geometric builtin
    """
    tolerances = Tolerances(tol_fact=tol_fact, tol_ent=max(tol_fact, DEFAULT_TOL_ENT))
    return SubspaceProjectionCertificate().run(p, target, tolerances)
