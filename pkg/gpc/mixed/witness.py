"""
Classically ∘-correlated mixtures and a PPT witness transported through L.

A mixture of normalized ∘-product projectors pulls back along the universal
map to a separable operator on the tensor-product space. When L is
injective the pullback of any rho is unique, so a failed positivity or PPT
test on it shows that rho is not such a mixture.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ..config.solver_config import DEFAULT_REL_TOL, PPT_CONCLUSIVE_MAX_DIM
from ..factorizers.classify import BIPARTITIONS
from ..products.base import GeneralProduct, apply, group_legs, permute_legs, universal_map
from ..utils.errors import InputError, UnsupportedProductError
from ..utils.linalg import hermitian_eigvalsh, kron_all, partial_transpose, pseudo_inverse, svd
from .base import DensityMatrix, Ensemble, ensemble_factor_lists

logger = logging.getLogger(__name__)


class WitnessOutcome(str, Enum):
    QUANTUM_CORRELATED = "QUANTUM_CORRELATED"
    UNDETECTED = "UNDETECTED"


@dataclass(eq=False)
class WitnessResult:
    outcome: WitnessOutcome
    conclusive: bool
    dims: Tuple[int, int]
    range_residual: float
    reason: str
    min_preimage_eigenvalue: Optional[float] = None
    min_pt_eigenvalue: Optional[float] = None
    sigma_prime: Optional[np.ndarray] = field(default=None, repr=False)


def _product_vectors(p: GeneralProduct, e: Ensemble, rel_tol: float):
    """(weight, factor arrays, apply(p, factors)) per item; zero products are rejected"""
    e.check_arity(p)
    scale = float(np.max(np.abs(p.coeffs)))
    rows = []
    for position, (item, factors) in enumerate(zip(e.items, ensemble_factor_lists(e))):
        vector = apply(p, factors).amplitudes
        bound = rel_tol * scale * float(np.prod([np.linalg.norm(f) for f in factors]))
        if np.linalg.norm(vector) <= bound:
            raise InputError("weight on a zero product vector", field=f"items[{position}]")
        rows.append((item.weight, factors, vector))
    return rows


def ensemble_to_density(p: GeneralProduct, e: Ensemble, rel_tol: float = DEFAULT_REL_TOL) -> DensityMatrix:
    """
    sum_i p_i |v_i><v_i| / <v_i|v_i>  with  v_i = apply(p, factors_i).

    Raises:
        InputError: arity/dimension mismatch or an item whose product vanishes
    """
    rho = np.zeros((p.output_dim, p.output_dim), dtype=complex)
    for weight, _, vector in _product_vectors(p, e, rel_tol):
        unit = vector / np.linalg.norm(vector)
        rho += weight * np.outer(unit, unit.conj())
    return DensityMatrix(rho)


def separable_companion(
    p: GeneralProduct,
    e: Ensemble,
    rel_tol: float = DEFAULT_REL_TOL,
) -> Tuple[DensityMatrix, float]:
    """
    Separable operator sigma' on the tensor-product space with L sigma' L^H = rho.

    Each representative kron(f_1..f_r) is scaled so that its image under L
    is a unit vector; sigma' is then positive and separable but its trace
    is generally not 1.

    Returns:
        (sigma', ||ensemble_to_density(p, e) - L sigma' L^H||_F)
    """
    rows = _product_vectors(p, e, rel_tol)
    sigma = np.zeros((p.input_size, p.input_size), dtype=complex)
    for weight, factors, vector in rows:
        g = kron_all(factors) / np.linalg.norm(vector)
        sigma += weight * np.outer(g, g.conj())

    matrix = universal_map(p).matrix
    rho = ensemble_to_density(p, e, rel_tol).entries
    check = float(np.linalg.norm(rho - matrix @ sigma @ matrix.conj().T))
    logger.debug(f"separable companion on {p.describe()}: trace {np.trace(sigma).real:.6f}, check {check:.3e}")
    return DensityMatrix(sigma, normalized=False), check


def ppt_witness(
    p: GeneralProduct,
    rho,
    dims: Sequence[int] = None,
    rel_tol: float = DEFAULT_REL_TOL,
) -> WitnessResult:
    """
    Witness quantum ∘-correlations of rho for a bilinear product with injective L.

    Args:
        p: Arity-2 product whose universal map is injective
        rho: DensityMatrix (or array) on the output space
        dims: Factor dimensions (d_1, d_2); defaults to p.input_dims
        rel_tol: Rank, range and eigenvalue tolerance

    Returns:
        WitnessResult; UNDETECTED is only conclusive for d_1 * d_2 <= 6

    Raises:
        UnsupportedProductError: arity other than 2 or non-injective universal map
        InputError: dimension mismatch
    """
    if p.arity != 2:
        raise UnsupportedProductError(f"ppt witness needs a bilinear product, got arity {p.arity}")
    dims = tuple(int(d) for d in (dims if dims is not None else p.input_dims))
    if dims != tuple(p.input_dims):
        raise InputError(f"dims {list(dims)} do not match product input dims {list(p.input_dims)}", field="dims")

    lmap = universal_map(p)
    if not lmap.is_injective(rel_tol):
        raise UnsupportedProductError(
            f"non-injective universal map for {p.describe()} "
            f"(rank {lmap.rank(rel_tol)} < {p.input_size}); preimage is not unique"
        )

    rho = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho, normalized=False)
    if rho.dim != p.output_dim:
        raise InputError(f"rho has dim {rho.dim}, product output_dim is {p.output_dim}", field="rho")
    entries = rho.entries
    d_a, d_b = dims
    conclusive_if_undetected = d_a * d_b <= PPT_CONCLUSIVE_MAX_DIM

    # Support check against the column space of L
    basis = svd(lmap.matrix).left_vectors[:, :p.input_size]
    projector = basis @ basis.conj().T
    rho_norm = float(np.linalg.norm(entries))
    if rho_norm == 0.0:
        raise InputError("rho must be nonzero", field="rho")
    range_residual = float(np.linalg.norm(entries - projector @ entries @ projector) / rho_norm)
    if range_residual > rel_tol:
        logger.info(f"ppt witness on {p.describe()}: rho leaves the range of L ({range_residual:.3e})")
        return WitnessResult(
            WitnessOutcome.QUANTUM_CORRELATED,
            conclusive=True,
            dims=dims,
            range_residual=range_residual,
            reason="rho is not supported on the range of the universal map",
        )

    inverse = pseudo_inverse(lmap.matrix, rel_tol)
    sigma = inverse @ entries @ inverse.conj().T
    sigma = 0.5 * (sigma + sigma.conj().T)
    sigma = sigma / np.real(np.trace(sigma))

    # positive whenever rho is: sigma is a congruence of rho restricted to the range of L
    min_preimage = float(hermitian_eigvalsh(sigma)[0])
    min_pt = float(hermitian_eigvalsh(partial_transpose(sigma, d_a, d_b))[0])
    if min_pt < -rel_tol:
        outcome, conclusive, reason = (
            WitnessOutcome.QUANTUM_CORRELATED, True, "partial transpose of the preimage is not positive"
        )
    else:
        outcome, conclusive, reason = (
            WitnessOutcome.UNDETECTED, conclusive_if_undetected, "preimage has a positive partial transpose"
        )
    logger.info(f"ppt witness on {p.describe()}: {outcome.value} (min PT eigenvalue {min_pt:.3e})")
    return WitnessResult(
        outcome,
        conclusive=conclusive,
        dims=dims,
        range_residual=range_residual,
        reason=reason,
        min_preimage_eigenvalue=min_preimage,
        min_pt_eigenvalue=min_pt,
        sigma_prime=sigma,
    )


def random_ensemble(p: GeneralProduct, n_items: int, rng: np.random.Generator) -> Ensemble:
    """Dirichlet weights over Gaussian complex factor tuples"""
    if n_items < 1:
        raise InputError(f"n_items must be positive, got {n_items}", field="n_items")
    weights = rng.dirichlet(np.ones(n_items))
    weights = weights / weights.sum()
    pairs = []
    for weight in weights:
        factors = [rng.standard_normal(d) + 1j * rng.standard_normal(d) for d in p.input_dims]
        pairs.append((weight, factors))
    return Ensemble.from_pairs(pairs)


@dataclass(eq=False)
class BiseparableSample:
    density: DensityMatrix
    cut_weights: Dict[str, float]
    components: Dict[str, Ensemble]
    products: Dict[str, GeneralProduct] = field(repr=False, default_factory=dict)

    def summary(self) -> Dict[str, Any]:
        return {"cut_weights": dict(self.cut_weights), "dim": self.density.dim}


def sample_biseparable(
    p: GeneralProduct,
    items_per_cut: int,
    rng: np.random.Generator,
    rel_tol: float = DEFAULT_REL_TOL,
) -> BiseparableSample:
    """
    Random mixture p_AB|C sigma_AB|C + p_BC|A sigma_BC|A + p_CA|B sigma_CA|B.

    Each sigma_XY|Z is a classically correlated mixture for the bilinear
    product that groups slots X and Y into one joint factor.
    """
    if p.arity != 3:
        raise InputError(f"biseparable sampling needs an arity-3 product, got arity {p.arity}")

    cut_weights = rng.dirichlet(np.ones(len(BIPARTITIONS)))
    cut_weights = cut_weights / cut_weights.sum()
    rho = np.zeros((p.output_dim, p.output_dim), dtype=complex)
    components, products, weights = {}, {}, {}
    for weight, (cut, (order, partition)) in zip(cut_weights, BIPARTITIONS.items()):
        grouped = group_legs(permute_legs(p, order), partition)
        ensemble = random_ensemble(grouped, items_per_cut, rng)
        rho += weight * ensemble_to_density(grouped, ensemble, rel_tol).entries
        components[cut] = ensemble
        products[cut] = grouped
        weights[cut] = float(weight)

    return BiseparableSample(
        density=DensityMatrix(rho),
        cut_weights=weights,
        components=components,
        products=products,
    )
