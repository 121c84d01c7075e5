"""
General multilinear products stored as sparse structural tensors.

A product of arity r maps factor vectors (f_1, ..., f_r) to

    out_k = sum over entries  L[k][i_1..i_r] * f_1[i_1] * ... * f_r[i_r]

The coefficient tensor L is at the same time the universal map: laid out
as a matrix whose columns follow the Kronecker order of the inputs (first
factor slowest) it satisfies  apply(p, f_1..f_r) == L @ kron(f_1..f_r).
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config.solver_config import DEFAULT_REL_TOL
from ..utils.errors import InputError
from ..utils.linalg import as_matrix, as_vector, kron_all, numerical_rank

logger = logging.getLogger(__name__)

Entry = Tuple[int, Tuple[int, ...], complex]


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitude vector; index 0 carries the label ``basis_start``."""
    amplitudes: np.ndarray
    label: Optional[str] = None
    basis_start: int = 0

    def __post_init__(self):
        amplitudes = np.array(as_vector(self.amplitudes, name="amplitudes"), copy=True)
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def basis_labels(self) -> List[int]:
        return list(range(self.basis_start, self.basis_start + self.dim))

    def normalized(self) -> "StateVector":
        norm = self.norm
        if norm == 0.0:
            raise InputError("cannot normalize the zero vector", field=self.label)
        return StateVector(self.amplitudes / norm, self.label, self.basis_start)

    @classmethod
    def basis(cls, dim: int, index: int, label: Optional[str] = None, basis_start: int = 0) -> "StateVector":
        """Unit vector e_index (0-based index, not the basis label)"""
        if not 0 <= index < dim:
            raise InputError(f"basis index {index} out of range for dim {dim}")
        amplitudes = np.zeros(dim, dtype=complex)
        amplitudes[index] = 1.0
        return cls(amplitudes, label, basis_start)


FactorLike = Union[StateVector, np.ndarray, Sequence[complex]]


def _factor_array(factor: FactorLike, slot: int) -> np.ndarray:
    if isinstance(factor, StateVector):
        return factor.amplitudes
    return as_vector(factor, name=f"factors[{slot}]")


@dataclass(frozen=True, eq=False)
class GeneralProduct:
    """
    Arity-r multilinear product over C^{d_1} x ... x C^{d_r} -> C^{output_dim}.

    Coefficients are held as parallel arrays (out_index, in_index, coeffs);
    build instances with ``from_entries`` or a builtin constructor.
    """
    arity: int
    input_dims: Tuple[int, ...]
    output_dim: int
    out_index: np.ndarray
    in_index: np.ndarray
    coeffs: np.ndarray
    name: Optional[str] = None
    family: Optional[str] = None
    size_args: Tuple[int, ...] = ()
    basis_start: int = 0

    @property
    def nnz(self) -> int:
        return int(self.coeffs.size)

    @property
    def input_size(self) -> int:
        """Dimension of the tensor-product space, prod(input_dims)"""
        return int(np.prod(self.input_dims))

    @property
    def entries(self) -> List[Entry]:
        return [
            (int(k), tuple(int(i) for i in idx), complex(c))
            for k, idx, c in zip(self.out_index, self.in_index, self.coeffs)
        ]

    @cached_property
    def tensor(self) -> np.ndarray:
        """Dense coefficient tensor of shape (output_dim, d_1, ..., d_r)"""
        dense = np.zeros((self.output_dim,) + tuple(self.input_dims), dtype=complex)
        dense[(self.out_index,) + tuple(self.in_index.T)] = self.coeffs
        return dense

    @classmethod
    def from_entries(
        cls,
        arity: int,
        input_dims: Sequence[int],
        output_dim: int,
        entries: Iterable[Entry],
        name: Optional[str] = None,
        family: Optional[str] = None,
        size_args: Tuple[int, ...] = (),
        basis_start: int = 0,
    ) -> "GeneralProduct":
        """
        Build a validated product from (out, (i_1..i_r), coefficient) triples.

        Raises:
            InputError: bad dims, out-of-bounds index, duplicate key, or no
                nonzero coefficient
        """
        input_dims = tuple(int(d) for d in input_dims)
        if arity < 2:
            raise InputError(f"arity must be at least 2, got {arity}", field="arity")
        if len(input_dims) != arity:
            raise InputError(
                f"expected {arity} input dims, got {len(input_dims)}", field="input_dims"
            )
        if any(d < 1 for d in input_dims):
            raise InputError(f"input dims must be positive, got {list(input_dims)}", field="input_dims")
        if output_dim < 1:
            raise InputError(f"output_dim must be positive, got {output_dim}", field="output_dim")

        seen: Dict[Tuple[int, ...], int] = {}
        out_index, in_index, coeffs = [], [], []
        for position, (k, idx, c) in enumerate(entries):
            idx = tuple(int(i) for i in idx)
            where = f"entries[{position}]"
            if not 0 <= int(k) < output_dim:
                raise InputError(f"out index {k} not in [0, {output_dim})", field=f"{where}.out")
            if len(idx) != arity:
                raise InputError(f"expected {arity} input indices, got {len(idx)}", field=f"{where}.in")
            for slot, (i, d) in enumerate(zip(idx, input_dims)):
                if not 0 <= i < d:
                    raise InputError(f"index {i} of slot {slot} not in [0, {d})", field=f"{where}.in")
            c = complex(c)
            if not np.isfinite(c):
                raise InputError("coefficient must be finite", field=f"{where}")
            key = (int(k),) + idx
            if key in seen:
                raise InputError(
                    f"duplicate key (out={k}, in={list(idx)}), first seen at entries[{seen[key]}]",
                    field=where,
                )
            seen[key] = position
            if c != 0:
                out_index.append(int(k))
                in_index.append(idx)
                coeffs.append(c)

        if not seen:
            raise InputError("entry list is empty", field="entries")
        if not coeffs:
            raise InputError("product needs at least one nonzero coefficient", field="entries")

        return cls(
            arity=arity,
            input_dims=input_dims,
            output_dim=int(output_dim),
            out_index=_frozen(np.asarray(out_index, dtype=np.int64)),
            in_index=_frozen(np.asarray(in_index, dtype=np.int64).reshape(-1, arity)),
            coeffs=_frozen(np.asarray(coeffs, dtype=complex)),
            name=name,
            family=family,
            size_args=tuple(size_args),
            basis_start=basis_start,
        )

    @classmethod
    def from_universal_matrix(
        cls,
        matrix: np.ndarray,
        input_dims: Sequence[int],
        name: Optional[str] = None,
    ) -> "GeneralProduct":
        """Product whose universal map is the given matrix (columns in Kronecker order)"""
        matrix = as_matrix(matrix, name="matrix")
        input_dims = tuple(int(d) for d in input_dims)
        if matrix.shape[1] != int(np.prod(input_dims)):
            raise InputError(
                f"matrix has {matrix.shape[1]} columns, expected prod{list(input_dims)}",
                field="matrix",
            )
        return cls._from_dense(
            matrix.reshape((matrix.shape[0],) + input_dims), name=name
        )

    @classmethod
    def _from_dense(cls, dense: np.ndarray, name: Optional[str] = None, **kwargs) -> "GeneralProduct":
        entries = [
            (int(row[0]), tuple(int(i) for i in row[1:]), dense[tuple(row)])
            for row in np.argwhere(dense != 0)
        ]
        return cls.from_entries(
            dense.ndim - 1, dense.shape[1:], dense.shape[0], entries, name=name, **kwargs
        )

    def describe(self) -> str:
        return self.name or f"product{list(self.input_dims)}->{self.output_dim}"


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class UniversalMap:
    """Matrix L of shape output_dim x prod(input_dims) with L @ kron(f...) == apply(p, f...)"""
    matrix: np.ndarray
    source_product: GeneralProduct = field(repr=False)

    def rank(self, rel_tol: float = DEFAULT_REL_TOL) -> int:
        return numerical_rank(self.matrix, rel_tol)

    def is_injective(self, rel_tol: float = DEFAULT_REL_TOL) -> bool:
        rows, cols = self.matrix.shape
        if cols > rows:
            return False
        return self.rank(rel_tol) == cols


def apply(p: GeneralProduct, factors: Sequence[FactorLike]) -> StateVector:
    """
    Evaluate the product on r factor vectors.

    Raises:
        InputError: wrong number of factors or dimension mismatch
    """
    arrays = _check_factors(p, factors)
    terms = p.coeffs.copy()
    for slot, f in enumerate(arrays):
        terms = terms * f[p.in_index[:, slot]]
    out = np.zeros(p.output_dim, dtype=complex)
    np.add.at(out, p.out_index, terms)
    return StateVector(out, label=p.name, basis_start=p.basis_start)


def _check_factors(p: GeneralProduct, factors: Sequence[FactorLike]) -> List[np.ndarray]:
    if len(factors) != p.arity:
        raise InputError(f"expected {p.arity} factors, got {len(factors)}", field="factors")
    arrays = [_factor_array(f, slot) for slot, f in enumerate(factors)]
    for slot, (f, d) in enumerate(zip(arrays, p.input_dims)):
        if f.size != d:
            raise InputError(f"factor has dim {f.size}, expected {d}", field=f"factors[{slot}]")
    return arrays


def universal_map(p: GeneralProduct) -> UniversalMap:
    """Materialize L as a dense output_dim x prod(input_dims) matrix"""
    columns = np.ravel_multi_index(tuple(p.in_index.T), p.input_dims)
    matrix = np.zeros((p.output_dim, p.input_size), dtype=complex)
    matrix[p.out_index, columns] = p.coeffs
    return UniversalMap(matrix=matrix, source_product=p)


def apply_universal(p: GeneralProduct, factors: Sequence[FactorLike]) -> np.ndarray:
    """L @ kron(f_1..f_r); the right-hand side of the universality identity"""
    arrays = _check_factors(p, factors)
    return universal_map(p).matrix @ kron_all(arrays)


def compose_with_factor_maps(p: GeneralProduct, maps: Sequence[np.ndarray]) -> GeneralProduct:
    """
    Product p' with apply(p', f...) == apply(p, T_1 f_1, ..., T_r f_r).

    Equivalently universal_map(p') = L @ kron(T_1, ..., T_r).
    """
    if len(maps) != p.arity:
        raise InputError(f"expected {p.arity} factor maps, got {len(maps)}", field="maps")
    dense = p.tensor
    for slot, (t, d) in enumerate(zip(maps, p.input_dims)):
        t = as_matrix(t, name=f"maps[{slot}]")
        if t.shape != (d, d):
            raise InputError(f"map has shape {t.shape}, expected ({d}, {d})", field=f"maps[{slot}]")
        # Contracting axis 1 each time rotates the slots into place.
        dense = np.tensordot(dense, t, axes=([1], [0]))
    return GeneralProduct._from_dense(
        dense,
        name=f"{p.describe()}*T",
        basis_start=p.basis_start,
    )


def group_legs(p: GeneralProduct, partition: Sequence[Sequence[int]]) -> GeneralProduct:
    """
    Merge contiguous factor slots into blocks.

    The grouped product takes one vector per block, living on the Kronecker
    product of the block's member spaces.

    Raises:
        InputError: blocks empty, out of order, not covering every slot, or a
            single block (arity would drop below 2)
    """
    blocks = [list(block) for block in partition]
    flat = [slot for block in blocks for slot in block]
    if any(not block for block in blocks) or flat != list(range(p.arity)):
        raise InputError(
            f"partition {blocks} must list slots 0..{p.arity - 1} in order as contiguous blocks",
            field="partition",
        )
    if len(blocks) < 2:
        raise InputError("partition needs at least two blocks", field="partition")

    block_dims = []
    block_index = []
    for block in blocks:
        dims = tuple(p.input_dims[s] for s in block)
        block_dims.append(int(np.prod(dims)))
        block_index.append(np.ravel_multi_index(tuple(p.in_index[:, block].T), dims))

    in_index = np.stack(block_index, axis=1)
    return GeneralProduct(
        arity=len(blocks),
        input_dims=tuple(block_dims),
        output_dim=p.output_dim,
        out_index=p.out_index,
        in_index=_frozen(in_index.astype(np.int64)),
        coeffs=p.coeffs,
        name=f"{p.describe()}{blocks}",
        basis_start=p.basis_start,
    )


def permute_legs(p: GeneralProduct, order: Sequence[int]) -> GeneralProduct:
    """Product p' with p'(g_0..g_{r-1}) == p(f) where f[order[t]] = g_t"""
    order = [int(s) for s in order]
    if sorted(order) != list(range(p.arity)):
        raise InputError(f"order {order} is not a permutation of 0..{p.arity - 1}", field="order")
    return GeneralProduct(
        arity=p.arity,
        input_dims=tuple(p.input_dims[s] for s in order),
        output_dim=p.output_dim,
        out_index=p.out_index,
        in_index=_frozen(np.ascontiguousarray(p.in_index[:, order])),
        coeffs=p.coeffs,
        name=f"{p.describe()}{order}",
        basis_start=p.basis_start,
    )
