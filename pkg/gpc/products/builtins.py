"""
Builtin product constructors and the ``builtin:NAME(args)`` grammar.
"""

import re
from collections import defaultdict
from typing import Callable, Dict, Tuple

from ..config.solver_config import BUILTIN_PRODUCTS
from ..utils.errors import InputError
from .base import GeneralProduct

_BUILTIN_PATTERN = re.compile(r"^builtin:([a-z_]+)\(\s*(\d+(?:\s*,\s*\d+)*)?\s*\)$")


def _check_size(family: str, value: int, label: str) -> None:
    _, minimum = BUILTIN_PRODUCTS[family]
    if int(value) != value or value < minimum:
        raise InputError(f"{family}: {label} must be an integer >= {minimum}, got {value}")


def _accumulate(entries) -> list:
    """Sum coefficients that land on the same (out, in) key"""
    totals: Dict[Tuple, complex] = defaultdict(complex)
    for k, idx, c in entries:
        totals[(k, idx)] += c
    return [(k, idx, c) for (k, idx), c in totals.items() if c != 0]


def builtin_tensor(d_a: int, d_b: int) -> GeneralProduct:
    """a (x) b on C^{d_a} x C^{d_b}; the universal map is the identity"""
    _check_size("tensor", d_a, "d_a")
    _check_size("tensor", d_b, "d_b")
    entries = [
        (i * d_b + j, (i, j), 1.0)
        for i in range(d_a)
        for j in range(d_b)
    ]
    return GeneralProduct.from_entries(
        2, (d_a, d_b), d_a * d_b, entries,
        name=f"tensor({d_a},{d_b})", family="tensor", size_args=(d_a, d_b),
    )


def builtin_wedge(d: int) -> GeneralProduct:
    """
    Exterior product a (x) b - b (x) a, kept in the full d^2 tensor space.

    For d = 2 every wedge product is det[a b] * (e0 (x) e1 - e1 (x) e0).
    """
    _check_size("wedge", d, "d")
    entries = []
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            entries.append((i * d + j, (i, j), 1.0))
            entries.append((j * d + i, (i, j), -1.0))
    return GeneralProduct.from_entries(
        2, (d, d), d * d, _accumulate(entries),
        name=f"wedge({d})", family="wedge", size_args=(d,),
    )


def builtin_symmetric_photon(M: int) -> GeneralProduct:
    """
    Two single photons over M modes, in the M x M matrix picture.

    Slot (m, n) of the flattened output holds alpha_m beta_n + alpha_n beta_m.
    Fock state |1_m 1_n> (m < n) corresponds to unit entries at (m, n) and
    (n, m); |2_m> to the diagonal entry 2 at (m, m).
    """
    _check_size("symmetric_photon", M, "M")
    entries = []
    for m in range(M):
        for n in range(M):
            entries.append((m * M + n, (m, n), 1.0))
            entries.append((n * M + m, (m, n), 1.0))
    return GeneralProduct.from_entries(
        2, (M, M), M * M, _accumulate(entries),
        name=f"symmetric_photon({M})", family="symmetric_photon", size_args=(M,),
    )


def builtin_trilinear_geometric(N: int) -> GeneralProduct:
    """
    Trilinear product truncated at N components per factor.

    Output slot 0 holds sum_n a_n b_n c_n, slot n + 1 holds a_n b_n c_n.
    """
    _check_size("trilinear_geometric", N, "N")
    entries = []
    for n in range(N):
        entries.append((0, (n, n, n), 1.0))
        entries.append((n + 1, (n, n, n), 1.0))
    return GeneralProduct.from_entries(
        3, (N, N, N), N + 1, entries,
        name=f"trilinear_geometric({N})", family="trilinear_geometric", size_args=(N,),
    )


def builtin_integer_multiplication(n_max: int) -> GeneralProduct:
    """
    |m> o |n> = |m * n> on the basis labels 2..n_max.

    Index i stands for the label i + 2; products above n_max are dropped.
    """
    _check_size("integer_multiplication", n_max, "n_max")
    dim = n_max - 1
    entries = [
        (m * n - 2, (m - 2, n - 2), 1.0)
        for m in range(2, n_max // 2 + 1)
        for n in range(2, n_max // m + 1)
    ]
    return GeneralProduct.from_entries(
        2, (dim, dim), dim, entries,
        name=f"integer_multiplication({n_max})", family="integer_multiplication",
        size_args=(n_max,), basis_start=2,
    )


BUILTIN_CONSTRUCTORS: Dict[str, Callable[..., GeneralProduct]] = {
    "tensor": builtin_tensor,
    "wedge": builtin_wedge,
    "symmetric_photon": builtin_symmetric_photon,
    "trilinear_geometric": builtin_trilinear_geometric,
    "integer_multiplication": builtin_integer_multiplication,
}


def parse_builtin(spec: str) -> GeneralProduct:
    """
    Parse ``builtin:NAME(arg, ...)`` strictly.

    Unknown names, wrong argument counts and non-integer arguments are errors.
    """
    match = _BUILTIN_PATTERN.match(spec.strip())
    if not match:
        raise InputError(f"malformed builtin product '{spec}', expected builtin:NAME(int, ...)")

    name, raw_args = match.group(1), match.group(2)
    if name not in BUILTIN_CONSTRUCTORS:
        raise InputError(f"unknown builtin product '{name}', known: {sorted(BUILTIN_CONSTRUCTORS)}")

    args = [int(a) for a in raw_args.split(",")] if raw_args else []
    expected, _ = BUILTIN_PRODUCTS[name]
    if len(args) != expected:
        raise InputError(f"builtin '{name}' takes {expected} argument(s), got {len(args)}")
    return BUILTIN_CONSTRUCTORS[name](*args)
