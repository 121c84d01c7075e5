"""
Prime profile of the integer-multiplication product.

The amplitude of |q> in (sum_n |n>) o (sum_n |n>) counts the ordered
factorizations q = m * n with m, n >= 2, which vanishes exactly at primes.
"""

import logging
from math import isqrt

import numpy as np
import pandas as pd

from ..products.base import StateVector, apply
from ..products.builtins import builtin_integer_multiplication
from ..utils.errors import InputError

logger = logging.getLogger(__name__)

PROFILE_COLUMNS = ["q", "c_q", "is_prime"]
PROFILE_MIN = 4


def prime_sieve(n: int) -> np.ndarray:
    """Boolean mask of length n + 1, True at the primes <= n"""
    sieve = np.ones(max(n + 1, 2), dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return sieve[:n + 1]


def divisor_count(q: int) -> int:
    """tau(q) by trial division"""
    if q < 1:
        raise InputError(f"divisor count needs q >= 1, got {q}")
    count = 0
    for i in range(1, isqrt(q) + 1):
        if q % i == 0:
            count += 1 if i * i == q else 2
    return count


def uniform_state(n_max: int) -> StateVector:
    """sum_{n=2}^{n_max} |n>, unnormalized"""
    return StateVector(np.ones(n_max - 1, dtype=complex), label="uniform", basis_start=2)


def primes_profile(n_max: int) -> pd.DataFrame:
    """
    Amplitudes c_q of the uniform-times-uniform product for q in [4, n_max].

    Args:
        n_max: Largest basis label, at least 4

    Returns:
        DataFrame with columns q, c_q (raw count) and is_prime
    """
    if isinstance(n_max, bool) or int(n_max) != n_max or n_max < PROFILE_MIN:
        raise InputError(f"n_max must be an integer >= {PROFILE_MIN}, got {n_max}", field="n_max")
    n_max = int(n_max)

    p = builtin_integer_multiplication(n_max)
    uniform = uniform_state(n_max)
    amplitudes = apply(p, [uniform, uniform]).amplitudes

    q = np.arange(PROFILE_MIN, n_max + 1)
    counts = np.rint(amplitudes[q - p.basis_start].real).astype(int)
    df = pd.DataFrame({
        "q": q,
        "c_q": counts,
        "is_prime": prime_sieve(n_max)[q],
    })
    logger.info(f"primes profile up to {n_max}: {int((df['c_q'] == 0).sum())} zero amplitudes")
    return df[PROFILE_COLUMNS]
