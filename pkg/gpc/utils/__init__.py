"""
Utilities module for gpc.
Provides the numeric kernel, error types, logging and retry helpers.

Serialization lives in ``gpc.utils.serialization`` and is imported from
there directly, since it depends on the product and factorizer types.
"""

from .errors import (
    GpcError,
    InputError,
    UnsupportedProductError,
    UnknownScenarioError,
    FileAccessError,
    KernelError
)
from .decorators import retry_with_fallback
from .logging_utils import setup_logging

__all__ = [
    'GpcError',
    'InputError',
    'UnsupportedProductError',
    'UnknownScenarioError',
    'FileAccessError',
    'KernelError',
    'retry_with_fallback',
    'setup_logging'
]
