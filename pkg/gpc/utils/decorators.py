import logging
from functools import wraps
from typing import Any, Callable, Sequence

import numpy as np

from .errors import KernelError

logger = logging.getLogger(__name__)


def retry_with_fallback(drivers: Sequence[str] = ("gesdd", "gesvd")):
    """
    Retry decorator walking through LAPACK drivers.

    The wrapped function must accept a ``lapack_driver`` keyword. A
    convergence failure on one driver is logged and the next driver is
    tried; when all drivers fail a KernelError is raised.
    """
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            last_exception = None

            for driver in drivers:
                try:
                    return func(*args, lapack_driver=driver, **kwargs)
                except np.linalg.LinAlgError as e:
                    last_exception = e
                    logger.warning(
                        f"{func.__name__} failed with driver {driver}: {e}. "
                        f"Trying next driver..."
                    )

            raise KernelError(
                f"{func.__name__} did not converge with drivers {list(drivers)}: "
                f"{last_exception}"
            ) from last_exception
        return wrapper
    return decorator
