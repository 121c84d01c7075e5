"""gpc - deciding and quantifying factorizability of states under general multilinear products"""

from gpc.main import FactorizationManager
from gpc.__version__ import __version__

__all__ = ['FactorizationManager', '__version__']
