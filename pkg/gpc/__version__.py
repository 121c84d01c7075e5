"""Package version, recorded as ``tool_version`` in every report"""

VERSION = (0, 1, 0)
__version__ = ".".join(str(part) for part in VERSION)
