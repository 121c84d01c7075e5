"""
Exception hierarchy for gpc.

Every error carries a short machine-parsable ``code`` which the CLI prints
together with the human message.
"""


class GpcError(Exception):
    code = "E_GPC"

    def __init__(self, message: str, field: str = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)

    def one_line(self) -> str:
        """Single-line diagnostic ``error: CODE: message``"""
        text = " ".join(str(self).split())
        return f"error: {self.code}: {text}"


class InputError(GpcError, ValueError):
    code = "E_INPUT"


class UnsupportedProductError(InputError):
    code = "E_UNSUPPORTED"


class UnknownScenarioError(InputError):
    code = "E_SCENARIO"


class KernelError(GpcError, RuntimeError):
    code = "E_KERNEL"


class FileAccessError(InputError):
    code = "E_IO"
