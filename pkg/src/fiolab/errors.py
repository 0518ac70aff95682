"""Error taxonomy shared by every module.

The CLI maps these onto exit codes: validation (and its structural/domain
subclasses) exit 2, resource exhaustion exits 3.
"""


class FiolabError(Exception):
    """Base class for all library errors."""


class ValidationError(FiolabError):
    """Bad data: non-finite samples, off-grid shifts, empty families, ..."""


class StructuralError(ValidationError):
    """Shape/grid mismatch between objects that must agree."""


class DomainError(ValidationError):
    """Parameter outside its mathematical domain (p < 1, lambda > 1, ...)."""


class ResourceError(FiolabError):
    """A computation would exceed the configured memory budget."""
