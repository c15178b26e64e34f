from .semiring import FiniteSemiring, validate_semiring
from .catalog import build_catalog, small_catalog

__all__ = ["FiniteSemiring", "validate_semiring", "build_catalog", "small_catalog"]
