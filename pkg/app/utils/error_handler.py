"""
Errors raised by the lab and the handler that degrades recoverable ones.

Input problems such as parse errors or axiom violations are fatal.
Resource limits (lattice cap, pair budget) and NotWeakGaussian become
skipped verdicts inside the classification pipeline.
"""

import logging
import traceback
from pathlib import Path
from typing import Optional, Dict, Any, Callable, List, Tuple
from functools import wraps
from dataclasses import dataclass, field
from enum import Enum


class SemiringLabError(Exception):
    """Base class for every error raised by the lab"""


class InputParseError(SemiringLabError):
    """Input file or parameter string could not be parsed"""


class BadParams(SemiringLabError):
    """Catalog or operation parameters are out of range"""


class EmptyProduct(SemiringLabError):
    """product_semiring called without factors"""


class MixedSemirings(SemiringLabError):
    """Operands live over different semirings"""


class MixedOrders(SemiringLabError):
    """Truncated series with different truncation orders"""


class FoldTooSmall(SemiringLabError):
    """star_map exponent does not exceed the target degree"""


class CapExceeded(SemiringLabError):
    """Structure is larger than the configured enumeration cap"""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class BudgetExceeded(SemiringLabError):
    """Exhaustive sweep would visit more pairs than the configured budget"""

    def __init__(self, what: str, pairs: int, budget: int):
        super().__init__(f"{what}: {pairs} pairs exceed budget {budget}")
        self.what = what
        self.pairs = pairs
        self.budget = budget


class NotWeakGaussian(SemiringLabError):
    """zd degree requested for a semiring with a non-subtractive prime"""


@dataclass
class AxiomViolation:
    axiom: str
    witness: Tuple[str, ...]

    def describe(self) -> str:
        return f"{self.axiom} fails at ({', '.join(self.witness)})"


class AxiomViolationError(SemiringLabError):
    """Tables violate one or more semiring / semimodule axioms"""

    def __init__(self, violations: List[AxiomViolation]):
        self.violations = violations
        shown = "; ".join(v.describe() for v in violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"{len(violations)} axiom violation(s): {shown}{more}")


# Resource limits degrade to skipped verdicts inside the pipeline
RECOVERABLE_ERRORS = (CapExceeded, BudgetExceeded, NotWeakGaussian)


class ErrorSeverity(Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    CRITICAL = "critical"


_LOG_LEVEL = {
    ErrorSeverity.LOW: logging.INFO,
    ErrorSeverity.MEDIUM: logging.WARNING,
    ErrorSeverity.HIGH: logging.ERROR,
    ErrorSeverity.CRITICAL: logging.CRITICAL,
}


@dataclass
class ErrorContext:
    """Where a handled error came from: pipeline stage, check and a short note"""
    operation: str
    component: str
    fallback_available: bool
    user_message: str
    technical_details: str
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def key(self) -> str:
        return f"{self.component}.{self.operation}"


@dataclass
class Recovery:
    """Outcome of handle_error; ``value`` is the fallback verdict when recovered"""
    recovered: bool
    value: Any = None
    message: str = ""
    error_type: str = ""


class GracefulErrorHandler:
    """
    Counts handled errors per stage.check key, logs them on the
    "SemiringLab" logger and substitutes a registered fallback verdict
    when one exists.
    """

    def __init__(self, log_file: str = "run_logs/semiring_lab.log"):
        self.logger = _configure_logger(log_file)
        self.error_counts: Dict[str, int] = {}
        self.fallbacks: Dict[str, Callable[[Exception], Any]] = {}

    def register_fallback(self, key: str, fallback: Callable[[Exception], Any]):
        self.fallbacks[key] = fallback

    def handle_error(self, error: Exception, context: ErrorContext,
                     severity: ErrorSeverity = ErrorSeverity.MEDIUM) -> Recovery:
        key = context.key
        self.error_counts[key] = self.error_counts.get(key, 0) + 1
        self.logger.log(_LOG_LEVEL[severity], f"[{key}] {type(error).__name__}: {context.technical_details}")
        self.logger.debug("".join(traceback.format_exception(type(error), error, error.__traceback__)))

        outcome = Recovery(recovered=False, message=context.user_message, error_type=type(error).__name__)
        fallback = self.fallbacks.get(key)
        if not context.fallback_available or severity == ErrorSeverity.CRITICAL or fallback is None:
            return outcome
        try:
            outcome.value = fallback(error)
            outcome.recovered = True
            outcome.message = f"{context.user_message}: {error}"
        except Exception as fallback_error:
            self.logger.error(f"[{key}] fallback raised {fallback_error!r}")
        return outcome

    def get_error_stats(self) -> Dict[str, int]:
        return dict(self.error_counts)

    def reset(self):
        self.error_counts.clear()


def _configure_logger(log_file: str) -> logging.Logger:
    """INFO and up to the run log file, WARNING and up to stderr"""
    logger = logging.getLogger("SemiringLab")
    logger.setLevel(logging.INFO)
    if logger.handlers:
        return logger

    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    handlers: List[Tuple[logging.Handler, int]] = [(logging.StreamHandler(), logging.WARNING)]
    try:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append((logging.FileHandler(log_file), logging.INFO))
    except OSError:
        # read-only checkout: console only
        pass
    for handler, level in handlers:
        handler.setLevel(level)
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    return logger


error_handler = GracefulErrorHandler()


def with_error_handling(component: str, operation: str,
                        fallback: Optional[Callable[[Exception], Any]] = None,
                        recoverable: Tuple[type, ...] = RECOVERABLE_ERRORS,
                        severity: ErrorSeverity = ErrorSeverity.LOW,
                        user_message: str = "check skipped"):
    """
    Wrap one analysis check: errors in ``recoverable`` are counted and
    replaced by ``fallback(error)``; anything else propagates.
    """
    key = f"{component}.{operation}"
    if fallback is not None:
        error_handler.register_fallback(key, fallback)

    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except recoverable as e:
                outcome = error_handler.handle_error(e, ErrorContext(
                    operation=operation,
                    component=component,
                    fallback_available=key in error_handler.fallbacks,
                    user_message=user_message,
                    technical_details=str(e)
                ), severity)
                if outcome.recovered:
                    return outcome.value
                raise

        return wrapper
    return decorator


def create_error_summary() -> Dict[str, Any]:
    """Counts of handled errors for the report's error_summary block"""
    stats = error_handler.get_error_stats()
    return {
        "total_errors": sum(stats.values()),
        "error_breakdown": stats,
        "most_common_errors": sorted(stats.items(), key=lambda kv: kv[1], reverse=True)[:5],
    }
