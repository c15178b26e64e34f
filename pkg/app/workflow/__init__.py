from .nodes import ClassificationNodes, STAGES
from .golden_suite import GoldenSuite

__all__ = ["ClassificationNodes", "STAGES", "GoldenSuite"]
