"""Uncertainty-disturbance measures and quantum-boundary criteria for
bipartite no-signaling behaviors."""

from .behavior import Behavior, ConditionalState, DEFAULT_TOL
from .boxes import FamilyPoint, aqc_behavior, local_box, mix, noisy_family, nonlocal_box
from .ndwu import CInterval, CriterionReport, c_interval, criterion
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "Behavior",
    "ConditionalState",
    "CInterval",
    "CriterionReport",
    "FamilyPoint",
    "DEFAULT_TOL",
    "BACKEND",
    "aqc_behavior",
    "c_interval",
    "criterion",
    "local_box",
    "mix",
    "noisy_family",
    "nonlocal_box",
    "__version__",
]
