"""Multi-robot path planning with subgraph abstraction."""

from .plans import Arrangement, PlanStep, validate_plan
from .roadmap import Partition, RoadMap, SubgraphRef, load_map, load_partition

__all__ = [
    "Arrangement",
    "Partition",
    "PlanStep",
    "RoadMap",
    "SubgraphRef",
    "load_map",
    "load_partition",
    "validate_plan",
]

__version__ = "0.1.0"
