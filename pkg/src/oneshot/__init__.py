"""One-shot capacity of networks with restricted adversaries.

Network model, channel simulation and unambiguity checks, explicit
constructions, exhaustive and SAT-based search, and separability checks.
"""

from .channel import (
    CollisionWitness,
    NetworkCode,
    OuterCode,
    check_unambiguous,
    fanout,
    transmit,
)
from .netmodel import (
    CapacityReport,
    Network,
    NetworkError,
    diamond,
    family_b,
    family_e,
    figure1_network,
    s_family,
    singleton_bound,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityReport",
    "CollisionWitness",
    "Network",
    "NetworkCode",
    "NetworkError",
    "OuterCode",
    "check_unambiguous",
    "diamond",
    "family_b",
    "family_e",
    "fanout",
    "figure1_network",
    "s_family",
    "singleton_bound",
    "transmit",
    "validate",
]
