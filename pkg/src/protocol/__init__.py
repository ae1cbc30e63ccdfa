"""
Superposition-preparation protocol planning.
"""

from .protocol_plan import (
    ProtocolPlan,
    branch_separation,
    non_overlap_check,
    plan_protocol,
    superposition_angle,
    transfer_time_for_angle,
    validate_timeline,
)

__all__ = [
    "ProtocolPlan",
    "branch_separation",
    "non_overlap_check",
    "plan_protocol",
    "superposition_angle",
    "transfer_time_for_angle",
    "validate_timeline",
]
