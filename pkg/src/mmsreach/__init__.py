"""Reach-avoid planning for constant-rate multi-mode systems, with exact verification."""

from .geometry import Polytope, Segment, contains, segment_clearance, segment_intersects
from .model import Instance, Mms, Plan, TimedAction, load_instance, simulate

__version__ = "0.1.0"

__all__ = [
    "Polytope",
    "Segment",
    "contains",
    "segment_clearance",
    "segment_intersects",
    "Instance",
    "Mms",
    "Plan",
    "TimedAction",
    "load_instance",
    "simulate",
]
