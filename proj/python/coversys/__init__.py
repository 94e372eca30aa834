"""Exact tools for covering systems of the integers and hyperplane covers."""

from ._core import (
    CapacityError,
    CoverSystem,
    InputError,
    analyze,
    census,
    frame_family,
    q_value,
    run_cli,
    simpson_bound,
    tau,
)

__all__ = [
    "CapacityError",
    "CoverSystem",
    "InputError",
    "analyze",
    "census",
    "frame_family",
    "q_value",
    "run_cli",
    "simpson_bound",
    "tau",
]
