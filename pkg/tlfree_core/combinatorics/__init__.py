"""
Combinatorics Module: the lattice of non-crossing partitions.
"""

from .nc_core import (
    NCPartition,
    catalan,
    enumerate_nc,
    hat_embed,
    is_noncrossing,
    join,
    kreweras,
    leq,
    meet,
    mobius,
    mobius_to_top,
)

__all__ = [
    "NCPartition",
    "catalan",
    "enumerate_nc",
    "hat_embed",
    "is_noncrossing",
    "join",
    "kreweras",
    "leq",
    "meet",
    "mobius",
    "mobius_to_top",
]
