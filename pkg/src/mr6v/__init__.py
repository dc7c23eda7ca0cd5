"""Exact computations for the modified rational six-vertex model."""

from .core import Matrix, det, format_rational, inverse, parse_rational
from .formulas import Method, partition, partition_block, partition_mid, partition_pdwbc
from .homogeneous import HomogParams, partition_homogeneous, z0
from .oracle import Boundary, InhomParams, partition_bruteforce

__all__ = [
    "Boundary", "HomogParams", "InhomParams", "Matrix", "Method",
    "det", "format_rational", "inverse", "parse_rational",
    "partition", "partition_block", "partition_bruteforce", "partition_homogeneous",
    "partition_mid", "partition_pdwbc", "z0",
]
