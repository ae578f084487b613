# Copyright 2026 The hmsr Authors
# SPDX-License-Identifier: Apache-2.0
"""Hadamard-design MDS storage codes with optimal single-node repair."""

from ._core import (
    Code,
    HmsrError,
    hadamard,
    mat_rank,
    predicted_rank,
    x_diag,
    x_to_permutation,
)

__all__ = [
    "Code",
    "HmsrError",
    "hadamard",
    "mat_rank",
    "predicted_rank",
    "x_diag",
    "x_to_permutation",
]
__version__ = "0.1.0"
