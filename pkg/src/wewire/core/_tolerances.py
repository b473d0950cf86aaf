"""Numerical tolerances shared across the package. The values are sized
for double precision at problem dimensions of at most a few tens."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

ZERO_PER_DIM = 1e-12  # zero-vector threshold is ZERO_PER_DIM * dim
PSD_RELATIVE = 1e-9  # relative to the trace
COLLINEAR = 1e-8
RATE_SLACK = 1e-9  # bits
RANK_RATIO = 1e-6


def zeroThreshold(dim: int) -> float:
  """Returns the norm below which a vector of the given dimension is
  treated as the zero vector."""
  return ZERO_PER_DIM * max(int(dim), 1)
