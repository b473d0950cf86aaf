"""The orthProjector function returns the projector onto the orthogonal
complement of a vector."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import numpy as np

from wewire.core._cmat import CMat, CVec, checkNonZero, hermitian


def orthProjector(h: CVec) -> CMat:
  """Returns P = I - h (hᴴh)⁻¹ hᴴ, the orthogonal projector annihilating
  h. Raises ZeroVector for a degenerate h."""
  h = np.asarray(h, dtype=np.complex128)
  n = checkNonZero(h)
  return hermitian(np.eye(h.size) - np.outer(h, h.conj()) / n ** 2)
