"""The logDet2Psd function computes log₂ det(A) of a Hermitian PSD
matrix through its Cholesky factor."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import numpy as np

from wewire.core._cmat import CMat, cholesky


def logDet2Psd(A: CMat) -> float:
  """Returns log₂ det(A) as the sum of log₂ of the squared diagonal of
  the Cholesky factor. Raises NotPSD if the factorization fails."""
  L = cholesky(A)
  return float(np.sum(np.log2(np.abs(L.diagonal().real) ** 2)))
