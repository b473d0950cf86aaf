"""Real symmetric embedding of complex Hermitian matrices. The embedding
[[Re A, -Im A], [Im A, Re A]] has the eigenvalues of A, each with
doubled multiplicity, and is PSD exactly when A is. The interior point
solver works entirely in this real form."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import numpy as np

from wewire.core._cmat import CMat, RMat, hermitian


def realEmbedding(A: CMat) -> RMat:
  """Returns the real symmetric matrix of twice the dimension embedding
  the Hermitian matrix A."""
  A = hermitian(A)
  re, im = A.real, A.imag
  return np.block([[re, -im], [im, re]])


def complexFromEmbedding(X: RMat) -> CMat:
  """Returns the Hermitian matrix whose embedding is closest to the real
  symmetric matrix X. This is the inverse of realEmbedding on its image
  and an averaging projection elsewhere; it preserves PSD-ness."""
  X = np.asarray(X, dtype=np.float64)
  n = X.shape[0] // 2
  re = 0.5 * (X[:n, :n] + X[n:, n:])
  im = 0.5 * (X[n:, :n] - X[:n, n:])
  return hermitian(re + 1j * im)
