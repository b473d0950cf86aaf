"""Complex vector and matrix helpers. Vectors are one-dimensional numpy
arrays of dtype complex128 (CVec) and matrices are square complex128
arrays (CMat). Hermitian matrices are constructed to be exactly
Hermitian rather than checked approximately."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from typing import Any, TypeAlias

import numpy as np
from numpy.typing import NDArray
from vistutils.text import monoSpace

from wewire.core import NotPSD, ZeroVector
from wewire.core._tolerances import PSD_RELATIVE, zeroThreshold

CVec: TypeAlias = NDArray[np.complex128]
CMat: TypeAlias = NDArray[np.complex128]
RMat: TypeAlias = NDArray[np.float64]


def cvec(*entries: Any) -> CVec:
  """Creates a complex vector from the given entries. A single iterable
  argument is unpacked."""
  if len(entries) == 1 and np.ndim(entries[0]) == 1:
    entries = tuple(entries[0])
  out = np.asarray(entries, dtype=np.complex128)
  if out.ndim != 1 or not out.size:
    e = """Expected at least one scalar entry, but received shape: %s"""
    raise ValueError(monoSpace(e % str(out.shape)))
  return out


def hermitian(A: Any) -> CMat:
  """Returns the Hermitian part (A + Aᴴ)/2 of a square matrix. The
  result satisfies entry(i, j) == conj(entry(j, i)) exactly."""
  A = np.asarray(A, dtype=np.complex128)
  if A.ndim != 2 or A.shape[0] != A.shape[1]:
    e = """Expected a square matrix, but received shape: %s"""
    raise ValueError(monoSpace(e % str(A.shape)))
  out = 0.5 * (A + A.conj().T)
  out[np.diag_indices_from(out)] = out.diagonal().real
  return out


def outer(h: CVec) -> CMat:
  """Returns the rank one Hermitian matrix h hᴴ."""
  h = np.asarray(h, dtype=np.complex128)
  return hermitian(np.outer(h, h.conj()))


def norm2(h: CVec) -> float:
  """Returns the squared euclidean norm."""
  return float(np.vdot(h, h).real)


def checkNonZero(h: CVec) -> float:
  """Returns the norm of the vector, raising ZeroVector if the norm is
  at or below the zero threshold for its dimension."""
  h = np.asarray(h, dtype=np.complex128)
  n = float(np.linalg.norm(h))
  if not np.isfinite(n) or n <= zeroThreshold(h.size):
    e = """Vector of dimension %d has norm %.3e, which is at or below the 
    zero threshold %.3e!"""
    raise ZeroVector(monoSpace(e % (h.size, n, zeroThreshold(h.size))))
  return n


def psdTolerance(A: CMat) -> float:
  """Returns the PSD tolerance for the matrix, relative to its trace."""
  return PSD_RELATIVE * max(abs(float(np.trace(A).real)), 1.0)


def cholesky(A: CMat) -> CMat:
  """Returns the lower Cholesky factor of a Hermitian PSD matrix. A
  matrix that fails only within the PSD tolerance is shifted by that
  tolerance and factored again; otherwise NotPSD is raised."""
  A = hermitian(A)
  try:
    return np.linalg.cholesky(A)
  except np.linalg.LinAlgError:
    pass
  shift = psdTolerance(A)
  try:
    return np.linalg.cholesky(A + shift * np.eye(A.shape[0]))
  except np.linalg.LinAlgError as exception:
    e = """Cholesky factorization failed beyond the tolerance %.3e. The 
    smallest eigenvalue is %.3e."""
    lowest = float(np.linalg.eigvalsh(A)[0])
    raise NotPSD(monoSpace(e % (shift, lowest))) from exception


def isPsd(A: CMat) -> bool:
  """Returns True if the Hermitian matrix has no eigenvalue below minus
  the PSD tolerance."""
  A = hermitian(A)
  return bool(np.linalg.eigvalsh(A)[0] >= -psdTolerance(A))
