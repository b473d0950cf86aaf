"""Rank one extraction from a relaxed common covariance. Candidates are
drawn as v = U Λ^{1/2} ξ with ξ circularly symmetric Gaussian, so that v
has covariance W; each candidate is scaled minimally to meet every
common constraint |hᴴv|² >= bound, and the cheapest candidate wins. The
principal eigenvector is always among the candidates."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from typing import Sequence

import numpy as np
from numpy.random import Generator

from wewire.core import CMat, CVec, hermitian, zeroThreshold


def rankOf(W: CMat, ratio: float) -> int:
  """Returns the number of eigenvalues of W above ratio times the
  largest. A matrix with negligible largest eigenvalue has rank zero."""
  if not W.size:
    return 0
  eigenvalues = np.linalg.eigvalsh(hermitian(W))[::-1]
  if eigenvalues[0] <= zeroThreshold(W.shape[0]):
    return 0
  return int(np.sum(eigenvalues > ratio * eigenvalues[0]))


def principalBeam(W: CMat) -> CVec:
  """Returns sqrt(λ₁)·u₁ for the largest eigenpair of W."""
  eigenvalues, vectors = np.linalg.eigh(hermitian(W))
  return np.sqrt(max(eigenvalues[-1], 0.0)) * vectors[:, -1]


def extractRank1(W: CMat,
                 constraints: Sequence[tuple[CVec, float]],
                 nSamples: int = 100,
                 rng: Generator = None) -> tuple[CVec, float]:
  """Returns the beam w and its power ‖w‖² of the cheapest candidate
  meeting |h_iᴴw|² >= bound_i for every (h_i, bound_i). Constraints with
  nonpositive bounds are ignored. Candidates drawn with the same
  generator seed are nested in nSamples, so the returned power is
  nonincreasing in nSamples."""
  W = hermitian(W)
  dim = W.shape[0]
  active = [(np.asarray(h), float(b)) for h, b in constraints if b > 0]
  if not active:
    return np.zeros(dim, dtype=np.complex128), 0.0
  rng = np.random.default_rng(0) if rng is None else rng
  eigenvalues, vectors = np.linalg.eigh(W)
  root = vectors * np.sqrt(np.clip(eigenvalues, 0.0, None))
  draws = rng.standard_normal((max(int(nSamples), 0), dim, 2))
  xi = (draws[..., 0] + 1j * draws[..., 1]) / np.sqrt(2)
  candidates = np.vstack([principalBeam(W)[None, :], xi @ root.T])
  H = np.array([h for h, _ in active])
  bounds = np.array([b for _, b in active])
  received = np.abs(candidates @ H.conj().T) ** 2
  usable = np.all(received > 0, axis=1)
  if not np.any(usable):
    return np.zeros(dim, dtype=np.complex128), np.inf
  scale = np.full(candidates.shape[0], np.inf)
  scale[usable] = np.max(bounds / received[usable], axis=1)
  powers = scale * np.sum(np.abs(candidates) ** 2, axis=1)
  best = int(np.argmin(powers))
  return candidates[best] * np.sqrt(scale[best]), float(powers[best])
