"""Zero forcing beamformers for the two private streams. The beamformer
of stream i is the normalised projection of h_i onto the orthogonal
complement of the other channel, so that it is nulled at the
unintended small cell."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from vistutils.text import monoSpace

from wewire.core import CVec, COLLINEAR, CollinearChannels, checkNonZero
from wewire.core import norm2, orthProjector


@dataclass(frozen=True, eq=False)
class BeamformerSet:
  """Unit norm zero forcing directions w1, w2 with the effective gains
  |h_iᴴw_i|² and the collinearity |h₁ᴴh₂|²/(‖h₁‖²‖h₂‖²) of the
  channels they were built from."""

  w1: CVec
  w2: CVec
  gain1: float
  gain2: float
  collinearity: float

  @property
  def gains(self) -> tuple[float, float]:
    """The pair (gain1, gain2)."""
    return self.gain1, self.gain2

  @property
  def directions(self) -> tuple[CVec, CVec]:
    """The pair (w1, w2)."""
    return self.w1, self.w2


def collinearity(h1: CVec, h2: CVec) -> float:
  """Returns |h₁ᴴh₂|²/(‖h₁‖²‖h₂‖²) in [0, 1]."""
  n1, n2 = checkNonZero(h1), checkNonZero(h2)
  value = abs(np.vdot(h1, h2)) ** 2 / (n1 * n2) ** 2
  return float(min(max(value, 0.0), 1.0))


def _fixPhase(w: CVec) -> CVec:
  """Rotates w so that its largest magnitude entry is real positive.
  Ties resolve to the lowest index."""
  k = int(np.argmax(np.abs(w)))
  return w * np.exp(-1j * np.angle(w[k]))


def effectiveGains(beamformers: BeamformerSet,
                   h1: CVec,
                   h2: CVec) -> tuple[float, float]:
  """Returns (|h₁ᴴw₁|², |h₂ᴴw₂|²)."""
  return tuple(float(abs(np.vdot(h, w)) ** 2)
               for h, w in zip((h1, h2), beamformers.directions))


def zfBeamformers(h1: CVec, h2: CVec) -> BeamformerSet:
  """Returns the zero forcing set for the channel pair. Raises
  ZeroVector for degenerate channels and CollinearChannels when
  1 - collinearity is at or below the collinearity tolerance."""
  h1 = np.asarray(h1, dtype=np.complex128)
  h2 = np.asarray(h2, dtype=np.complex128)
  rho = collinearity(h1, h2)
  if 1.0 - rho <= COLLINEAR:
    e = """The channels are collinear (collinearity %.12f), so zero 
    forcing cannot separate the private streams. Use the common-only 
    scheme instead."""
    raise CollinearChannels(monoSpace(e % rho))
  directions = []
  for hi, hj in [(h1, h2), (h2, h1)]:
    w = orthProjector(hj) @ hi
    directions.append(_fixPhase(w / np.sqrt(norm2(w))))
  w1, w2 = directions
  gains = [float(abs(np.vdot(h, w)) ** 2) for h, w in zip((h1, h2), directions)]
  for w in directions:
    w.setflags(write=False)
  return BeamformerSet(w1, w2, gains[0], gains[1], rho)
