"""ChannelRealization holds the four channels of one scenario draw. The
channels are reciprocal and constant over both phases, so the same
realization serves the phase-1 and phase-2 computations."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from vistutils.text import monoSpace

from wewire.core import CVec, cvec


@dataclass(frozen=True, eq=False)
class ChannelRealization:
  """The BS-SBS vectors h1, h2 and the MS-SBS link SNRs γ_M1, γ_M2."""

  h1: CVec
  h2: CVec
  gammaM1: float = 0.0
  gammaM2: float = 0.0
  seedId: int = 0

  def __post_init__(self) -> None:
    """Freezes the channel vectors and validates the dimensions."""
    h1, h2 = cvec(self.h1), cvec(self.h2)
    if h1.size != h2.size or h1.size % 2:
      e = """Both channels must have the same even dimension 2M, but 
      received %d and %d!"""
      raise ValueError(monoSpace(e % (h1.size, h2.size)))
    if min(self.gammaM1, self.gammaM2) < 0:
      e = """The MS-SBS SNRs must be nonnegative, but received %s!"""
      raise ValueError(monoSpace(e % str(self.gammaM)))
    for name, h in [('h1', h1), ('h2', h2)]:
      h.setflags(write=False)
      object.__setattr__(self, name, h)
    object.__setattr__(self, 'gammaM1', float(self.gammaM1))
    object.__setattr__(self, 'gammaM2', float(self.gammaM2))

  @property
  def dim(self) -> int:
    """Number of BS antennas."""
    return int(self.h1.size)

  @property
  def gammaM(self) -> tuple[float, float]:
    """The pair (γ_M1, γ_M2)."""
    return self.gammaM1, self.gammaM2

  @property
  def channels(self) -> tuple[CVec, CVec]:
    """The pair (h1, h2)."""
    return self.h1, self.h2

  def scaled(self, factor: float) -> ChannelRealization:
    """Returns a copy with both BS-SBS channel vectors multiplied by the
    factor. The MS-SBS links are unchanged."""
    return ChannelRealization(self.h1 * factor, self.h2 * factor,
                              self.gammaM1, self.gammaM2, self.seedId)

  def __eq__(self, other: object) -> bool:
    """Bitwise equality of every field."""
    if not isinstance(other, ChannelRealization):
      return NotImplemented
    return (np.array_equal(self.h1, other.h1)
            and np.array_equal(self.h2, other.h2)
            and self.gammaM == other.gammaM
            and self.seedId == other.seedId)

  def __hash__(self) -> int:
    """Hash of the raw channel bytes."""
    return hash((self.h1.tobytes(), self.h2.tobytes(), self.gammaM,
                 self.seedId))
