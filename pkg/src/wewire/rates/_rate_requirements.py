"""RateRequirements holds the wired reference rates of both mobile
stations and SplitFactors the private fractions of the two downlink
messages. Rates are in bits per second with the bandwidth normalised to
1 Hz."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Self

import numpy as np
from vistutils.text import monoSpace


def _pair(name: str, values: tuple) -> tuple[float, float]:
  """Validates a pair of finite nonnegative reals."""
  out = tuple(float(v) for v in values)
  if len(out) != 2:
    e = """'%s' must hold exactly two values, but received %d!"""
    raise ValueError(monoSpace(e % (name, len(out))))
  for value in out:
    if not np.isfinite(value) or value < 0:
      e = """'%s' must hold finite nonnegative values, but received 
      %s!"""
      raise ValueError(monoSpace(e % (name, str(out))))
  return out


@dataclass(frozen=True)
class RateRequirements:
  """Uplink and downlink rates (R_U1, R_U2) and (R_D1, R_D2). Since the
  mobile stations transmit at no more power than the small cells, the
  uplink rate never exceeds the downlink rate of the same station."""

  uplink: tuple[float, float] = (0.0, 0.0)
  downlink: tuple[float, float] = (0.0, 0.0)

  def __post_init__(self) -> None:
    """Validates the rates."""
    object.__setattr__(self, 'uplink', _pair('uplink', self.uplink))
    object.__setattr__(self, 'downlink', _pair('downlink', self.downlink))
    for i, (ru, rd) in enumerate(zip(self.uplink, self.downlink)):
      if ru > rd:
        e = """The uplink rate %.6g of station %d exceeds its downlink 
        rate %.6g!"""
        raise ValueError(monoSpace(e % (ru, i + 1, rd)))

  @classmethod
  def symmetric(cls, uplink: float, downlink: float) -> Self:
    """Both stations share the same uplink and downlink rates."""
    return cls((uplink, uplink), (downlink, downlink))

  def withDownlink(self, downlink: float) -> Self:
    """Returns a copy with both downlink rates replaced."""
    return RateRequirements(self.uplink, (downlink, downlink))

  def isZero(self) -> bool:
    """True when no rate is requested in either direction."""
    return not any(self.uplink) and not any(self.downlink)


@dataclass(frozen=True)
class SplitFactors:
  """The fractions (α₁, α₂) of each downlink message sent privately. The
  remaining fraction is sent in the common message."""

  alpha1: float = 1.0
  alpha2: float = 1.0

  def __post_init__(self) -> None:
    """Validates that both factors lie in [0, 1]."""
    for name in ['alpha1', 'alpha2']:
      value = float(getattr(self, name))
      if not 0.0 <= value <= 1.0:
        e = """Split factor '%s' must lie in [0, 1], but received %s!"""
        raise ValueError(monoSpace(e % (name, value)))
      object.__setattr__(self, name, value)

  @classmethod
  def allPrivate(cls) -> Self:
    """Zero forcing only."""
    return cls(1.0, 1.0)

  @classmethod
  def allCommon(cls) -> Self:
    """Common beam only."""
    return cls(0.0, 0.0)

  def hasPrivate(self) -> bool:
    """True if any part of either message is sent privately."""
    return self.alpha1 > 0 or self.alpha2 > 0

  def __iter__(self) -> Iterator[float]:
    """Iterates over (α₁, α₂)."""
    return iter((self.alpha1, self.alpha2))

  def __getitem__(self, index: int) -> float:
    """Returns α₁ at index 0 and α₂ at index 1."""
    return (self.alpha1, self.alpha2)[index]

  def __str__(self) -> str:
    """String representation"""
    return '(%.4f, %.4f)' % (self.alpha1, self.alpha2)
