"""Message wraps a bit array together with the flow it belongs to."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from enum import Enum
from typing import Any, Self

import numpy as np
from numpy.random import Generator
from vistutils.waitaminute import typeMsg

from wewire.protocol import Bits, asBits, bitString, randomBits


class Origin(Enum):
  """The four end-to-end flows, plus the concatenated common message of
  the base station."""

  BS_TO_MS1 = 'BS->MS1'
  BS_TO_MS2 = 'BS->MS2'
  MS1_TO_BS = 'MS1->BS'
  MS2_TO_BS = 'MS2->BS'
  BS_COMMON = 'BS->SBS1+SBS2'

  def __str__(self) -> str:
    """String representation"""
    return self.value

  @classmethod
  def downlink(cls, index: int) -> Origin:
    """The downlink flow to MS1 or MS2."""
    return (cls.BS_TO_MS1, cls.BS_TO_MS2)[index - 1]

  @classmethod
  def uplink(cls, index: int) -> Origin:
    """The uplink flow from MS1 or MS2."""
    return (cls.MS1_TO_BS, cls.MS2_TO_BS)[index - 1]


class Message:
  """Message holds an immutable bit sequence with its origin. Derived
  messages that mix flows, such as network coded broadcasts, have no
  origin. A common message records the boundary between its parts."""

  def __init__(self, bits: Any = None, origin: Origin = None,
               boundary: int = None) -> None:
    data = asBits([] if bits is None else bits).reshape(-1)
    data.setflags(write=False)
    if origin is not None and not isinstance(origin, Origin):
      raise TypeError(typeMsg('origin', origin, Origin))
    self.__bits__ = data
    self.__origin__ = origin
    self.__boundary__ = boundary

  @classmethod
  def random(cls, rng: Generator, length: int,
             origin: Origin = None) -> Self:
    """Draws a message of uniform bits."""
    return cls(randomBits(rng, length), origin)

  @property
  def bits(self) -> Bits:
    """The read-only bit array."""
    return self.__bits__

  @property
  def origin(self) -> Origin | None:
    """The flow this message belongs to."""
    return self.__origin__

  @property
  def boundary(self) -> int | None:
    """Length of the first part of a common message."""
    return self.__boundary__

  def withOrigin(self, origin: Origin | None) -> Message:
    """Returns the same bits under another origin."""
    return Message(self.__bits__, origin, self.__boundary__)

  def __len__(self) -> int:
    return int(self.__bits__.size)

  def __eq__(self, other: object) -> bool:
    """Messages are equal when their bits are equal. The origin is
    metadata and is not compared."""
    if isinstance(other, Message):
      return len(self) == len(other) and bool(
        np.array_equal(self.bits, other.bits))
    return NotImplemented

  def __hash__(self) -> int:
    return hash(self.__bits__.tobytes())

  def __add__(self, other: Message) -> Message:
    """Concatenation, keeping the origin of the left operand."""
    if not isinstance(other, Message):
      return NotImplemented
    bits = np.concatenate([self.bits, other.bits])
    return Message(bits, self.origin)

  def __str__(self) -> str:
    """String representation"""
    return bitString(self.__bits__)

  def __repr__(self) -> str:
    """Code representation"""
    origin = '' if self.origin is None else ', %s' % self.origin.name
    return "Message('%s'%s)" % (str(self), origin)
