"""Bit arrays are numpy uint8 arrays holding zeros and ones along the
last axis. The functions here work on single messages as well as on
stacks of equally long messages."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from typing import Any

import numpy as np
from numpy.random import Generator
from numpy.typing import NDArray
from vistutils.text import monoSpace

Bits = NDArray[np.uint8]


def asBits(values: Any) -> Bits:
  """Returns the values as a bit array. Strings of '0' and '1' are
  accepted as well as sequences of integers."""
  if isinstance(values, str):
    text = values.replace(' ', '').replace('_', '')
    if set(text) - {'0', '1'}:
      e = """Bit strings may only hold '0' and '1', but received: '%s'!"""
      raise ValueError(monoSpace(e % values))
    values = [int(char) for char in text]
  out = np.asarray(values, dtype=np.int64)
  if out.size and (out.min() < 0 or out.max() > 1):
    e = """Bits must be 0 or 1, but received values in [%d, %d]!"""
    raise ValueError(monoSpace(e % (out.min(), out.max())))
  return out.astype(np.uint8)


def bitString(bits: Bits) -> str:
  """Returns the bits as a string of '0' and '1'."""
  return ''.join('1' if b else '0' for b in np.asarray(bits).reshape(-1))


def randomBits(rng: Generator, length: int) -> Bits:
  """Draws the given number of uniform bits."""
  return rng.integers(0, 2, size=int(length), dtype=np.uint8)


def padBits(bits: Bits, length: int) -> Bits:
  """Zero pads the last axis at the tail up to the given length."""
  missing = length - bits.shape[-1]
  if missing < 0:
    e = """Cannot pad %d bits to the shorter length %d!"""
    raise ValueError(monoSpace(e % (bits.shape[-1], length)))
  widths = [(0, 0)] * (bits.ndim - 1) + [(0, missing)]
  return np.pad(bits, widths)


def xorBits(first: Bits, second: Bits) -> Bits:
  """Bitwise XOR of equally long bit arrays, broadcasting leading
  axes."""
  return np.bitwise_xor(first, second).astype(np.uint8)


def allBitStrings(length: int) -> Bits:
  """Returns every bit string of the given length, one per row, in
  counting order with the most significant bit first."""
  if length == 0:
    return np.zeros((1, 0), dtype=np.uint8)
  counts = np.arange(2 ** length, dtype=np.int64)[:, None]
  shifts = np.arange(length - 1, -1, -1, dtype=np.int64)[None, :]
  return ((counts >> shifts) & 1).astype(np.uint8)
