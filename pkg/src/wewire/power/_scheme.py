"""Scheme enumerates the phase-1 transmission schemes compared by the
experiment."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from enum import Enum

from vistutils.text import monoSpace


class Scheme(Enum):
  """The phase-1 transmission schemes."""

  WEW = 'WEW'
  ZF_ONLY = 'ZFOnly'
  COMMON_ONLY = 'CommonOnly'
  RANDOM_SPLIT = 'RandomSplit'

  def __str__(self) -> str:
    """String representation"""
    return self.value

  @classmethod
  def parse(cls, name: str) -> Scheme:
    """Returns the scheme of the given name, ignoring case and
    separators."""
    key = name.replace('_', '').replace('-', '').lower()
    for scheme in cls:
      if scheme.value.lower() == key:
        return scheme
    e = """Unknown scheme '%s', expected one of: %s!"""
    names = ', '.join(str(scheme) for scheme in cls)
    raise ValueError(monoSpace(e % (name, names)))
