"""SolveLog writes JSON-lines debug records of individual solves: one
record per phase-1 or phase-2 solution, failure, or dumped problem
row."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import json
import os
from typing import Any, Self, TextIO

from vistutils.waitaminute import typeMsg


class SolveLog:
  """SolveLog appends JSON lines to a file or an open text stream. A
  SolveLog created with None as target discards every record."""

  def __init__(self, target: str | os.PathLike | TextIO | None) -> None:
    self.__target__ = target
    self.__stream__ = None
    self.__owns_stream__ = False
    self.__count__ = 0

  def _getStream(self) -> TextIO | None:
    """Getter-function for the output stream, opening the file on first
    use."""
    if self.__stream__ is None and self.__target__ is not None:
      if isinstance(self.__target__, (str, os.PathLike)):
        self.__stream__ = open(self.__target__, 'a', encoding='utf-8')
        self.__owns_stream__ = True
      elif hasattr(self.__target__, 'write'):
        self.__stream__ = self.__target__
      else:
        raise TypeError(typeMsg('target', self.__target__, str))
    return self.__stream__

  @property
  def enabled(self) -> bool:
    """True when records are kept."""
    return self.__target__ is not None

  @property
  def count(self) -> int:
    """Number of records written."""
    return self.__count__

  def write(self, record: dict[str, Any]) -> None:
    """Writes one record."""
    stream = self._getStream()
    if stream is None:
      return
    stream.write(json.dumps(record) + '\n')
    self.__count__ += 1

  def close(self) -> None:
    """Closes the file if this log opened it."""
    if self.__stream__ is not None and self.__owns_stream__:
      self.__stream__.close()
    self.__stream__ = None

  def __enter__(self) -> Self:
    return self

  def __exit__(self, *_) -> None:
    self.close()
