"""Export of channel realizations as CSV rows: the seed id, the real and
imaginary part of every coefficient of h1 and h2, then γ_M1 and γ_M2."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import csv
from typing import Iterable, TextIO

from wewire.channel import ChannelRealization


def channelCsvHeader(dim: int) -> list[str]:
  """Returns the column names for channels of the given dimension."""
  out = ['seed_id']
  for name in ['h1', 'h2']:
    for k in range(dim):
      out.extend(['%s_%d_re' % (name, k), '%s_%d_im' % (name, k)])
  return [*out, 'gammaM1', 'gammaM2']


def channelCsvRow(realization: ChannelRealization) -> list[str]:
  """Returns one CSV row. Floats are written with repr so the values
  round-trip exactly."""
  out = [str(realization.seedId)]
  for h in realization.channels:
    for value in h:
      out.extend([repr(float(value.real)), repr(float(value.imag))])
  return [*out, repr(realization.gammaM1), repr(realization.gammaM2)]


def writeChannelCsv(realizations: Iterable[ChannelRealization],
                    stream: TextIO) -> int:
  """Writes the header and one row per realization to the stream and
  returns the number of rows written."""
  writer = csv.writer(stream, lineterminator='\n')
  count = 0
  for realization in realizations:
    if not count:
      writer.writerow(channelCsvHeader(realization.dim))
    writer.writerow(channelCsvRow(realization))
    count += 1
  return count
