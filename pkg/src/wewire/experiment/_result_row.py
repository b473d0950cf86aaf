"""ResultRow is one line of the sweep table: the aggregated phase-1
power of one scheme at one downlink rate, with the phase-2 statistics of
the same realizations."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np
from vistutils.text import monoSpace

from wewire.core import NonPositivePower
from wewire.power import Scheme

CSV_HEADER = ('R_D', 'scheme', 'mean_power_db', 'std_power_db', 'n_ok',
              'n_failed', 'mean_eta_sum', 'mean_extra_power_db')


def toDb(power: float, sigma2: float) -> float:
  """Returns 10·log₁₀(power / σ²)."""
  if not power > 0:
    e = """Only positive powers have a decibel value, but received: %s!"""
    raise NonPositivePower(monoSpace(e % str(power)))
  return float(10.0 * np.log10(power / sigma2))


def _fmt(value: float) -> str:
  """Shortest round-trip representation of a float."""
  return repr(float(value))


@dataclass(frozen=True)
class ResultRow:
  """Aggregates of one (R_D, scheme) point. The decibel values are
  relative to the noise power. mean_extra_power_db is NaN when the mean
  extra power is zero or the phase-2 problem was not solved, and
  std_power_db is NaN when every realization needs the same power."""

  R_D: float
  scheme: Scheme
  mean_power_db: float
  std_power_db: float
  n_ok: int
  n_failed: int
  mean_eta_sum: float
  mean_extra_power_db: float

  def csvRow(self) -> list[str]:
    """Returns the row as CSV fields."""
    return [_fmt(self.R_D), str(self.scheme), _fmt(self.mean_power_db),
            _fmt(self.std_power_db), str(self.n_ok), str(self.n_failed),
            _fmt(self.mean_eta_sum), _fmt(self.mean_extra_power_db)]

  @classmethod
  def fromCsv(cls, fields: dict[str, str]) -> ResultRow:
    """Parses a row read by csv.DictReader."""
    return cls(float(fields['R_D']), Scheme.parse(fields['scheme']),
               float(fields['mean_power_db']),
               float(fields['std_power_db']), int(fields['n_ok']),
               int(fields['n_failed']), float(fields['mean_eta_sum']),
               float(fields['mean_extra_power_db']))


def writeResultsCsv(rows: Iterable[ResultRow], stream: TextIO) -> int:
  """Writes the header and the rows, returning the number of rows."""
  writer = csv.writer(stream, lineterminator='\n')
  writer.writerow(CSV_HEADER)
  count = 0
  for row in rows:
    writer.writerow(row.csvRow())
    count += 1
  return count


def readResultsCsv(stream: TextIO) -> list[ResultRow]:
  """Reads rows written by writeResultsCsv."""
  reader = csv.DictReader(stream)
  if tuple(reader.fieldnames or ()) != CSV_HEADER:
    e = """Unexpected CSV header %s, expected %s!"""
    raise ValueError(monoSpace(e % (reader.fieldnames, CSV_HEADER)))
  return [ResultRow.fromCsv(fields) for fields in reader]
