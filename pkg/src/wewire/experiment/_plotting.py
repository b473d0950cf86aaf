"""Sweep results are rendered two ways: a gnuplot script emitted next to
the CSV file, and optionally a PNG drawn with matplotlib. Both show the
mean base station power per scheme and the mean extra small cell power
against the downlink rate."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from wewire.power import Scheme
from wewire.experiment import ResultRow, schemeSeries

GNUPLOT_TEMPLATE = """# Emitted by wewire run-experiment
set datafile separator ','
set terminal pngcairo size 1200,480
set output '%(png)s'
set multiplot layout 1,2
set grid
set key top left
set xlabel 'Downlink rate R_D [bit/s/Hz]'
set ylabel 'Mean BS power [dB rel. noise]'
plot %(bsPlots)s
set ylabel 'Mean extra SBS power [dB rel. noise]'
plot '%(csv)s' using 1:(strcol(2) eq '%(first)s' ? $8 : 1/0) \\
  with linespoints title 'extra SBS power'
unset multiplot
"""


def gnuplotScript(csvPath: str, pngPath: str,
                  schemes: Sequence[Scheme]) -> str:
  """Returns a gnuplot script plotting the CSV written by the sweep."""
  csvName = os.fspath(csvPath).replace("'", "")
  plots = ', \\\n  '.join(
    "'%s' using 1:(strcol(2) eq '%s' ? $3 : 1/0) with linespoints "
    "title '%s'" % (csvName, scheme, scheme) for scheme in schemes)
  return GNUPLOT_TEMPLATE % {
    'png': os.fspath(pngPath).replace("'", ""),
    'csv': csvName,
    'bsPlots': plots,
    'first': schemes[0],
  }


def writeGnuplotScript(csvPath: str, schemes: Sequence[Scheme]) -> str:
  """Writes '<csv stem>.gp' next to the CSV file and returns its path."""
  stem = os.path.splitext(os.fspath(csvPath))[0]
  scriptPath, pngPath = stem + '.gp', stem + '.png'
  with open(scriptPath, 'w', encoding='utf-8') as file:
    file.write(gnuplotScript(os.path.basename(csvPath),
                             os.path.basename(pngPath), schemes))
  return scriptPath


def plotSweep(rows: Sequence[ResultRow], path: str) -> str:
  """Draws the sweep with matplotlib and saves it to path."""
  import matplotlib
  matplotlib.use('Agg')
  import matplotlib.pyplot as plt

  schemes = []
  for row in rows:
    if row.scheme not in schemes:
      schemes.append(row.scheme)
  fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
  for scheme in schemes:
    x, y = schemeSeries(list(rows), scheme)
    left.plot(x, y, marker='o', label=str(scheme))
  left.set_xlabel('Downlink rate $R_D$ [bit/s/Hz]')
  left.set_ylabel('Mean BS power [dB rel. noise]')
  left.grid(True)
  left.legend(loc='upper left')
  first = [row for row in rows if row.scheme is schemes[0]]
  extra = np.array([row.mean_extra_power_db for row in first])
  right.plot([row.R_D for row in first], extra, marker='s', color='k')
  right.set_xlabel('Downlink rate $R_D$ [bit/s/Hz]')
  right.set_ylabel('Mean extra SBS power [dB rel. noise]')
  right.grid(True)
  fig.tight_layout()
  fig.savefig(path, bbox_inches='tight')
  plt.close(fig)
  return path
