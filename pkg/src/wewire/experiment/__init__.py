"""The 'wewire.experiment' package runs the seeded Monte Carlo sweep over
the downlink rate and writes the result table and plots."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from ._experiment_config import AVERAGING_MODES, ExperimentConfig
from ._result_row import CSV_HEADER, toDb, ResultRow, writeResultsCsv
from ._result_row import readResultsCsv
from ._realization import PointOutcome, RealizationOutcome, splitStream
from ._realization import solveRealization
from ._sweep import solveAll, aggregate, runSweep, schemeSeries
from ._plotting import gnuplotScript, writeGnuplotScript, plotSweep
