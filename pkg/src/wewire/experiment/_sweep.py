"""runSweep runs the Monte Carlo experiment: every seed is solved for
every downlink rate and scheme, the outcomes are gathered by seed and
reduced in seed order into one ResultRow per (R_D, scheme)."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable

import numpy as np
from icecream import ic

from wewire.power import Scheme, SolveLog
from wewire.experiment import ExperimentConfig, ResultRow, toDb
from wewire.experiment import RealizationOutcome, solveRealization

ic.configureOutput(includeContext=True)

Progress = Callable[[int, int], None]


def solveAll(config: ExperimentConfig,
             progress: Progress = None) -> list[RealizationOutcome]:
  """Solves every seed, in parallel when more than one thread is
  configured, and returns the outcomes ordered by seed."""
  seeds = list(range(config.nRealizations))
  work = partial(solveRealization, config=config)
  outcomes = []
  if config.threads > 1 and len(seeds) > 1:
    workers = min(config.threads, len(seeds))
    chunk = max(1, len(seeds) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
      for outcome in pool.map(work, seeds, chunksize=chunk):
        outcomes.append(outcome)
        if progress is not None:
          progress(len(outcomes), len(seeds))
  else:
    for seedId in seeds:
      outcomes.append(work(seedId))
      if progress is not None:
        progress(len(outcomes), len(seeds))
  outcomes.sort(key=lambda outcome: outcome.seedId)
  return outcomes


def _meanDb(powers: list[float], sigma2: float, averaging: str) -> float:
  """Mean power in decibels under the averaging convention."""
  if averaging == 'mean_of_db':
    return float(np.mean([toDb(p, sigma2) for p in powers]))
  return toDb(float(np.mean(powers)), sigma2)


def _stdDb(powers: list[float], sigma2: float, averaging: str) -> float:
  """Spread of the power in decibels under the averaging convention.
  Under db_of_mean the standard deviation is taken in linear power and
  then converted; a zero spread has no decibel value and gives NaN."""
  if averaging == 'mean_of_db':
    return float(np.std([toDb(p, sigma2) for p in powers]))
  spread = float(np.std(powers))
  return toDb(spread, sigma2) if spread > 0 else float('nan')


def aggregate(config: ExperimentConfig,
              outcomes: list[RealizationOutcome]) -> list[ResultRow]:
  """Reduces the outcomes into one row per (R_D, scheme), in sweep then
  scheme order. Zero powers have no decibel value and count as
  failures of the row."""
  sigma2 = config.scenario.sigma2
  rows = []
  for k, rd in enumerate(config.rdSweep):
    points = [outcome.points[k] for outcome in outcomes]
    etaSums = [p.etaSum for p in points if p.etaSum is not None]
    extras = [p.extraPower for p in points if p.extraPower is not None]
    meanEta = float(np.mean(etaSums)) if etaSums else float('nan')
    meanExtra = float(np.mean(extras)) if extras else 0.0
    extraDb = toDb(meanExtra, sigma2) if meanExtra > 0 else float('nan')
    for scheme in config.schemes:
      powers = [p.powers.get(scheme) for p in points]
      ok = [power for power in powers if power is not None and power > 0]
      failed = len(powers) - len(ok)
      if ok:
        meanDb = _meanDb(ok, sigma2, config.averaging)
        stdDb = _stdDb(ok, sigma2, config.averaging)
      else:
        meanDb, stdDb = float('nan'), float('nan')
      rows.append(ResultRow(rd, scheme, meanDb, stdDb, len(ok), failed,
                            meanEta, extraDb))
  return rows


def runSweep(config: ExperimentConfig,
             progress: Progress = None) -> list[ResultRow]:
  """Runs the experiment and returns the result table. Per-solve
  records are appended to the debug log when one is configured."""
  outcomes = solveAll(config, progress)
  if config.debugLog is not None:
    with SolveLog(config.debugLog) as log:
      for outcome in outcomes:
        for record in outcome.records:
          log.write(record)
  failures = sum(1 for outcome in outcomes for point in outcome.points
                 for power in point.powers.values() if power is None)
  if failures:
    ic(failures)
  return aggregate(config, outcomes)


def schemeSeries(rows: list[ResultRow],
                 scheme: Scheme) -> tuple[list[float], list[float]]:
  """Returns the (R_D, mean_power_db) series of one scheme."""
  picked = [row for row in rows if row.scheme is scheme]
  return [row.R_D for row in picked], [row.mean_power_db for row in picked]
