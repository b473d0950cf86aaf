"""solveRealization evaluates every scheme and the phase-2 problem for a
single seed across the whole downlink rate sweep. It is a module level
function so that worker processes can run it."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from icecream import ic
from numpy.random import SeedSequence

from wewire.channel import sampleRayleigh
from wewire.core import CollinearChannels, SolverFailure, WewException
from wewire.power import BsPowerProblem, BsPowerSolution, Scheme, solveEta
from wewire.sdp import ConicSolver, problemRecords, solutionRecord
from wewire.experiment import ExperimentConfig

ic.configureOutput(includeContext=True)

SPLIT_STREAM = 1


@dataclass
class PointOutcome:
  """Results of one seed at one downlink rate. A missing power marks a
  failed solve."""

  rd: float
  powers: dict[Scheme, float | None] = field(default_factory=dict)
  etaSum: float | None = None
  extraPower: float | None = None


@dataclass
class RealizationOutcome:
  """Results of one seed across the sweep, with its debug records."""

  seedId: int
  points: list[PointOutcome] = field(default_factory=list)
  records: list[dict[str, Any]] = field(default_factory=list)


def splitStream(masterSeed: int, seedId: int) -> np.random.Generator:
  """The generator of the random split factors of one realization. It
  is separate from the channel stream and restarted at every downlink
  rate, so the random scheme uses the same draw along the sweep."""
  sequence = SeedSequence([int(masterSeed), int(seedId), SPLIT_STREAM])
  return np.random.default_rng(sequence)


def _record(outcome: RealizationOutcome, rd: float,
            solution: BsPowerSolution) -> None:
  """Appends the per-solve record."""
  record = solution.record(outcome.seedId)
  record['R_D'] = rd
  outcome.records.append(record)


def _failure(outcome: RealizationOutcome, rd: float, scheme: Scheme | str,
             exception: WewException, debug: bool) -> None:
  """Logs a failed solve and keeps the failing problem and the solver
  output when debugging."""
  ic(outcome.seedId, rd, str(scheme), exception)
  if not debug:
    return
  record = {'kind': 'failure', 'seed_id': outcome.seedId, 'R_D': rd,
            'scheme': str(scheme), 'error': type(exception).__name__,
            'message': str(exception)}
  outcome.records.append(record)
  problem = getattr(exception, 'problem', None)
  if problem is not None:
    header, *rows = problemRecords(problem)
    header.update(seed_id=outcome.seedId, R_D=rd, scheme=str(scheme))
    outcome.records.extend([header, *rows])
  solution = getattr(exception, 'solution', None)
  if solution is not None:
    record = solutionRecord(solution)
    record.update(seed_id=outcome.seedId, R_D=rd, scheme=str(scheme))
    outcome.records.append(record)


def solveRealization(seedId: int,
                     config: ExperimentConfig) -> RealizationOutcome:
  """Solves every configured scheme for one seed at every swept rate.
  ZFOnly and CommonOnly are the α = (1, 1) and α = (0, 0) solutions of
  the same problem instance as the WEW search, and the random split is
  offered to the WEW search as an extra candidate."""
  outcome = RealizationOutcome(seedId)
  debug = config.debugLog is not None
  solver = ConicSolver(tol=config.tol)
  for rd in config.rdSweep:
    scenario = config.scenario.withDownlink(rd)
    ch = sampleRayleigh(seedId, scenario)
    point = PointOutcome(rd)
    problem = BsPowerProblem(ch, scenario.rates, scenario.sigma2,
                             solver=solver)
    candidates = []
    solved: dict[Scheme, BsPowerSolution] = {}
    order = sorted(config.schemes, key=lambda s: s is Scheme.WEW)
    for scheme in order:
      try:
        if scheme is Scheme.RANDOM_SPLIT:
          rng = splitStream(scenario.masterSeed, seedId)
          solution = problem.solveRandomAlpha(rng)
          candidates.append(solution.alpha)
        elif scheme is Scheme.ZF_ONLY:
          solution = problem.solveZfOnly()
        elif scheme is Scheme.COMMON_ONLY:
          solution = problem.solveCommonOnly()
        else:
          solution = problem.optimizeAlpha(config.gridStep,
                                           config.refinePasses, candidates)
      except (CollinearChannels, SolverFailure) as exception:
        point.powers[scheme] = None
        _failure(outcome, rd, scheme, exception, debug)
        continue
      solved[scheme] = solution
      point.powers[scheme] = solution.totalPower
      if debug:
        _record(outcome, rd, solution)
    if config.includeSbsProblem:
      try:
        eta = solveEta(ch, scenario.rates, scenario.sbsPowers(),
                       scenario.sigma2)
      except SolverFailure as exception:
        _failure(outcome, rd, 'SBS', exception, debug)
      else:
        point.etaSum, point.extraPower = eta.etaSum, eta.extraPower
        if debug:
          record = eta.record(seedId)
          record['R_D'] = rd
          outcome.records.append(record)
    outcome.points.append(point)
  return outcome
