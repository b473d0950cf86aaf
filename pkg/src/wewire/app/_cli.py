"""The 'wewire' command line front end. Commands:

  gen-channels     write the seeded channel realizations as CSV
  solve-bs         solve the phase-1 problem of one seeded realization
  solve-sbs        solve the phase-2 problem of one seeded realization
  run-experiment   run the downlink rate sweep and write the result CSV
  verify-protocol  check the network coded protocol end to end

Exit codes: 0 on success, 1 on usage or configuration errors, 2 on solver
or verification failures, including zero forcing on collinear channels.
Results go to the output file or the standard output, diagnostics go to
the standard error stream."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from typing import Any, Iterator, Sequence, TextIO

import numpy as np
from icecream import ic

from wewire.channel import sampleRayleigh, writeChannelCsv
from wewire.core import CollinearChannels, SolverFailure
from wewire.experiment import plotSweep, runSweep, writeGnuplotScript
from wewire.experiment import splitStream, writeResultsCsv
from wewire.power import BsPowerProblem, Scheme, solveEta
from wewire.protocol import Message, Payloads, concatCommon, extractCommon
from wewire.protocol import exhaustiveXorCheck, simulateTwoPhase
from wewire.protocol import splitMessage
from wewire.sdp import ConicSolver
from wewire.app import WewSettings

ic.configureOutput(includeContext=True)

COMMANDS = ('gen-channels', 'solve-bs', 'solve-sbs', 'run-experiment',
            'verify-protocol')


class VerificationFailure(SolverFailure):
  """Raised when the protocol verification finds a recovery error."""


def buildParser() -> argparse.ArgumentParser:
  """Returns the argument parser."""
  parser = argparse.ArgumentParser(
    prog='wewire',
    description='Wireless emulated wire backhaul: power minimization, '
                'Monte Carlo sweeps and protocol verification.')
  parser.add_argument('command', choices=COMMANDS)
  parser.add_argument('--config', '-c', default=None,
                      help='JSON configuration merged over the defaults')
  parser.add_argument('--override', '-o', nargs='+', action='extend',
                      default=[], metavar='KEY=VALUE',
                      help='override configuration keys by dotted path or '
                           'unique leaf name')
  parser.add_argument('--output', default=None,
                      help='output file, the standard output by default')
  parser.add_argument('--threads', type=int, default=None,
                      help='cap on worker processes')
  parser.add_argument('--quiet', '-q', action='store_true',
                      help='suppress diagnostics')
  parser.add_argument('--show-config', action='store_true',
                      help='print the effective configuration to stderr')
  return parser


@contextlib.contextmanager
def _openOutput(path: str | None) -> Iterator[TextIO]:
  """Opens the output file, or yields the standard output."""
  if path is None:
    yield sys.stdout
    return
  with open(path, 'w', encoding='utf-8', newline='') as file:
    yield file


def _writeJson(record: Any, path: str | None) -> None:
  """Writes one JSON document."""
  with _openOutput(path) as stream:
    stream.write(json.dumps(record, indent=2) + '\n')


def genChannels(settings: WewSettings, output: str | None) -> int:
  """Writes every realization of the scenario as CSV."""
  scenario = settings.scenarioConfig()
  realizations = (sampleRayleigh(seedId, scenario)
                  for seedId in range(scenario.nRealizations))
  with _openOutput(output) as stream:
    count = writeChannelCsv(realizations, stream)
  ic(count)
  return 0


def solveBs(settings: WewSettings, output: str | None) -> int:
  """Solves the phase-1 problem of one realization, at fixed split
  factors when alpha1 and alpha2 are set and otherwise for the
  configured scheme."""
  scenario = settings.scenarioConfig()
  seedId = settings.value('instance.seed_id', 0)
  ch = sampleRayleigh(seedId, scenario)
  solver = ConicSolver(tol=float(settings.value('experiment.tol')))
  problem = BsPowerProblem(ch, scenario.rates, scenario.sigma2,
                           solver=solver,
                           nSamples=settings.value('instance.rank_samples'))
  alpha = settings.splitFactors()
  if alpha is not None:
    solution = problem.solve(alpha)
  else:
    scheme = Scheme.parse(settings.value('instance.scheme'))
    if scheme is Scheme.ZF_ONLY:
      solution = problem.solveZfOnly()
    elif scheme is Scheme.COMMON_ONLY:
      solution = problem.solveCommonOnly()
    elif scheme is Scheme.RANDOM_SPLIT:
      solution = problem.solveRandomAlpha(
        splitStream(scenario.masterSeed, seedId))
    else:
      solution = problem.optimizeAlpha(
        float(settings.value('experiment.grid_step')),
        settings.value('experiment.refine_passes'))
  record = solution.record(seedId)
  record['total_power'] = solution.totalPower
  record['is_lower_bound'] = solution.isLowerBound
  _writeJson(record, output)
  return 0


def solveSbs(settings: WewSettings, output: str | None) -> int:
  """Solves the phase-2 problem of one realization."""
  scenario = settings.scenarioConfig()
  seedId = settings.value('instance.seed_id', 0)
  ch = sampleRayleigh(seedId, scenario)
  powers = scenario.sbsPowers()
  solution = solveEta(ch, scenario.rates, powers, scenario.sigma2)
  record = solution.record(seedId)
  record['sbs_power'] = list(powers)
  _writeJson(record, output)
  return 0


def runExperiment(settings: WewSettings, output: str | None) -> int:
  """Runs the sweep, writes the CSV and, next to an output file, the
  gnuplot script and optionally a PNG."""
  config = settings.experimentConfig()
  total = config.nRealizations
  step = max(1, total // 10)

  def progress(done: int, count: int) -> None:
    """Reports progress on the error stream."""
    if done % step == 0 or done == count:
      ic('%d/%d realizations' % (done, count))

  rows = runSweep(config, progress)
  with _openOutput(output) as stream:
    writeResultsCsv(rows, stream)
  if output is not None:
    script = writeGnuplotScript(output, config.schemes)
    ic(script)
    if settings.value('experiment.plot', False):
      png = output.rsplit('.', 1)[0] + '.png'
      plotSweep(rows, png)
      ic(png)
  return 0


def verifyProtocol(settings: WewSettings, output: str | None) -> int:
  """Exhaustive XOR round trips, split and concatenation round trips on
  a 0.01 grid of split factors, and end to end periods on seeded
  realizations with optimized powers."""
  maxBits = settings.value('protocol.max_bits', 10)
  pairs, xorErrors = exhaustiveXorCheck(maxBits)
  rng = np.random.default_rng(settings.value('scenario.master_seed', 0))
  splitErrors, splitChecks = 0, 0
  for k in range(101):
    alpha = k / 100
    first = Message.random(rng, int(rng.integers(0, 17)))
    second = Message.random(rng, int(rng.integers(0, 17)))
    p1, c1 = splitMessage(first, alpha)
    p2, c2 = splitMessage(second, alpha)
    back1, back2 = extractCommon(concatCommon(c1, c2))
    splitChecks += 1
    if p1 + back1 != first or p2 + back2 != second:
      splitErrors += 1
  scenario = settings.scenarioConfig()
  reports = []
  for seedId in range(settings.value('protocol.instances', 20)):
    ch = sampleRayleigh(seedId, scenario)
    problem = BsPowerProblem(ch, scenario.rates, scenario.sigma2)
    bs = problem.optimizeAlpha(float(settings.value('experiment.grid_step')))
    powers = scenario.sbsPowers()
    eta = solveEta(ch, scenario.rates, powers, scenario.sigma2)
    payloads = Payloads.random(scenario.rates, np.random.default_rng(seedId))
    report = simulateTwoPhase(ch, scenario.rates, bs.alpha, bs, eta,
                              payloads, sbsPower=powers,
                              sigma2=scenario.sigma2)
    reports.append(report)
  failedRuns = [r.seedId for r in reports if not (r.success and
                                                  r.consistent)]
  summary = {
    'xor_pairs_checked': pairs,
    'xor_errors': xorErrors,
    'split_checks': splitChecks,
    'split_errors': splitErrors,
    'end_to_end_runs': len(reports),
    'end_to_end_failures': failedRuns,
  }
  _writeJson(summary, output)
  if xorErrors or splitErrors or failedRuns:
    raise VerificationFailure(json.dumps(summary))
  return 0


HANDLERS = {
  'gen-channels': genChannels,
  'solve-bs': solveBs,
  'solve-sbs': solveSbs,
  'run-experiment': runExperiment,
  'verify-protocol': verifyProtocol,
}


def main(argv: Sequence[str] = None) -> int:
  """Runs one command and returns its exit code."""
  parser = buildParser()
  try:
    args = parser.parse_args(argv)
  except SystemExit as exit_:
    return 0 if exit_.code == 0 else 1
  if args.quiet:
    ic.disable()
  try:
    settings = WewSettings(args.config)
    for assignment in args.override:
      settings.override(assignment)
    if args.threads is not None:
      settings.setValue('experiment.threads', args.threads)
    if args.show_config:
      print(settings.toJson(), file=sys.stderr)
    return HANDLERS[args.command](settings, args.output)
  except (SolverFailure, CollinearChannels) as failure:
    print('wewire: %s' % failure, file=sys.stderr)
    return 2
  except (KeyError, ValueError, TypeError, OSError) as exception:
    message = exception.args[0] if exception.args else exception
    print('wewire: %s' % message, file=sys.stderr)
    return 1
