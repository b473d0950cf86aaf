"""Tests of the Monte Carlo sweep, its aggregation and its outputs."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import io
import json
import math

import numpy as np
import pytest

from wewire.channel import ScenarioConfig, sampleRayleigh
from wewire.core import NonPositivePower
from wewire.experiment import CSV_HEADER, ExperimentConfig, PointOutcome
from wewire.experiment import RealizationOutcome, ResultRow, aggregate
from wewire.experiment import gnuplotScript, plotSweep, readResultsCsv
from wewire.experiment import runSweep, schemeSeries, solveAll
from wewire.experiment import solveRealization, toDb, writeGnuplotScript
from wewire.experiment import writeResultsCsv
from wewire.power import BsPowerProblem, Scheme, solveEta
from wewire.sdp import ConicSolver


def _quick(nRealizations: int = 2, **kwargs) -> ExperimentConfig:
  """A small and fast sweep."""
  scenario = ScenarioConfig(nRealizations=nRealizations, masterSeed=3)
  options = dict(rdSweep=(2.0, 5.0), gridStep=0.25, refinePasses=1)
  options.update(kwargs)
  return ExperimentConfig(scenario, **options)


class TestToDb:
  """Decibels relative to the noise power."""

  @pytest.mark.parametrize('power, sigma2, expected', [
    (2.0, 2.0, 0.0),
    (20.0, 2.0, 10.0),
    (4.0, 1.0, 6.0206),
  ])
  def test_values(self, power: float, sigma2: float,
                  expected: float) -> None:
    """σ², 10σ² and 4σ²."""
    assert toDb(power, sigma2) == pytest.approx(expected, abs=1e-4)

  def test_nonPositive(self) -> None:
    """Zero power has no decibel value."""
    with pytest.raises(NonPositivePower):
      toDb(0.0, 1.0)


class TestExperimentConfig:
  """Validation of the sweep configuration."""

  def test_defaults(self) -> None:
    """Ten downlink rates and all four schemes."""
    config = ExperimentConfig()
    assert config.rdSweep == tuple(float(r) for r in range(1, 11))
    assert set(config.schemes) == set(Scheme)
    assert config.nRealizations == 1000

  def test_schemeNames(self) -> None:
    """Schemes may be named by string and duplicates are dropped."""
    config = ExperimentConfig(schemes=('zf_only', 'WEW', 'ZFOnly'))
    assert config.schemes == (Scheme.ZF_ONLY, Scheme.WEW)

  def test_invalid(self) -> None:
    """Rates below the uplink rate and odd tolerances are rejected."""
    with pytest.raises(ValueError):
      ExperimentConfig(rdSweep=(0.5, 2.0))
    with pytest.raises(ValueError):
      ExperimentConfig(tol=0.5)
    with pytest.raises(ValueError):
      ExperimentConfig(schemes=('wired',))
    with pytest.raises(ValueError):
      ExperimentConfig(averaging='median')


class TestRealization:
  """Solving a single seed across the sweep."""

  def test_matchesDirectSolve(self) -> None:
    """A single seed reproduces the single instance solvers."""
    config = _quick(1, rdSweep=(3.0,))
    outcome = solveRealization(0, config)
    scenario = config.scenario.withDownlink(3.0)
    ch = sampleRayleigh(0, scenario)
    problem = BsPowerProblem(ch, scenario.rates, scenario.sigma2,
                             solver=ConicSolver(tol=config.tol))
    point = outcome.points[0]
    zf = problem.solveZfOnly().totalPower
    common = problem.solveCommonOnly().totalPower
    assert point.powers[Scheme.ZF_ONLY] == pytest.approx(zf)
    assert point.powers[Scheme.COMMON_ONLY] == pytest.approx(common)
    eta = solveEta(ch, scenario.rates, scenario.sbsPowers(), scenario.sigma2)
    assert point.etaSum == pytest.approx(eta.etaSum)

  def test_dominance(self) -> None:
    """WEW never needs more power than any other scheme."""
    outcome = solveRealization(1, _quick(1))
    for point in outcome.points:
      wew = point.powers[Scheme.WEW]
      for scheme in (Scheme.ZF_ONLY, Scheme.COMMON_ONLY, Scheme.RANDOM_SPLIT):
        assert wew <= point.powers[scheme] + 1e-9

  def test_randomSplitStable(self) -> None:
    """The random split factors are shared along the sweep."""
    config = _quick(1, debugLog='unused.jsonl')
    outcome = solveRealization(0, config)
    alphas = [record['alpha'] for record in outcome.records
              if record.get('scheme') == 'RandomSplit']
    assert len(alphas) == 2
    assert alphas[0] == alphas[1]

  def test_failureRecorded(self, monkeypatch) -> None:
    """A solver failure leaves no power and is logged with the failing
    problem and the raw solver output."""
    monkeypatch.setattr('wewire.experiment._realization.ConicSolver',
                        lambda tol: ConicSolver(tol=tol, maxIterations=1))
    config = _quick(1, rdSweep=(2.0,), schemes=('CommonOnly',),
                    includeSbsProblem=False, debugLog='unused.jsonl')
    outcome = solveRealization(0, config)
    assert outcome.points[0].powers[Scheme.COMMON_ONLY] is None
    kinds = [record['kind'] for record in outcome.records]
    assert kinds[0] == 'failure'
    assert {'problem', 'constraint', 'solution'} <= set(kinds)
    solution = next(r for r in outcome.records if r['kind'] == 'solution')
    assert solution['status'] != 'Optimal'
    assert solution['scheme'] == 'CommonOnly'


class TestAggregate:
  """Reduction of outcomes into result rows."""

  def test_singleRealization(self) -> None:
    """One realization gives its own power and no decibel spread."""
    config = _quick(1, rdSweep=(2.0,), schemes=('ZFOnly',))
    outcomes = solveAll(config)
    rows = aggregate(config, outcomes)
    assert len(rows) == 1
    power = outcomes[0].points[0].powers[Scheme.ZF_ONLY]
    assert rows[0].mean_power_db == pytest.approx(toDb(power, 1.0))
    assert math.isnan(rows[0].std_power_db)
    assert (rows[0].n_ok, rows[0].n_failed) == (1, 0)

  def test_zeroPowerFails(self) -> None:
    """Zero and missing powers count as failures."""
    config = _quick(3, rdSweep=(1.0,), schemes=('WEW',))
    outcomes = [
      RealizationOutcome(0, [PointOutcome(1.0, {Scheme.WEW: 10.0}, 2.0,
                                          1.0)]),
      RealizationOutcome(1, [PointOutcome(1.0, {Scheme.WEW: 0.0}, 2.0,
                                          0.0)]),
      RealizationOutcome(2, [PointOutcome(1.0, {Scheme.WEW: None})]),
    ]
    row, = aggregate(config, outcomes)
    assert (row.n_ok, row.n_failed) == (1, 2)
    assert row.mean_power_db == pytest.approx(10.0)
    assert row.mean_eta_sum == pytest.approx(2.0)
    assert row.mean_extra_power_db == pytest.approx(toDb(0.5, 1.0))

  def test_averagingModes(self) -> None:
    """dB of the mean is never below the mean of the dB values. The
    spread follows the same convention: linear then converted, or taken
    over the dB values."""
    outcomes = [
      RealizationOutcome(k, [PointOutcome(1.0, {Scheme.WEW: p})])
      for k, p in enumerate((1.0, 100.0))]
    linear, = aggregate(_quick(2, rdSweep=(1.0,), schemes=('WEW',)),
                        outcomes)
    logarithmic, = aggregate(_quick(2, rdSweep=(1.0,), schemes=('WEW',),
                                    averaging='mean_of_db'), outcomes)
    assert linear.mean_power_db == pytest.approx(toDb(50.5, 1.0))
    assert logarithmic.mean_power_db == pytest.approx(10.0)
    assert linear.std_power_db == pytest.approx(toDb(49.5, 1.0))
    assert logarithmic.std_power_db == pytest.approx(10.0)
    assert math.isnan(linear.mean_extra_power_db)

  def test_meanDominance(self) -> None:
    """The WEW curve lies below the zero forcing curve."""
    rows = runSweep(_quick(3, schemes=('WEW', 'ZFOnly'),
                           includeSbsProblem=False))
    wew = schemeSeries(rows, Scheme.WEW)[1]
    zf = schemeSeries(rows, Scheme.ZF_ONLY)[1]
    assert np.all(np.array(wew) <= np.array(zf) + 1e-9)

  def test_parallelMatchesSerial(self) -> None:
    """Worker processes give the same table as the calling process."""
    serial = runSweep(_quick(2, schemes=('ZFOnly', 'CommonOnly')))
    parallel = runSweep(_quick(2, schemes=('ZFOnly', 'CommonOnly'),
                               threads=2))
    for a, b in zip(serial, parallel):
      assert a.mean_power_db == pytest.approx(b.mean_power_db)
      assert a.mean_eta_sum == pytest.approx(b.mean_eta_sum)

  def test_reproducibleCsv(self) -> None:
    """Two runs with the same master seed write the same bytes, serial
    or parallel."""
    tables = []
    for threads in (1, 1, 2):
      stream = io.StringIO()
      writeResultsCsv(runSweep(_quick(3, threads=threads)), stream)
      tables.append(stream.getvalue().encode())
    assert tables[0] == tables[1] == tables[2]

  @pytest.mark.slow
  def test_extraPowerCurve(self) -> None:
    """The mean extra small cell power grows with the downlink rate, and
    a fourfold channel gain lowers it at every rate."""
    curves = []
    for gain in (1.0, 4.0):
      scenario = ScenarioConfig(nRealizations=200, channelGain=gain)
      config = ExperimentConfig(scenario, schemes=('ZFOnly',), threads=4)
      rows = runSweep(config)
      curves.append(np.array([
        0.0 if math.isnan(row.mean_extra_power_db)
        else 10 ** (row.mean_extra_power_db / 10) for row in rows]))
    unit, strong = curves
    assert np.all(np.diff(unit) >= 0)
    assert np.all(unit > 0)
    assert np.all(strong < unit)

  def test_progress(self) -> None:
    """Progress is reported once per realization."""
    calls = []
    solveAll(_quick(2, rdSweep=(2.0,), schemes=('ZFOnly',)),
             lambda done, total: calls.append((done, total)))
    assert calls == [(1, 2), (2, 2)]

  def test_debugLog(self, tmp_path) -> None:
    """Every solve is recorded as one JSON line."""
    path = tmp_path / 'solves.jsonl'
    runSweep(_quick(1, rdSweep=(2.0,), schemes=('ZFOnly', 'CommonOnly'),
                    debugLog=str(path)))
    records = [json.loads(line) for line in path.read_text().splitlines()]
    schemes = {record.get('scheme') for record in records}
    assert {'ZFOnly', 'CommonOnly'} <= schemes
    assert any('eta1' in record for record in records)

  @pytest.mark.slow
  def test_crossover(self) -> None:
    """Common only beats zero forcing at low rates and loses at high
    rates, changing sides between 2 and 8 bits."""
    scenario = ScenarioConfig(nRealizations=200)
    config = ExperimentConfig(scenario, schemes=('ZFOnly', 'CommonOnly'),
                              includeSbsProblem=False, threads=4)
    rows = runSweep(config)
    rates, zf = schemeSeries(rows, Scheme.ZF_ONLY)
    common = schemeSeries(rows, Scheme.COMMON_ONLY)[1]
    assert common[0] < zf[0]
    assert common[-1] > zf[-1]
    crossing = next(rd for rd, c, z in zip(rates, common, zf) if c > z)
    assert 2.0 <= crossing <= 8.0

  @pytest.mark.slow
  def test_wewMargin(self) -> None:
    """The optimized split stays strictly below both baselines at the
    crossover and at the top of the sweep."""
    scenario = ScenarioConfig(nRealizations=200)
    config = ExperimentConfig(scenario, rdSweep=(4.0, 10.0),
                              schemes=('WEW', 'ZFOnly', 'CommonOnly'),
                              includeSbsProblem=False, gridStep=0.25,
                              refinePasses=1, threads=4)
    rows = runSweep(config)
    wew = np.array(schemeSeries(rows, Scheme.WEW)[1])
    zf = np.array(schemeSeries(rows, Scheme.ZF_ONLY)[1])
    common = np.array(schemeSeries(rows, Scheme.COMMON_ONLY)[1])
    assert np.all(wew < np.minimum(zf, common))


class TestOutputs:
  """CSV table, gnuplot script and matplotlib figure."""

  @staticmethod
  def _rows() -> list[ResultRow]:
    """Two hand made rows."""
    return [ResultRow(1.0, Scheme.WEW, 3.5, 0.25, 10, 0, 2.5, -1.0),
            ResultRow(1.0, Scheme.ZF_ONLY, 6.0, 1.5, 9, 1, 2.5, -1.0)]

  def test_csv(self) -> None:
    """The table is written with its header and read back."""
    stream = io.StringIO()
    assert writeResultsCsv(self._rows(), stream) == 2
    lines = stream.getvalue().splitlines()
    assert lines[0] == ','.join(CSV_HEADER)
    assert lines[2].startswith('1.0,ZFOnly,6.0,1.5,9,1')
    stream.seek(0)
    assert readResultsCsv(stream) == self._rows()

  def test_gnuplot(self, tmp_path) -> None:
    """The script plots every scheme from the CSV."""
    script = gnuplotScript('sweep.csv', 'sweep.png', [Scheme.WEW,
                                                      Scheme.ZF_ONLY])
    assert "set output 'sweep.png'" in script
    assert "eq 'ZFOnly'" in script
    path = writeGnuplotScript(str(tmp_path / 'sweep.csv'), [Scheme.WEW])
    assert path.endswith('sweep.gp')
    assert 'sweep.csv' in (tmp_path / 'sweep.gp').read_text()

  def test_plot(self, tmp_path) -> None:
    """The figure is saved as a PNG file."""
    path = plotSweep(self._rows(), str(tmp_path / 'sweep.png'))
    with open(path, 'rb') as file:
      assert file.read(8) == b'\x89PNG\r\n\x1a\n'
