"""ExperimentConfig describes a Monte Carlo sweep over the downlink rate:
the scenario, the swept rates, the compared schemes and the solver and
aggregation settings."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Self

import numpy as np
from vistutils.text import monoSpace
from vistutils.waitaminute import typeMsg

from wewire.channel import ScenarioConfig
from wewire.power import Scheme

AVERAGING_MODES = ('db_of_mean', 'mean_of_db')


@dataclass(frozen=True)
class ExperimentConfig:
  """The sweep configuration.

    scenario: the scenario shared by every point of the sweep
    rdSweep: downlink rates, applied to both mobile stations
    schemes: the phase-1 schemes to compare
    gridStep: split factor grid step of the WEW search
    includeSbsProblem: also solve the phase-2 power scaling
    averaging: 'db_of_mean' averages linear powers before converting,
      'mean_of_db' averages the decibel values
    threads: worker processes, 1 runs in the calling process
    tol: conic solver tolerance
    refinePasses: coordinate refinement passes after the grid search
    debugLog: path of the JSON-lines per-solve log, or None"""

  scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
  rdSweep: tuple[float, ...] = tuple(float(r) for r in range(1, 11))
  schemes: tuple[Scheme, ...] = tuple(Scheme)
  gridStep: float = 0.1
  includeSbsProblem: bool = True
  averaging: str = 'db_of_mean'
  threads: int = 1
  tol: float = 1e-7
  refinePasses: int = 3
  debugLog: str | None = None

  def __post_init__(self) -> None:
    """Validates and normalises the configuration."""
    if not isinstance(self.scenario, ScenarioConfig):
      raise TypeError(typeMsg('scenario', self.scenario, ScenarioConfig))
    sweep = tuple(float(r) for r in self.rdSweep)
    if not sweep:
      e = """The downlink rate sweep must not be empty!"""
      raise ValueError(monoSpace(e))
    uplink = max(self.scenario.rates.uplink)
    if min(sweep) < uplink or not np.all(np.isfinite(sweep)):
      e = """Every swept downlink rate must be finite and at least the 
      uplink rate %s, but received %s!"""
      raise ValueError(monoSpace(e % (uplink, str(sweep))))
    object.__setattr__(self, 'rdSweep', sweep)
    schemes = []
    for scheme in self.schemes:
      scheme = Scheme.parse(scheme) if isinstance(scheme, str) else scheme
      if not isinstance(scheme, Scheme):
        raise TypeError(typeMsg('scheme', scheme, Scheme))
      if scheme not in schemes:
        schemes.append(scheme)
    if not schemes:
      e = """At least one scheme must be compared!"""
      raise ValueError(monoSpace(e))
    object.__setattr__(self, 'schemes', tuple(schemes))
    if not 0 < self.gridStep <= 0.5:
      e = """The grid step must lie in (0, 0.5], but received: %s!"""
      raise ValueError(monoSpace(e % str(self.gridStep)))
    if self.averaging not in AVERAGING_MODES:
      e = """averaging must be one of %s, but received '%s'!"""
      raise ValueError(monoSpace(e % (AVERAGING_MODES, self.averaging)))
    if isinstance(self.threads, bool) or not isinstance(self.threads, int):
      raise TypeError(typeMsg('threads', self.threads, int))
    if self.threads < 1 or self.refinePasses < 0:
      e = """Expected threads >= 1 and refinePasses >= 0, but received 
      threads=%d and refinePasses=%d!"""
      raise ValueError(monoSpace(e % (self.threads, self.refinePasses)))
    if not 1e-10 <= self.tol <= 1e-2:
      e = """The solver tolerance must lie in [1e-10, 1e-2], but received: 
      %s!"""
      raise ValueError(monoSpace(e % str(self.tol)))

  @property
  def nRealizations(self) -> int:
    """Realizations per point of the sweep."""
    return self.scenario.nRealizations

  def withScenario(self, **changes) -> Self:
    """Returns a copy with scenario fields replaced."""
    return replace(self, scenario=replace(self.scenario, **changes))
