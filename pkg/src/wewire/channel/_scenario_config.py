"""ScenarioConfig collects the parameters of one scenario: the antenna
count, the noise power, the wired reference rates, the small cell power
and the Monte Carlo seeding. Every field has a default matching the
numerical setup of the reproduced experiments."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Self

from vistutils.text import monoSpace
from vistutils.waitaminute import typeMsg

from wewire.rates import RateRequirements, snrFromRate

GAMMA_SOURCES = ('uplink', 'downlink')


@dataclass(frozen=True)
class ScenarioConfig:
  """The parameters of a scenario.

    M: half the number of BS antennas
    sigma2: noise power σ², normalised units
    rates: wired reference rates of both mobile stations
    sbsPower: wired-case SBS power P_S, a pair (P_S1, P_S2), or None to
      derive P_S/σ² = max_i(2^{R_Di} - 1) from the downlink rates
    nRealizations: Monte Carlo realizations per point
    masterSeed: root of every random stream
    gammaSource: rate the MS-SBS SNR is derived from, 'uplink' or
      'downlink'
    channelGain: linear power gain applied to every SBS-BS channel

  Both transmission phases last T/2 with T normalised to 2."""

  M: int = 1
  sigma2: float = 1.0
  rates: RateRequirements = field(
    default_factory=lambda: RateRequirements.symmetric(1.0, 4.0))
  sbsPower: float | tuple[float, float] | None = None
  nRealizations: int = 1000
  masterSeed: int = 0
  gammaSource: str = 'uplink'
  channelGain: float = 1.0

  def __post_init__(self) -> None:
    """Validates the configuration."""
    if not isinstance(self.rates, RateRequirements):
      e = typeMsg('rates', self.rates, RateRequirements)
      raise TypeError(e)
    for name in ['M', 'nRealizations', 'masterSeed']:
      value = getattr(self, name)
      if isinstance(value, bool) or not isinstance(value, int):
        e = typeMsg(name, value, int)
        raise TypeError(e)
    if self.M < 1 or self.nRealizations < 1 or self.masterSeed < 0:
      e = """Expected M >= 1, nRealizations >= 1 and masterSeed >= 0, but 
      received M=%d, nRealizations=%d and masterSeed=%d!"""
      values = (self.M, self.nRealizations, self.masterSeed)
      raise ValueError(monoSpace(e % values))
    if not self.sigma2 > 0 or not self.channelGain > 0:
      e = """The noise power and channel gain must be positive, but 
      received sigma2=%s and channelGain=%s!"""
      raise ValueError(monoSpace(e % (self.sigma2, self.channelGain)))
    if self.gammaSource not in GAMMA_SOURCES:
      e = """gammaSource must be one of %s, but received '%s'!"""
      raise ValueError(monoSpace(e % (GAMMA_SOURCES, self.gammaSource)))
    if self.sbsPower is not None:
      powers = self.sbsPower
      if isinstance(powers, (int, float)):
        powers = (powers, powers)
      powers = tuple(float(p) for p in powers)
      if len(powers) != 2 or min(powers) <= 0:
        e = """sbsPower must be positive or a pair of positive values, 
        but received %s!"""
        raise ValueError(monoSpace(e % str(self.sbsPower)))
      object.__setattr__(self, 'sbsPower', powers)

  @property
  def dim(self) -> int:
    """Number of BS antennas, 2M."""
    return 2 * self.M

  def sbsPowers(self) -> tuple[float, float]:
    """Returns (P_S1, P_S2). Without an explicit value, P_S/σ² is the
    largest wired downlink SNR, max_i(2^{R_Di} - 1), with the MS-SBS
    channel gain normalised to 1."""
    if self.sbsPower is not None:
      return self.sbsPower
    snr = max(snrFromRate(rd) for rd in self.rates.downlink)
    power = self.sigma2 * snr if snr > 0 else self.sigma2
    return power, power

  def withDownlink(self, downlink: float) -> Self:
    """Returns a copy with both downlink rates replaced."""
    return replace(self, rates=self.rates.withDownlink(downlink))
