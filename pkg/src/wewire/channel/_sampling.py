"""Seeded generation of Rayleigh faded channel realizations. Every
realization draws from its own numpy substream, derived from the pair
(masterSeed, seedId), so realizations can be generated in any order or
in parallel with identical results."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import numpy as np
from numpy.random import Generator, SeedSequence

from wewire.channel import ScenarioConfig, ChannelRealization
from wewire.rates import snrFromRate


def realizationStream(masterSeed: int, seedId: int) -> Generator:
  """Returns the random generator owned by one realization."""
  return np.random.default_rng(SeedSequence([int(masterSeed), int(seedId)]))


def deriveLinkSnrs(config: ScenarioConfig) -> tuple[float, ...]:
  """Returns (γ_M1, γ_M2, γ_S1, γ_S2). The MS-SBS SNR follows from the
  uplink rate, γ_Mi = 2^{R_Ui} - 1, unless the configuration selects the
  downlink rate. The wired downlink SNR is γ_Si = 2^{R_Di} - 1."""
  rates = config.rates
  source = rates.uplink if config.gammaSource == 'uplink' else rates.downlink
  gammaM = [snrFromRate(r) for r in source]
  gammaS = [snrFromRate(r) for r in rates.downlink]
  return (*gammaM, *gammaS)


def sampleRayleigh(seedId: int, config: ScenarioConfig) -> ChannelRealization:
  """Draws h1 and h2 with independent 𝒞𝒩(0, 1) entries, scaled by the
  square root of the configured channel gain. The MS-SBS SNRs are set by
  deriveLinkSnrs."""
  rng = realizationStream(config.masterSeed, seedId)
  shape = (2, config.dim)
  draws = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
  draws *= np.sqrt(0.5)
  gammaM1, gammaM2, _, _ = deriveLinkSnrs(config)
  ch = ChannelRealization(draws[0], draws[1], gammaM1, gammaM2, seedId)
  if config.channelGain == 1.0:
    return ch
  return ch.scaled(np.sqrt(config.channelGain))
