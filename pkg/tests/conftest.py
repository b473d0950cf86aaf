"""Shared fixtures for the wewire test suite."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import numpy as np
import pytest
from icecream import ic

from wewire.channel import ChannelRealization, ScenarioConfig
from wewire.rates import RateRequirements

ic.disable()


@pytest.fixture
def orthonormal() -> ChannelRealization:
  """Orthonormal unit channels with γ_M = (1, 1)."""
  return ChannelRealization((1, 0), (0, 1), 1.0, 1.0)


@pytest.fixture
def identical() -> ChannelRealization:
  """Identical unit channels with γ_M = (1, 1)."""
  return ChannelRealization((1, 0), (1, 0), 1.0, 1.0)


@pytest.fixture
def skewed() -> ChannelRealization:
  """h1 = (1, 0) and h2 = (1, 1)/√2 with γ_M = (1, 1)."""
  return ChannelRealization((1, 0), np.array([1, 1]) / np.sqrt(2), 1.0, 1.0)


@pytest.fixture
def rates22() -> RateRequirements:
  """R_U = (1, 1) and R_D = (2, 2)."""
  return RateRequirements.symmetric(1.0, 2.0)


@pytest.fixture
def smallScenario() -> ScenarioConfig:
  """A small scenario for quick sweeps."""
  return ScenarioConfig(nRealizations=4, masterSeed=7)
