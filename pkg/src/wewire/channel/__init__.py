"""The 'wewire.channel' package provides the scenario configuration and
the seeded generation of channel realizations."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from ._scenario_config import ScenarioConfig, GAMMA_SOURCES
from ._channel_realization import ChannelRealization
from ._sampling import realizationStream, deriveLinkSnrs, sampleRayleigh
from ._channel_csv import channelCsvHeader, channelCsvRow, writeChannelCsv
