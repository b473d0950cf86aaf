"""The 'wewire.beamforming' package provides the zero forcing beamformers
of the private streams."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from ._zero_forcing import BeamformerSet, collinearity, effectiveGains
from ._zero_forcing import zfBeamformers
