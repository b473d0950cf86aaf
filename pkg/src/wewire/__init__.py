"""wewire computes the powers needed to run a wireless in-band backhaul
as if it were a wired one: zero forcing and common beamforming at the
base station, network coded relaying at the small cells, and the Monte
Carlo experiment comparing the transmission schemes."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

__version__ = '0.1.0'
