"""The 'wewire.app' package provides the configuration layer and the
command line front end."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from ._wew_settings import DEFAULT_CONFIG, WewSettings
from ._cli import COMMANDS, VerificationFailure, buildParser, main
