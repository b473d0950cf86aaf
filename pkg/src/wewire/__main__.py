"""Runs the 'wewire' command line front end."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import sys

from wewire.app import main

if __name__ == '__main__':
  sys.exit(main())
