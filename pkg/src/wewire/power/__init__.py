"""The 'wewire.power' package solves the two power minimizations of the
emulated wire: the phase-1 beamforming power at the base station and the
phase-2 power scaling at the small cells."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from ._scheme import Scheme
from ._bs_power_solution import BsPowerSolution
from ._rank_one import rankOf, principalBeam, extractRank1
from ._bs_power import BsPowerProblem, solveFixedAlpha, solveZfOnly
from ._bs_power import solveCommonOnly, optimizeAlpha, solveRandomAlpha
from ._bs_power import solveSingleCell
from ._sbs_power import EtaSolution, individualEtaBounds, sumRateValue
from ._sbs_power import solveEta
from ._solve_log import SolveLog
