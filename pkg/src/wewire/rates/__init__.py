"""The 'wewire.rates' package provides the rate model: the wired
reference rates, the private/common split of the downlink messages, the
β coefficients and the multiple access feasibility checks at the small
cells."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from ._rate_requirements import RateRequirements, SplitFactors
from ._rate_algebra import snrFromRate, rateFromSnr, splitRates
from ._rate_algebra import BetaCoefficients, betaCoefficients
from ._rate_algebra import macSlacks, macFeasible
