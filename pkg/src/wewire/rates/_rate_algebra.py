"""Rate and SNR algebra of the wired reference link, the private/common
message split and the SNR thresholds (β coefficients) implied by the
rate constraints at each small cell."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from wewire.core import RATE_SLACK
from wewire.rates import RateRequirements, SplitFactors


def snrFromRate(rate: float) -> float:
  """Inverts R = log₂(1 + γ), returning γ = 2^R - 1."""
  return float(np.exp2(rate) - 1.0)


def rateFromSnr(snr: float) -> float:
  """Returns the single-user capacity log₂(1 + γ)."""
  return float(np.log2(1.0 + snr))


def splitRates(alpha: SplitFactors,
               rates: RateRequirements) -> tuple[float, ...]:
  """Returns (R_P1, R_C1, R_P2, R_C2) with R_Pi = α_i R_Di and
  R_Ci = R_Di - R_Pi. The two parts sum back to R_Di up to one rounding
  step, a relative error of at most 2^-52."""
  out = []
  for a, rd in zip(alpha, rates.downlink):
    private = a * rd
    out.extend([private, rd - private])
  return tuple(out)


@dataclass(frozen=True)
class BetaCoefficients:
  """The SNR thresholds of the private, common and sum-rate constraints
  at the two small cells, in power units scaled by the noise power."""

  beta1: tuple[float, float]
  beta2: tuple[float, float]
  beta3: tuple[float, float]

  def commonNeeded(self) -> bool:
    """True when a common beam is required at all, that is, when some
    common rate is positive or the sum-rate constraint exceeds the
    private constraint at some small cell."""
    if any(b > 0 for b in self.beta2):
      return True
    return any(b3 > b1 for b1, b3 in zip(self.beta1, self.beta3))


def betaCoefficients(rates: RateRequirements,
                     alpha: SplitFactors,
                     gammaM: tuple[float, float],
                     sigma2: float) -> BetaCoefficients:
  """Returns the β coefficients

    β1i = σ²(2^{R_Pi} - 1)(1 + γ_Mi)
    β2i = σ²(2^{R_Ci + R_Cj} - 1)(1 + γ_Mi)
    β3i = σ²(2^{R_Pi + R_Ci + R_Cj} - 1)(1 + γ_Mi)

  for i = 1, 2 and j ≠ i."""
  rp1, rc1, rp2, rc2 = splitRates(alpha, rates)
  private, common = (rp1, rp2), rc1 + rc2
  beta1, beta2, beta3 = [], [], []
  for i in range(2):
    scale = sigma2 * (1.0 + gammaM[i])
    beta1.append(scale * snrFromRate(private[i]))
    beta2.append(scale * snrFromRate(common))
    beta3.append(scale * snrFromRate(private[i] + common))
  return BetaCoefficients(tuple(beta1), tuple(beta2), tuple(beta3))


def macSlacks(gammaP: tuple[float, float],
              gammaC: tuple[float, float],
              gammaM: tuple[float, float],
              rates: RateRequirements,
              alpha: SplitFactors) -> list[tuple[float, float, float]]:
  """Returns, per small cell, the slack in bits of the private, common
  and sum-rate constraints of its multiple access region. The uplink
  signal is treated as noise through the (1 + γ_Mi) denominator."""
  rp1, rc1, rp2, rc2 = splitRates(alpha, rates)
  private, common = (rp1, rp2), rc1 + rc2
  out = []
  for i in range(2):
    noise = 1.0 + gammaM[i]
    capP = rateFromSnr(gammaP[i] / noise)
    capC = rateFromSnr(gammaC[i] / noise)
    capS = rateFromSnr((gammaP[i] + gammaC[i]) / noise)
    out.append((capP - private[i], capC - common,
                capS - private[i] - common))
  return out


def macFeasible(gammaP: tuple[float, float],
                gammaC: tuple[float, float],
                gammaM: tuple[float, float],
                rates: RateRequirements,
                alpha: SplitFactors,
                slack: float = None) -> tuple[bool, bool]:
  """Returns per small cell whether the private, common and sum-rate
  constraints all hold with slack no less than -slack bits."""
  tol = RATE_SLACK if slack is None else slack
  slacks = macSlacks(gammaP, gammaC, gammaM, rates, alpha)
  return tuple(bool(min(s) >= -tol) for s in slacks)
