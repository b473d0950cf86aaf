"""Phase-2 power scaling at the small cells. Each small cell i sends its
network coded message with power η_i·P_Si, and the base station decodes
both messages as a two-sender SIMO multiple access channel:

  minimize    η1·P_S1 + η2·P_S2
  subject to  R_Di <= log₂(1 + η_i P_Si ‖h_i‖² / σ²),   i = 1, 2
              R_D1 + R_D2 <= log₂|I + (η1 P_S1 H1 + η2 P_S2 H2) / σ²|
              η1 >= 1, η2 >= 1

With equal powers this is the minimization of η1 + η2. The individual
constraints reduce to lower bounds a_i on η_i. The feasible set is the
superlevel set of a concave function, so a corner check followed by a
one dimensional search along the sum-rate boundary is globally
optimal."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from icecream import ic
from scipy.optimize import bisect, minimize_scalar
from vistutils.text import monoSpace

from wewire.channel import ChannelRealization
from wewire.core import SolverFailure, checkNonZero, logDet2Psd, norm2
from wewire.core import outer
from wewire.rates import RateRequirements
from wewire.sdp import SolverStatus

ic.configureOutput(includeContext=True)

ETA_MAX = 1e6
BOUNDARY_XTOL = 1e-10
ACTIVE_SLACK = 1e-8


def _powerPair(sbsPower: float | tuple[float, float]) -> tuple[float, float]:
  """Returns the SBS powers as a validated pair."""
  if isinstance(sbsPower, (int, float)):
    pair = (float(sbsPower), float(sbsPower))
  else:
    pair = tuple(float(p) for p in sbsPower)
  if len(pair) != 2 or min(pair) <= 0 or not np.all(np.isfinite(pair)):
    e = """The SBS powers must be one positive value or a pair of them, 
    but received: %s!"""
    raise ValueError(monoSpace(e % str(sbsPower)))
  return pair[0], pair[1]


@dataclass(frozen=True)
class EtaSolution:
  """The power scaling factors η_i >= 1 of the two small cells and the
  power spent beyond the wired baseline,
  extraPower = (η1 - 1)·P_S1 + (η2 - 1)·P_S2."""

  eta1: float
  eta2: float
  extraPower: float
  activeConstraints: frozenset[str] = field(default_factory=frozenset)
  status: SolverStatus = SolverStatus.OPTIMAL

  @property
  def etaSum(self) -> float:
    """η1 + η2."""
    return self.eta1 + self.eta2

  def record(self, seedId: int = None) -> dict[str, Any]:
    """Returns a JSON compatible record."""
    return {
      'seed_id': seedId,
      'eta1': self.eta1,
      'eta2': self.eta2,
      'extra_power': self.extraPower,
      'active': sorted(self.activeConstraints),
      'status': str(self.status),
    }


def individualEtaBounds(ch: ChannelRealization,
                        rates: RateRequirements,
                        sbsPower: float | tuple[float, float],
                        sigma2: float) -> tuple[float, float]:
  """Returns a_i = max(1, σ²(2^{R_Di} - 1) / (P_Si ‖h_i‖²)). H_i has rank
  one, so log₂|I + c H_i| equals log₂(1 + c‖h_i‖²)."""
  powers = _powerPair(sbsPower)
  out = []
  for h, rate, power in zip(ch.channels, rates.downlink, powers):
    checkNonZero(h)
    need = sigma2 * (2.0 ** rate - 1.0) / (power * norm2(h))
    out.append(max(1.0, need))
  return out[0], out[1]


def sumRateValue(eta1: float,
                 eta2: float,
                 ch: ChannelRealization,
                 sbsPower: float | tuple[float, float],
                 sigma2: float,
                 closedForm: bool = None) -> float:
  """Returns log₂|I + (η1 P_S1 H1 + η2 P_S2 H2) / σ²|. For two antennas
  the determinant is evaluated in the closed form
  (1 + c1‖h1‖²)(1 + c2‖h2‖²) - c1 c2 |h1ᴴh2|²."""
  P1, P2 = _powerPair(sbsPower)
  c1, c2 = eta1 * P1 / sigma2, eta2 * P2 / sigma2
  h1, h2 = ch.channels
  useClosed = ch.dim == 2 if closedForm is None else closedForm
  if useClosed:
    n1, n2 = norm2(h1), norm2(h2)
    cross = abs(np.vdot(h1, h2)) ** 2
    det = (1 + c1 * n1) * (1 + c2 * n2) - c1 * c2 * cross
    return float(np.log2(max(det, 1.0)))
  A = np.eye(ch.dim) + c1 * outer(h1) + c2 * outer(h2)
  return logDet2Psd(A)


def _activeConstraints(eta: tuple[float, float],
                       bounds: tuple[float, float],
                       sumSlack: float) -> frozenset[str]:
  """Names of the constraints holding with equality at η."""
  active = set()
  for i in range(2):
    if eta[i] - 1.0 <= ACTIVE_SLACK:
      active.add('eta%d_floor' % (i + 1))
    if bounds[i] > 1.0 and eta[i] - bounds[i] <= ACTIVE_SLACK * bounds[i]:
      active.add('rate%d' % (i + 1))
  if abs(sumSlack) <= ACTIVE_SLACK:
    active.add('sum_rate')
  return frozenset(active)


def solveEta(ch: ChannelRealization,
             rates: RateRequirements,
             sbsPower: float | tuple[float, float],
             sigma2: float) -> EtaSolution:
  """Minimizes η1·P_S1 + η2·P_S2 over the rate region of the base
  station. Among several minimizers the one with the smallest
  max(η1, η2) is returned."""
  powers = _powerPair(sbsPower)
  a1, a2 = individualEtaBounds(ch, rates, powers, sigma2)
  target = float(sum(rates.downlink))

  def sumRate(eta1: float, eta2: float) -> float:
    """Sum-rate capacity at the scaling factors."""
    return sumRateValue(eta1, eta2, ch, powers, sigma2)

  def finish(eta1: float, eta2: float) -> EtaSolution:
    """Builds the solution at the chosen point."""
    extra = powers[0] * (eta1 - 1.0) + powers[1] * (eta2 - 1.0)
    slack = sumRate(eta1, eta2) - target
    active = _activeConstraints((eta1, eta2), (a1, a2), slack)
    return EtaSolution(eta1, eta2, extra, active)

  if sumRate(a1, a2) >= target:
    return finish(a1, a2)
  if sumRate(ETA_MAX, a2) < target:
    e = """The sum rate %.6g cannot be reached with η1 below %.0e!"""
    raise SolverFailure(monoSpace(e % (target, ETA_MAX)))

  def boundaryEta2(eta1: float) -> float:
    """Smallest η2 >= a2 on or above the sum-rate boundary."""
    if sumRate(eta1, a2) >= target:
      return a2
    if sumRate(eta1, ETA_MAX) < target:
      return np.inf
    return bisect(lambda e2: sumRate(eta1, e2) - target, a2, ETA_MAX,
                  xtol=BOUNDARY_XTOL)

  high = bisect(lambda e1: sumRate(e1, a2) - target, a1, ETA_MAX,
                xtol=BOUNDARY_XTOL)
  low = a1
  if sumRate(a1, ETA_MAX) < target:
    low = bisect(lambda e1: sumRate(e1, ETA_MAX) - target, a1, high,
                 xtol=BOUNDARY_XTOL)

  def cost(eta1: float) -> float:
    """Weighted power along the boundary."""
    return powers[0] * eta1 + powers[1] * boundaryEta2(eta1)

  result = minimize_scalar(cost, bounds=(low, high), method='bounded',
                           options={'xatol': BOUNDARY_XTOL * max(1.0,
                                                                 high)})
  best = min([low, high, float(result.x)], key=cost)
  optimum = cost(best)
  margin = ACTIVE_SLACK * (1.0 + abs(optimum))

  def excess(eta1: float) -> float:
    """Cost above the optimum, offset by the tie margin."""
    return cost(eta1) - optimum - margin

  left = low if excess(low) <= 0 else bisect(excess, low, best,
                                             xtol=BOUNDARY_XTOL)
  right = high if excess(high) <= 0 else bisect(excess, best, high,
                                                xtol=BOUNDARY_XTOL)

  def balance(eta1: float) -> float:
    """Difference between the two scaling factors on the boundary."""
    return eta1 - boundaryEta2(eta1)

  if right - left > BOUNDARY_XTOL:
    if balance(left) >= 0:
      best = left
    elif balance(right) <= 0:
      best = right
    else:
      best = bisect(balance, left, right, xtol=BOUNDARY_XTOL)
  eta2 = boundaryEta2(best)
  if not np.isfinite(eta2):
    e = """No boundary point was found for η1=%.6g!"""
    raise SolverFailure(monoSpace(e % best))
  return finish(float(best), float(eta2))
