"""BsPowerSolution holds the phase-1 power allocation at the base
station: the private powers P1 and P2 on the zero forcing beams and the
covariance W_C of the common beam."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Any

import numpy as np

from wewire.core import CMat, CVec
from wewire.rates import SplitFactors
from wewire.sdp import SolverStatus
from wewire.power import Scheme


@dataclass(frozen=True, eq=False)
class BsPowerSolution:
  """The outcome of a phase-1 power minimization.

  totalPower equals P1 + P2 + Tr(W_C). When the common covariance has
  rank above one, totalPower is a lower bound on the power of any rank
  one common beam, and achievablePower holds the power of the best
  randomized rank one beam with the private powers re-balanced."""

  scheme: Scheme
  alpha: SplitFactors
  P1: float
  P2: float
  W: CMat
  totalPower: float
  status: SolverStatus = SolverStatus.OPTIMAL
  solverGap: float = 0.0
  rank: int = 0
  commonBeam: CVec | None = None
  achievablePower: float = None

  def __post_init__(self) -> None:
    """Freezes the covariance and fills the achievable power."""
    W = np.array(self.W, dtype=np.complex128)
    W.setflags(write=False)
    object.__setattr__(self, 'W', W)
    if self.achievablePower is None:
      object.__setattr__(self, 'achievablePower', float(self.totalPower))

  @property
  def isLowerBound(self) -> bool:
    """True when the common covariance has rank above one."""
    return self.rank > 1

  @property
  def commonPower(self) -> float:
    """Tr(W_C)."""
    return float(np.real(np.trace(self.W))) if self.W.size else 0.0

  @property
  def privatePowers(self) -> tuple[float, float]:
    """The pair (P1, P2)."""
    return self.P1, self.P2

  def relabel(self, scheme: Scheme) -> BsPowerSolution:
    """Returns a copy reported under another scheme."""
    return dataclasses.replace(self, scheme=scheme)

  def record(self, seedId: int = None) -> dict[str, Any]:
    """Returns the JSON compatible per-solve debug record."""
    return {
      'seed_id': seedId,
      'scheme': str(self.scheme),
      'alpha': [self.alpha.alpha1, self.alpha.alpha2],
      'P1': self.P1,
      'P2': self.P2,
      'trace_W': self.commonPower,
      'status': str(self.status),
      'gap': self.solverGap,
      'rank': self.rank,
      'achievable_power': self.achievablePower,
    }

  def __str__(self) -> str:
    """String representation"""
    return '%s(α=%s, P1=%.6g, P2=%.6g, Tr(W)=%.6g, total=%.6g)' % (
      self.scheme, self.alpha, self.P1, self.P2, self.commonPower,
      self.totalPower)
