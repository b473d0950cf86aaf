"""ConicSolution carries the outcome of a conic solve: the status, the
primal point, the dual multipliers acting as certificate, and the
diagnostics of the final iterate."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from numpy.typing import NDArray

from wewire.core import CMat


class SolverStatus(Enum):
  """Terminal states of the interior point solver."""

  OPTIMAL = 'Optimal'
  INFEASIBLE = 'Infeasible'
  UNBOUNDED = 'Unbounded'
  MAX_ITERATIONS = 'MaxIterations'

  def __str__(self) -> str:
    """String representation"""
    return self.value


@dataclass(frozen=True, eq=False)
class ConicSolution:
  """The solution of a ConicProblem.

    p, W: the primal point (W Hermitian PSD, empty without a matrix block)
    dual: multipliers y >= 0 of the constraints; for an infeasible
      problem, the improving ray certifying infeasibility
    primalResidual: largest constraint violation relative to 1 + |b_j|
    dualResidual: largest dual residual relative to the cost scale"""

  status: SolverStatus
  p: NDArray
  W: CMat
  primalObjective: float
  dualObjective: float
  iterations: int
  dual: NDArray
  primalResidual: float = 0.0
  dualResidual: float = 0.0

  @property
  def gap(self) -> float:
    """Nonnegative duality gap."""
    return max(0.0, self.primalObjective - self.dualObjective)

  @property
  def relativeGap(self) -> float:
    """Duality gap relative to the objective magnitudes."""
    scale = 1.0 + abs(self.primalObjective) + abs(self.dualObjective)
    return self.gap / scale

  @property
  def isOptimal(self) -> bool:
    """True if the solver reached the optimal status."""
    return self.status is SolverStatus.OPTIMAL
