"""ConicProblem describes a linear objective over nonnegative scalar
variables p and one Hermitian PSD matrix variable W, subject to linear
inequalities

  a_jᵀp + Tr(S_j W) >= b_j,   j = 1, ..., m.

All matrices are Hermitian of size psdDim. A problem without a matrix
block has psdDim equal to 0."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
from numpy.typing import NDArray
from vistutils.text import monoSpace

from wewire.core import CMat, hermitian


def _finiteVector(name: str, values: Any, size: int) -> NDArray:
  """Returns the values as a finite float vector of the given size."""
  out = np.asarray(values if values is not None else np.zeros(size),
                   dtype=np.float64).reshape(-1)
  if out.size != size or not np.all(np.isfinite(out)):
    e = """'%s' must hold %d finite values, but received %s!"""
    raise ValueError(monoSpace(e % (name, size, str(values))))
  return out


def _finiteHermitian(name: str, values: Any, dim: int) -> CMat:
  """Returns the values as a finite Hermitian matrix of the given size."""
  if values is None:
    return np.zeros((dim, dim), dtype=np.complex128)
  out = np.asarray(values, dtype=np.complex128)
  if out.shape != (dim, dim) or not np.all(np.isfinite(out)):
    e = """'%s' must be a finite %dx%d matrix, but received shape %s!"""
    raise ValueError(monoSpace(e % (name, dim, dim, str(out.shape))))
  if not np.allclose(out, out.conj().T, rtol=0, atol=1e-12 * (
      1 + np.abs(out).max(initial=0.0))):
    e = """'%s' must be Hermitian!"""
    raise ValueError(monoSpace(e % name))
  return hermitian(out)


@dataclass(frozen=True, eq=False)
class LinearConstraint:
  """One constraint a·p + Tr(S W) >= bound."""

  scalarCoeffs: NDArray
  matrix: CMat
  bound: float

  def isVacuous(self) -> bool:
    """True when the left hand side is identically zero."""
    return not np.any(self.scalarCoeffs) and not np.any(self.matrix)

  def evaluate(self, p: NDArray, W: CMat) -> float:
    """Returns the left hand side at (p, W)."""
    value = float(np.dot(self.scalarCoeffs, p))
    if self.matrix.size:
      value += float(np.real(np.sum(self.matrix * W.T)))
    return value


@dataclass(frozen=True, eq=False)
class ConicProblem:
  """Minimize cᵀp + Tr(C W) over p >= 0, W ⪰ 0 subject to the linear
  constraints."""

  nScalars: int
  psdDim: int
  scalarCost: NDArray = None
  matrixCost: CMat = None
  constraints: tuple[LinearConstraint, ...] = field(default=())

  def __post_init__(self) -> None:
    """Validates and normalises the problem data."""
    if self.nScalars < 0 or self.psdDim < 0:
      e = """Expected nonnegative sizes, but received nScalars=%d and 
      psdDim=%d!"""
      raise ValueError(monoSpace(e % (self.nScalars, self.psdDim)))
    cost = _finiteVector('scalarCost', self.scalarCost, self.nScalars)
    object.__setattr__(self, 'scalarCost', cost)
    C = _finiteHermitian('matrixCost', self.matrixCost, self.psdDim)
    object.__setattr__(self, 'matrixCost', C)
    constraints = []
    for j, constraint in enumerate(self.constraints):
      a = _finiteVector('constraint %d scalars' % j,
                        constraint.scalarCoeffs, self.nScalars)
      S = _finiteHermitian('constraint %d matrix' % j, constraint.matrix,
                           self.psdDim)
      bound = float(constraint.bound)
      if not np.isfinite(bound):
        e = """Constraint %d has a non-finite bound!"""
        raise ValueError(monoSpace(e % j))
      constraints.append(LinearConstraint(a, S, bound))
    object.__setattr__(self, 'constraints', tuple(constraints))

  @classmethod
  def build(cls,
            scalarCost: Sequence[float],
            matrixCost: CMat | None,
            rows: Sequence[tuple[Sequence[float], CMat | None, float]],
            ) -> ConicProblem:
    """Builds a problem from (scalarCoeffs, matrix, bound) rows. The
    matrix dimension is taken from the matrix cost, and a missing row
    matrix means no dependence on W."""
    nScalars = len(scalarCost)
    psdDim = 0 if matrixCost is None else int(np.shape(matrixCost)[0])
    constraints = [LinearConstraint(a, S, b) for a, S, b in rows]
    return cls(nScalars, psdDim, scalarCost, matrixCost, tuple(constraints))

  @property
  def nConstraints(self) -> int:
    """Number of constraints."""
    return len(self.constraints)

  def bounds(self) -> NDArray:
    """Returns the vector of bounds b."""
    return np.array([c.bound for c in self.constraints], dtype=np.float64)

  def objectiveValue(self, p: NDArray, W: CMat) -> float:
    """Returns cᵀp + Tr(C W)."""
    value = float(np.dot(self.scalarCost, p))
    if self.psdDim:
      value += float(np.real(np.sum(self.matrixCost * W.T)))
    return value

  def constraintValues(self, p: NDArray, W: CMat) -> NDArray:
    """Returns the left hand sides of all constraints at (p, W)."""
    return np.array([c.evaluate(p, W) for c in self.constraints])

  def violations(self, p: NDArray, W: CMat) -> NDArray:
    """Returns max(0, b_j - lhs_j) / (1 + |b_j|) for every constraint."""
    if not self.nConstraints:
      return np.zeros(0)
    b = self.bounds()
    lhs = self.constraintValues(p, W)
    return np.maximum(0.0, b - lhs) / (1.0 + np.abs(b))
