"""Tests of the interior point solver for conic problems with scalar
and Hermitian PSD variables."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import io

import numpy as np
import pytest
from numpy.testing import assert_allclose

from wewire.core import isPsd, outer
from wewire.sdp import ConicProblem, ConicSolver, SolverStatus, dumpProblem
from wewire.sdp import loadProblem, solveConic


def _multicast(channels, bounds) -> ConicProblem:
  """minimize Tr(W) subject to hᵢᴴWhᵢ >= bᵢ."""
  dim = len(channels[0])
  rows = [((), outer(h), b) for h, b in zip(channels, bounds)]
  return ConicProblem.build((), np.eye(dim), rows)


class TestConicSolver:
  """Optimality, infeasibility and duality of solved problems."""

  def test_alignment(self) -> None:
    """A single unit channel is served by W = hhᴴ at power 1."""
    h = np.array([1, 1j]) / np.sqrt(2)
    solution = solveConic(_multicast([h], [1.0]))
    assert solution.status is SolverStatus.OPTIMAL
    assert solution.primalObjective == pytest.approx(1.0, abs=1e-6)
    assert_allclose(solution.W, outer(h), atol=1e-3)

  def test_scalarRatio(self) -> None:
    """Without a matrix block, p g >= b gives p = b/g."""
    problem = ConicProblem.build([1.0], None, [([4.0], None, 6.0)])
    solution = solveConic(problem)
    assert solution.isOptimal
    assert solution.p[0] == pytest.approx(1.5, abs=1e-6)
    assert solution.W.shape == (0, 0)

  def test_mixedVariables(self) -> None:
    """Scalars and the matrix can share a constraint."""
    h = np.array([1.0, 0.0])
    rows = [([2.0], outer(h), 4.0), ([1.0], None, 1.0)]
    solution = solveConic(ConicProblem.build([1.0], np.eye(2), rows))
    assert solution.isOptimal
    assert solution.p[0] == pytest.approx(2.0, abs=1e-5)
    assert solution.primalObjective == pytest.approx(2.0, abs=1e-5)

  def test_vacuousRow(self) -> None:
    """Tr(0 W) >= 1 cannot hold."""
    problem = ConicProblem.build((), np.eye(2), [((), None, 1.0)])
    solution = solveConic(problem)
    assert solution.status is SolverStatus.INFEASIBLE
    assert solution.dual[0] > 0

  def test_vacuousRowDropped(self) -> None:
    """Tr(0 W) >= 0 holds trivially and does not affect the optimum."""
    h = np.array([1.0, 0.0])
    rows = [((), None, 0.0), ((), outer(h), 2.0)]
    solution = solveConic(ConicProblem.build((), np.eye(2), rows))
    assert solution.isOptimal
    assert solution.primalObjective == pytest.approx(2.0, abs=1e-5)
    assert solution.dual[0] == 0

  def test_contradiction(self) -> None:
    """p >= 1 together with -p >= 0 is infeasible."""
    rows = [([1.0], None, 1.0), ([-1.0], None, 0.0)]
    solution = solveConic(ConicProblem.build([1.0], None, rows))
    assert solution.status is SolverStatus.INFEASIBLE
    assert np.all(solution.dual >= 0)

  def test_randomMulticast(self) -> None:
    """Random two-channel instances are solved to feasibility with a
    small duality gap, and weak duality holds."""
    rng = np.random.default_rng(1)
    for _ in range(10):
      H = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
      problem = _multicast(list(H), rng.uniform(1, 20, 2))
      solution = solveConic(problem)
      assert solution.isOptimal
      assert solution.primalResidual <= 1e-6
      assert solution.relativeGap <= 1e-6
      assert solution.dualObjective <= solution.primalObjective + 1e-6
      assert isPsd(solution.W)

  @pytest.mark.parametrize('count', [10, pytest.param(100,
                                                      marks=pytest.mark.slow)])
  def test_beamGrid(self, count: int) -> None:
    """No unit beam w = (cos θ, sin θ e^{iφ}) on a 200 by 200 grid,
    scaled to meet both bounds, is cheaper than the solver's optimum."""
    theta = np.linspace(0, np.pi / 2, 200)
    phi = np.linspace(0, 2 * np.pi, 200, endpoint=False)
    theta, phi = [a.ravel() for a in np.meshgrid(theta, phi)]
    beams = np.stack([np.cos(theta), np.sin(theta) * np.exp(1j * phi)])
    rng = np.random.default_rng(count)
    for _ in range(count):
      H = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
      bounds = rng.uniform(1, 20, 2)
      received = np.abs(H.conj() @ beams) ** 2
      oracle = float(np.min(np.max(bounds[:, None] / received, axis=0)))
      solution = solveConic(_multicast(list(H), bounds))
      assert solution.relativeGap <= 1e-6
      assert solution.primalResidual <= 1e-6
      assert solution.primalObjective <= oracle * (1 + 1e-6) + 1e-6

  @pytest.mark.parametrize('factor', [0.25, 3.7])
  def test_boundScaling(self, factor: float) -> None:
    """Scaling every bound scales the optimum by the same factor."""
    rng = np.random.default_rng(4)
    for _ in range(5):
      H = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
      bounds = rng.uniform(1, 20, 2)
      unit = solveConic(_multicast(list(H), bounds)).primalObjective
      scaled = solveConic(_multicast(list(H), factor * bounds))
      assert scaled.primalObjective == pytest.approx(factor * unit,
                                                     rel=1e-6)


class TestSolverOptions:
  """Keyword options of the solver."""

  def test_aliases(self) -> None:
    """Options accept their aliases."""
    solver = ConicSolver(eps=1e-6, max_iter=50)
    assert solver._getTol() == 1e-6
    assert solver._getMaxIterations() == 50

  def test_defaults(self) -> None:
    """Unset options fall back to the class defaults."""
    solver = ConicSolver()
    assert solver._getTol() == 1e-7
    assert solver._getMaxIterations() == 200

  def test_invalid(self) -> None:
    """Out of range and mistyped options are rejected."""
    with pytest.raises(ValueError):
      ConicSolver(tol=0.0)
    with pytest.raises(TypeError):
      ConicSolver(maxIterations=1.5)

  def test_iterationCap(self) -> None:
    """A single iteration cannot reach the optimum."""
    h = np.array([1.0, 0.0])
    solution = ConicSolver(maxIterations=1).solve(_multicast([h], [5.0]))
    assert solution.status is not SolverStatus.OPTIMAL


class TestProblemIO:
  """JSON lines dump and replay of problems."""

  def test_replay(self) -> None:
    """A dumped problem loads back with identical data and optimum."""
    rng = np.random.default_rng(2)
    H = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    problem = _multicast(list(H), [3.0, 5.0])
    stream = io.StringIO()
    dumpProblem(problem, stream, seedId=4)
    lines = stream.getvalue().splitlines()
    assert len(lines) == 1 + problem.nConstraints
    loaded = loadProblem(lines)
    assert loaded.psdDim == problem.psdDim
    for a, b in zip(loaded.constraints, problem.constraints):
      assert_allclose(a.matrix, b.matrix)
      assert a.bound == b.bound
    first, second = solveConic(problem), solveConic(loaded)
    assert first.primalObjective == pytest.approx(second.primalObjective)

  def test_missingHeader(self) -> None:
    """Lines without a problem record are rejected."""
    with pytest.raises(ValueError):
      loadProblem(['{"kind": "solution"}'])
