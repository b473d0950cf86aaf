"""ConicSolver implements an infeasible primal-dual path following
interior point method for ConicProblem instances.

The complex problem is solved in its real embedding: the Hermitian
variable W of size n becomes a real symmetric X of size 2n, and every
Hermitian coefficient S becomes realEmbedding(S) / 2 so that inner
products are preserved. Every inequality receives a nonnegative slack so
that the solver works on the equality form

  a_jᵀp + <S_j, X> - s_j = b_j.

Search directions use the HKM scaling with a Mehrotra predictor
corrector step. A problem that fails to converge is handed to a
feasibility phase which minimizes a single shift variable added to all
constraints; a strictly positive optimal shift proves infeasibility."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from icecream import ic
from numpy.typing import NDArray
from scipy.linalg import LinAlgError, cho_factor, cho_solve, eigh, lstsq
from vistutils.parse import maybe
from vistutils.text import monoSpace, stringList
from vistutils.waitaminute import typeMsg

from wewire.core import complexFromEmbedding, realEmbedding
from wewire.sdp import ConicProblem, ConicSolution, SolverStatus

ic.configureOutput(includeContext=True)


def _sym(A: NDArray) -> NDArray:
  """Symmetric part of a real matrix."""
  return (A + A.T) / 2


def _maxStep(v: NDArray, dv: NDArray) -> float:
  """Largest step keeping v + t·dv nonnegative."""
  neg = dv < 0
  if not np.any(neg):
    return np.inf
  return float(np.min(-v[neg] / dv[neg]))


def _maxStepPsd(X: NDArray, dX: NDArray) -> float:
  """Largest step keeping X + t·dX positive semidefinite. Requires X to
  be positive definite."""
  if not X.size:
    return np.inf
  lowest = float(eigh(dX, X, eigvals_only=True)[0])
  if lowest >= 0:
    return np.inf
  return -1.0 / lowest


@dataclass
class _Iterate:
  """Mutable primal dual iterate in scaled real form."""

  x: NDArray
  X: NDArray
  y: NDArray
  z: NDArray
  Z: NDArray


class _RealForm:
  """Real embedded slack form of a ConicProblem, with the bounds divided
  by a common scale."""

  def __init__(self, problem: ConicProblem) -> None:
    m, nP, n = problem.nConstraints, problem.nScalars, problem.psdDim
    self.problem = problem
    self.m, self.nP, self.nS = m, nP, 2 * n
    self.nL = nP + m
    self.A = np.zeros((m, self.nL))
    self.c = np.zeros(self.nL)
    self.c[:nP] = problem.scalarCost
    for j, constraint in enumerate(problem.constraints):
      self.A[j, :nP] = constraint.scalarCoeffs
      self.A[j, nP + j] = -1.0
    if n:
      self.S = np.stack([realEmbedding(c.matrix) / 2
                         for c in problem.constraints]) if m else np.zeros(
        (0, 2 * n, 2 * n))
      self.C = realEmbedding(problem.matrixCost) / 2
    else:
      self.S = np.zeros((m, 0, 0))
      self.C = np.zeros((0, 0))
    b = problem.bounds()
    self.scale = max(1.0, float(np.max(np.abs(b), initial=0.0)))
    self.b = b / self.scale
    self.bAbs = np.abs(b)
    self.costScale = 1.0 + max(float(np.max(np.abs(self.c), initial=0.0)),
                               float(np.max(np.abs(self.C), initial=0.0)))

  def opA(self, Y: NDArray) -> NDArray:
    """Returns (Tr(S_j Y))_j for any square Y."""
    if not self.nS:
      return np.zeros(self.m)
    return np.einsum('jkl,lk->j', self.S, Y)

  def opAT(self, y: NDArray) -> NDArray:
    """Returns Σ y_j S_j."""
    if not self.nS:
      return np.zeros((0, 0))
    return np.einsum('j,jkl->kl', y, self.S)

  def primalObjective(self, it: _Iterate) -> float:
    """Objective in original units."""
    value = float(self.c @ it.x)
    if self.nS:
      value += float(np.sum(self.C * it.X))
    return self.scale * value

  def dualObjective(self, it: _Iterate) -> float:
    """Dual objective in original units."""
    return self.scale * float(self.b @ it.y)

  def residuals(self, it: _Iterate) -> tuple[NDArray, NDArray, NDArray]:
    """Returns the primal, linear dual and matrix dual residuals."""
    rp = self.b - self.A @ it.x - self.opA(it.X)
    rdLin = self.c - self.A.T @ it.y - it.z
    Rd = self.C - self.opAT(it.y) - it.Z
    return rp, rdLin, Rd

  def recover(self, it: _Iterate) -> tuple[NDArray, NDArray]:
    """Returns p and W in original units."""
    p = self.scale * it.x[:self.nP].copy()
    if self.nS:
      W = complexFromEmbedding(self.scale * it.X)
    else:
      W = np.zeros((0, 0), dtype=np.complex128)
    return p, W


class ConicSolver:
  """ConicSolver solves ConicProblem instances. Options are given as
  keyword arguments:
    tol: relative tolerance on residuals and gap (default 1e-7)
    maxIterations: iteration cap (default 200)
    predictorCorrector: use Mehrotra correction (default True)
    verbose: log every iteration through icecream (default False)"""

  __fallback_tol__ = 1e-7
  __fallback_iterations__ = 200
  __step_fraction__ = 0.98
  __divergence__ = 1e10

  __tol__ = None
  __max_iterations__ = None
  __predictor_corrector__ = None
  __verbose__ = None

  def __init__(self, *args, **kwargs) -> None:
    tolKeys = stringList("""tol, tolerance, eps""")
    iterKeys = stringList("""maxIterations, max_iterations, max_iter""")
    pcKeys = stringList("""predictorCorrector, mehrotra""")
    verboseKeys = stringList("""verbose, debug""")
    for key in tolKeys:
      if key in kwargs:
        self._setTol(kwargs[key])
        break
    else:
      for arg in args:
        if isinstance(arg, float):
          self._setTol(arg)
          break
    for key in iterKeys:
      if key in kwargs:
        self._setMaxIterations(kwargs[key])
        break
    for key in pcKeys:
      if key in kwargs:
        self.__predictor_corrector__ = bool(kwargs[key])
        break
    for key in verboseKeys:
      if key in kwargs:
        self.__verbose__ = bool(kwargs[key])
        break

  def _setTol(self, tol: Any) -> None:
    """Setter-function for the tolerance"""
    if not isinstance(tol, (int, float)) or isinstance(tol, bool):
      raise TypeError(typeMsg('tol', tol, float))
    if not 0 < tol < 1:
      e = """The tolerance must lie in (0, 1), but received: %s!"""
      raise ValueError(monoSpace(e % str(tol)))
    self.__tol__ = float(tol)

  def _getTol(self) -> float:
    """Getter-function for the tolerance"""
    return maybe(self.__tol__, self.__fallback_tol__)

  def _setMaxIterations(self, maxIterations: Any) -> None:
    """Setter-function for the iteration cap"""
    if not isinstance(maxIterations, int) or isinstance(maxIterations,
                                                        bool):
      raise TypeError(typeMsg('maxIterations', maxIterations, int))
    if maxIterations < 1:
      e = """The iteration cap must be positive, but received: %d!"""
      raise ValueError(monoSpace(e % maxIterations))
    self.__max_iterations__ = maxIterations

  def _getMaxIterations(self) -> int:
    """Getter-function for the iteration cap"""
    return maybe(self.__max_iterations__, self.__fallback_iterations__)

  def _usePredictorCorrector(self) -> bool:
    """Getter-function for the predictor corrector flag"""
    return maybe(self.__predictor_corrector__, True)

  def _isVerbose(self) -> bool:
    """Getter-function for the verbose flag"""
    return maybe(self.__verbose__, False)

  def solve(self, problem: ConicProblem) -> ConicSolution:
    """Solves the problem. Constraints with identically zero left hand
    side are resolved before the iterations start: a nonpositive bound
    drops the row, and a positive bound proves infeasibility."""
    if not isinstance(problem, ConicProblem):
      raise TypeError(typeMsg('problem', problem, ConicProblem))
    keep, trivialDual = [], np.zeros(problem.nConstraints)
    for j, constraint in enumerate(problem.constraints):
      if constraint.isVacuous():
        if constraint.bound > 0:
          trivialDual[j] = 1.0
          return self._infeasible(problem, trivialDual, 0)
        continue
      keep.append(j)
    reduced = ConicProblem(problem.nScalars, problem.psdDim,
                           problem.scalarCost, problem.matrixCost,
                           tuple(problem.constraints[j] for j in keep))
    solution = self._iterate(reduced)
    if solution.status is not SolverStatus.OPTIMAL:
      solution = self._feasibilityPhase(reduced, solution)
    return self._expand(problem, solution, keep)

  def _expand(self, problem: ConicProblem, solution: ConicSolution,
              keep: list[int]) -> ConicSolution:
    """Maps the solution of the reduced problem back to all rows."""
    dual = np.zeros(problem.nConstraints)
    dual[keep] = solution.dual
    p, W = solution.p, solution.W
    if solution.status is SolverStatus.INFEASIBLE:
      primalResidual = solution.primalResidual
      dualObjective = solution.dualObjective
    else:
      primalResidual = float(np.max(problem.violations(p, W), initial=0.0))
      dualObjective = self._safeDualObjective(problem, dual)
    return ConicSolution(solution.status, p, W, solution.primalObjective,
                         dualObjective, solution.iterations, dual,
                         primalResidual, solution.dualResidual)

  def _infeasible(self, problem: ConicProblem, ray: NDArray,
                  iterations: int) -> ConicSolution:
    """Builds the solution reporting infeasibility with the given ray."""
    p = np.zeros(problem.nScalars)
    W = np.zeros((problem.psdDim, problem.psdDim), dtype=np.complex128)
    violation = float(np.max(problem.violations(p, W), initial=0.0))
    return ConicSolution(SolverStatus.INFEASIBLE, p, W, np.inf, np.inf,
                         iterations, ray, violation, 0.0)

  @staticmethod
  def _safeDualObjective(problem: ConicProblem, y: NDArray) -> float:
    """Returns a dual objective certified by a dual feasible point. The
    multipliers are clipped at zero and shrunk towards the origin until
    the dual constraints hold. When the origin is itself dual infeasible,
    the raw value bᵀy is returned."""
    b = problem.bounds()
    y = np.maximum(y, 0.0)
    c, C = problem.scalarCost, problem.matrixCost
    if np.any(c < 0) or (problem.psdDim and np.linalg.eigvalsh(C)[0] < 0):
      return float(b @ y)
    A = np.array([con.scalarCoeffs for con in problem.constraints]).reshape(
      problem.nConstraints, problem.nScalars)
    Y = sum((yj * con.matrix for yj, con in zip(y, problem.constraints)),
            np.zeros_like(C))
    slack = 1e-12 * (1 + float(np.max(np.abs(C), initial=0.0)))

    def feasible(theta: float) -> bool:
      """Dual feasibility of theta·y."""
      if np.any(c - theta * (A.T @ y) < -slack):
        return False
      if problem.psdDim:
        return np.linalg.eigvalsh(C - theta * Y)[0] >= -slack
      return True

    if feasible(1.0):
      return float(b @ y)
    low, high = 0.0, 1.0
    for _ in range(60):
      mid = (low + high) / 2
      if feasible(mid):
        low = mid
      else:
        high = mid
    return float(low * (b @ y))

  def _initialIterate(self, form: _RealForm) -> _Iterate:
    """Starting point with p at one, slacks and X at 1 + max|b|."""
    xi = 1.0 + float(np.max(np.abs(form.b), initial=0.0))
    x = np.ones(form.nL)
    x[form.nP:] = xi
    X = xi * np.eye(form.nS)
    zeta = form.costScale
    return _Iterate(x, X, np.zeros(form.m), zeta * np.ones(form.nL),
                    zeta * np.eye(form.nS))

  def _iterate(self, problem: ConicProblem,
               tol: float = None) -> ConicSolution:
    """Runs the path following iterations on a problem without vacuous
    rows."""
    tol = maybe(tol, self._getTol())
    form = _RealForm(problem)
    it = self._initialIterate(form)
    N = form.nL + form.nS
    status = SolverStatus.MAX_ITERATIONS
    count, dres = 0, np.inf
    rowTol = tol * (1.0 + form.bAbs) / form.scale
    for count in range(self._getMaxIterations() + 1):
      rp, rdLin, Rd = form.residuals(it)
      pobj, dobj = form.primalObjective(it), form.dualObjective(it)
      dres = max(float(np.max(np.abs(rdLin), initial=0.0)),
                 float(np.max(np.abs(Rd), initial=0.0))) / form.costScale
      relGap = abs(pobj - dobj) / (1.0 + abs(pobj) + abs(dobj))
      if self._isVerbose():
        ic(count, pobj, dobj, relGap, dres)
      if np.all(np.abs(rp) <= rowTol) and dres <= tol and relGap <= tol:
        status = SolverStatus.OPTIMAL
        break
      if count == self._getMaxIterations():
        break
      if -pobj > self.__divergence__ and np.all(np.abs(rp) <= rowTol):
        status = SolverStatus.UNBOUNDED
        break
      if np.max(np.abs(it.y), initial=0.0) > self.__divergence__:
        break
      try:
        self._step(form, it, rp, rdLin, Rd, N)
      except (LinAlgError, ValueError) as exception:
        if self._isVerbose():
          ic(exception)
        break
    p, W = form.recover(it)
    return ConicSolution(status, p, W, problem.objectiveValue(p, W),
                         form.dualObjective(it), count, it.y.copy(),
                         0.0, dres)

  def _step(self, form: _RealForm, it: _Iterate, rp: NDArray,
            rdLin: NDArray, Rd: NDArray, N: int) -> None:
    """Performs one predictor corrector step in place."""
    x, X, z, Z = it.x, it.X, it.z, it.Z
    mu = (float(x @ z) + float(np.sum(X * Z))) / N
    Zi = np.linalg.inv(Z) if form.nS else Z
    Zi = _sym(Zi)
    d = x / z
    M = (form.A * d) @ form.A.T
    if form.nS and form.m:
      G = np.einsum('kl,jlr,rs->jks', X, form.S, Zi)
      M = M + np.einsum('ikl,jlk->ij', form.S, G)
    M = _sym(M)
    factor = None
    if form.m:
      try:
        factor = cho_factor(M)
      except LinAlgError:
        factor = None

    def schurSolve(rhs: NDArray) -> NDArray:
      """Solves the Schur system, by Cholesky when M is positive
      definite and in the least squares sense otherwise."""
      if factor is not None:
        return cho_solve(factor, rhs)
      return lstsq(M, rhs)[0]

    def direction(rc: NDArray, Rc: NDArray) -> tuple[NDArray, ...]:
      """Solves the Newton system for the given complementarity
      targets."""
      rhs = rp - form.A @ (rc / z - d * rdLin)
      if form.nS:
        rhs = rhs - form.opA(Rc - X @ Rd @ Zi)
      dy = schurSolve(rhs) if form.m else np.zeros(0)
      dz = rdLin - form.A.T @ dy
      dx = (rc - x * dz) / z
      if form.nS:
        dZ = Rd - form.opAT(dy)
        dX = _sym(Rc - X @ dZ @ Zi)
      else:
        dZ, dX = Rd, Rd
      return dx, dX, dy, dz, dZ

    def stepLengths(dx, dX, dz, dZ) -> tuple[float, float]:
      """Fraction to the boundary step lengths."""
      frac = self.__step_fraction__
      alphaP = min(1.0, frac * min(_maxStep(x, dx), _maxStepPsd(X, dX)))
      alphaD = min(1.0, frac * min(_maxStep(z, dz), _maxStepPsd(Z, dZ)))
      return alphaP, alphaD

    sigma, rc, Rc = 0.0, -x * z, -X
    dx, dX, dy, dz, dZ = direction(rc, Rc)
    if self._usePredictorCorrector():
      alphaP, alphaD = stepLengths(dx, dX, dz, dZ)
      affine = float((x + alphaP * dx) @ (z + alphaD * dz))
      if form.nS:
        affine += float(np.sum((X + alphaP * dX) * (Z + alphaD * dZ)))
      sigma = min(1.0, max(0.0, affine / N / mu)) ** 3
      rc = sigma * mu - x * z - dx * dz
      if form.nS:
        Rc = sigma * mu * Zi - X - dX @ dZ @ Zi
      dx, dX, dy, dz, dZ = direction(rc, Rc)
    else:
      sigma = 0.3
      rc = sigma * mu - x * z
      if form.nS:
        Rc = sigma * mu * Zi - X
      dx, dX, dy, dz, dZ = direction(rc, Rc)
    alphaP, alphaD = stepLengths(dx, dX, dz, dZ)
    it.x = x + alphaP * dx
    it.y = it.y + alphaD * dy
    it.z = z + alphaD * dz
    if form.nS:
      it.X = _sym(X + alphaP * dX)
      it.Z = _sym(Z + alphaD * dZ)

  def _feasibilityPhase(self, problem: ConicProblem,
                        failed: ConicSolution) -> ConicSolution:
    """Minimizes a shift s >= 0 added to every constraint. An optimal
    shift above the tolerance proves infeasibility, and the multipliers
    of the shifted problem are returned as the certificate. Otherwise the
    failed solution is returned unchanged. A small cost on p and W keeps
    the dual of the shifted problem strictly feasible."""
    if not problem.nConstraints:
      return failed
    tol = self._getTol()
    nP, n = problem.nScalars, problem.psdDim
    cost = np.concatenate([tol * np.ones(nP), [1.0]])
    C = tol * np.eye(n) if n else None
    rows = [(np.concatenate([c.scalarCoeffs, [1.0]]),
             c.matrix if n else None, c.bound) for c in problem.constraints]
    shifted = ConicProblem.build(cost, C, rows)
    phase = self._iterate(shifted)
    shift = float(phase.p[-1]) if phase.p.size else 0.0
    scale = max(1.0, float(np.max(np.abs(problem.bounds()), initial=0.0)))
    if self._isVerbose():
      ic(phase.status, shift)
    if phase.status is SolverStatus.OPTIMAL and shift > tol * scale:
      ray = np.maximum(phase.dual, 0.0)
      return self._infeasible(problem, ray, failed.iterations +
                              phase.iterations)
    return failed


def solveConic(problem: ConicProblem, **kwargs) -> ConicSolution:
  """Solves the problem with a ConicSolver built from the keyword
  arguments."""
  return ConicSolver(**kwargs).solve(problem)
