"""BsPowerProblem assembles and solves the phase-1 power minimization at
the base station for one channel realization:

  minimize    P1 + P2 + Tr(W_C)
  subject to  β1i <= Pi·gi
              β2i <= Tr(Hi W_C)
              β3i <= Pi·gi + Tr(Hi W_C),   i = 1, 2
              Pi >= 0, W_C ⪰ 0

where gi = |hiᴴwi|² is the gain of the zero forcing beam wi and
Hi = hi hiᴴ. Dropping the rank one requirement on W_C makes the problem
a semidefinite program whose optimum lower bounds the power of any
single common beam. When no common beam is needed, the problem has the
closed form Pi = β1i / gi, which is also the zero forcing only scheme."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from typing import Any, Iterable

import numpy as np
from icecream import ic
from numpy.random import Generator
from scipy.optimize import minimize_scalar
from vistutils.parse import maybe
from vistutils.text import monoSpace, stringList
from vistutils.waitaminute import typeMsg

from wewire.beamforming import BeamformerSet, zfBeamformers
from wewire.channel import ChannelRealization
from wewire.core import CollinearChannels, CVec, RANK_RATIO, SolverFailure
from wewire.core import hermitian, norm2, outer, checkNonZero
from wewire.rates import BetaCoefficients, RateRequirements, SplitFactors
from wewire.rates import betaCoefficients
from wewire.sdp import ConicProblem, ConicSolver, SolverStatus
from wewire.power import BsPowerSolution, Scheme, extractRank1, rankOf
from wewire.power import principalBeam

ic.configureOutput(includeContext=True)

AlphaKey = tuple[float, float]

ROUNDING = 1e-12


class BsPowerProblem:
  """BsPowerProblem solves the phase-1 problem at any split factors for
  a fixed realization, caching every solved split. Keyword arguments:
    solver: the ConicSolver to use (default ConicSolver())
    nSamples: rank one randomization candidates (default 100)
    seed: seed of the randomization generator (default 0)"""

  __fallback_samples__ = 100

  def __init__(self,
               ch: ChannelRealization,
               rates: RateRequirements,
               sigma2: float,
               **kwargs) -> None:
    if not isinstance(ch, ChannelRealization):
      raise TypeError(typeMsg('ch', ch, ChannelRealization))
    if not isinstance(rates, RateRequirements):
      raise TypeError(typeMsg('rates', rates, RateRequirements))
    if not sigma2 > 0:
      e = """The noise power must be positive, but received: %s!"""
      raise ValueError(monoSpace(e % str(sigma2)))
    for h in ch.channels:
      checkNonZero(h)
    self.ch, self.rates, self.sigma2 = ch, rates, float(sigma2)
    solverKeys = stringList("""solver, conicSolver""")
    sampleKeys = stringList("""nSamples, samples, n_samples""")
    self.__solver__ = None
    self.__samples__ = None
    self.__seed__ = int(kwargs.get('seed', 0))
    for key in solverKeys:
      if key in kwargs:
        solver = kwargs[key]
        if not isinstance(solver, ConicSolver):
          raise TypeError(typeMsg(key, solver, ConicSolver))
        self.__solver__ = solver
        break
    for key in sampleKeys:
      if key in kwargs:
        self.__samples__ = int(kwargs[key])
        break
    self.__beamformers__ = None
    self.__collinear__ = None
    self.__cache__: dict[AlphaKey, BsPowerSolution] = {}

  def _getSolver(self) -> ConicSolver:
    """Getter-function for the conic solver"""
    if self.__solver__ is None:
      self.__solver__ = ConicSolver()
    return self.__solver__

  def _getSamples(self) -> int:
    """Getter-function for the number of randomization candidates"""
    return maybe(self.__samples__, self.__fallback_samples__)

  def isCollinear(self) -> bool:
    """True when zero forcing beams cannot be built."""
    if self.__collinear__ is None:
      try:
        self.beamformers()
      except CollinearChannels:
        pass
    return self.__collinear__

  def beamformers(self) -> BeamformerSet:
    """Returns the zero forcing beams, raising CollinearChannels for
    (nearly) parallel channels."""
    if self.__beamformers__ is None:
      try:
        self.__beamformers__ = zfBeamformers(*self.ch.channels)
      except CollinearChannels as collinear:
        self.__collinear__ = True
        raise collinear
      self.__collinear__ = False
    return self.__beamformers__

  def gains(self, alpha: SplitFactors) -> tuple[float, float]:
    """Private beam gains. Without a private component the private powers
    carry nothing, so the gains are zero and no beams are required."""
    if not alpha.hasPrivate():
      return 0.0, 0.0
    return self.beamformers().gains

  def betas(self, alpha: SplitFactors) -> BetaCoefficients:
    """β coefficients at the split factors."""
    return betaCoefficients(self.rates, alpha, self.ch.gammaM, self.sigma2)

  def conicProblem(self, alpha: SplitFactors) -> ConicProblem:
    """Returns the relaxed problem at the split factors. Constraints
    whose threshold is zero are left out."""
    beta = self.betas(alpha)
    gains = self.gains(alpha)
    rows = []
    for i, h in enumerate(self.ch.channels):
      a = np.zeros(2)
      a[i] = gains[i]
      H = outer(h)
      if beta.beta1[i] > 0:
        rows.append((a, None, beta.beta1[i]))
      if beta.beta2[i] > 0:
        rows.append((np.zeros(2), H, beta.beta2[i]))
      if beta.beta3[i] > 0:
        rows.append((a, H, beta.beta3[i]))
    return ConicProblem.build([1.0, 1.0], np.eye(self.ch.dim), rows)

  @staticmethod
  def _privatePowers(beta: BetaCoefficients,
                     received: Iterable[float],
                     gains: tuple[float, float]) -> tuple[float, float]:
    """Smallest private powers meeting the private and sum-rate
    constraints given the received common powers. A shortfall within
    rounding of the sum-rate threshold counts as met."""
    out = []
    for i, t in enumerate(received):
      need = max(0.0, beta.beta1[i], beta.beta3[i] - t)
      if need <= ROUNDING * max(1.0, beta.beta3[i]):
        out.append(0.0)
        continue
      if gains[i] <= 0:
        e = """Small cell %d needs private power %.6g but has no private 
        beam!"""
        raise SolverFailure(monoSpace(e % (i + 1, need)))
      out.append(need / gains[i])
    return out[0], out[1]

  def _zeroSolution(self, alpha: SplitFactors) -> BsPowerSolution:
    """The solution without any requirement."""
    W = np.zeros((self.ch.dim, self.ch.dim), dtype=np.complex128)
    return BsPowerSolution(Scheme.WEW, alpha, 0.0, 0.0, W, 0.0)

  def _closedForm(self, alpha: SplitFactors,
                  beta: BetaCoefficients) -> BsPowerSolution:
    """Private beams only: Pi = β1i / gi."""
    gains = self.gains(alpha)
    P1, P2 = self._privatePowers(beta, (0.0, 0.0), gains)
    W = np.zeros((self.ch.dim, self.ch.dim), dtype=np.complex128)
    return BsPowerSolution(Scheme.WEW, alpha, P1, P2, W, P1 + P2)

  def _polish(self, alpha: SplitFactors, beta: BetaCoefficients,
              W: np.ndarray) -> tuple[float, float, np.ndarray]:
    """Makes the solver output exactly feasible. W is projected onto the
    PSD cone and scaled up until every common constraint holds, after
    which the private powers are set to their smallest feasible
    values."""
    eigenvalues, vectors = np.linalg.eigh(hermitian(W))
    W = hermitian((vectors * np.clip(eigenvalues, 0.0, None)) @ vectors.conj(
    ).T)
    received = [float(np.real(np.vdot(h, W @ h))) for h in self.ch.channels]
    scale = 1.0
    for i, t in enumerate(received):
      if beta.beta2[i] > 0:
        if t <= 0:
          e = """The common beam delivers no power to small cell %d!"""
          raise SolverFailure(monoSpace(e % (i + 1)))
        scale = max(scale, beta.beta2[i] / t)
    W = W * scale
    received = [t * scale for t in received]
    P1, P2 = self._privatePowers(beta, received, self.gains(alpha))
    return P1, P2, W

  def _solveRelaxed(self, alpha: SplitFactors,
                    beta: BetaCoefficients) -> BsPowerSolution:
    """Solves the semidefinite relaxation and polishes its output."""
    problem = self.conicProblem(alpha)
    solution = self._getSolver().solve(problem)
    if solution.status is not SolverStatus.OPTIMAL:
      e = """The phase-1 problem at α=%s ended with status '%s' after %d 
      iterations!"""
      failure = SolverFailure(monoSpace(e % (
        alpha, solution.status, solution.iterations)))
      failure.problem, failure.solution = problem, solution
      ic(failure)
      raise failure
    P1, P2, W = self._polish(alpha, beta, solution.W)
    total = P1 + P2 + float(np.real(np.trace(W)))
    rank = rankOf(W, RANK_RATIO)
    commonBeam, achievable = None, total
    if rank == 1:
      commonBeam = principalBeam(W)
    elif rank > 1:
      commonBeam, achievable = self._achievable(alpha, beta, W)
    return BsPowerSolution(Scheme.WEW, alpha, P1, P2, W, total,
                           solution.status, solution.relativeGap, rank,
                           commonBeam, achievable)

  def _achievable(self, alpha: SplitFactors, beta: BetaCoefficients,
                  W: np.ndarray) -> tuple[CVec, float]:
    """Best randomized rank one common beam and the total power with the
    private powers re-balanced to it."""
    constraints = list(zip(self.ch.channels, beta.beta2))
    rng = np.random.default_rng(self.__seed__)
    beam, power = extractRank1(W, constraints, self._getSamples(), rng)
    received = [abs(np.vdot(h, beam)) ** 2 for h in self.ch.channels]
    P1, P2 = self._privatePowers(beta, received, self.gains(alpha))
    return beam, P1 + P2 + power

  def solve(self, alpha: SplitFactors,
            scheme: Scheme = Scheme.WEW) -> BsPowerSolution:
    """Returns the relaxed optimum at the split factors."""
    if not isinstance(alpha, SplitFactors):
      raise TypeError(typeMsg('alpha', alpha, SplitFactors))
    key = (alpha.alpha1, alpha.alpha2)
    if key not in self.__cache__:
      if self.rates.isZero():
        solution = self._zeroSolution(alpha)
      else:
        beta = self.betas(alpha)
        if beta.commonNeeded():
          solution = self._solveRelaxed(alpha, beta)
        else:
          solution = self._closedForm(alpha, beta)
      self.__cache__[key] = solution
    return self.__cache__[key].relabel(scheme)

  def solveZfOnly(self) -> BsPowerSolution:
    """The zero forcing only scheme, α = (1, 1)."""
    self.beamformers()
    return self.solve(SplitFactors.allPrivate(), Scheme.ZF_ONLY)

  def solveCommonOnly(self) -> BsPowerSolution:
    """The common only scheme, α = (0, 0)."""
    return self.solve(SplitFactors.allCommon(), Scheme.COMMON_ONLY)

  def solveRandomAlpha(self, rng: Generator) -> BsPowerSolution:
    """Draws both split factors uniformly from [0, 1] and solves there.
    Collinear channels raise CollinearChannels without a redraw."""
    alpha1, alpha2 = rng.random(2)
    alpha = SplitFactors(float(alpha1), float(alpha2))
    return self.solve(alpha, Scheme.RANDOM_SPLIT)

  @staticmethod
  def _grid(gridStep: float) -> list[float]:
    """The grid {0, gridStep, ..., 1}, always including 1."""
    if not 0 < gridStep <= 0.5:
      e = """The grid step must lie in (0, 0.5], but received: %s!"""
      raise ValueError(monoSpace(e % str(gridStep)))
    count = int(np.floor(1 / gridStep + 1e-9))
    values = [round(k * gridStep, 12) for k in range(count + 1)]
    if values[-1] < 1.0:
      values.append(1.0)
    return values

  @staticmethod
  def _rankKey(solution: BsPowerSolution) -> tuple[float, float, float]:
    """Lowest total power first, then the smallest split factors."""
    return solution.totalPower, solution.alpha.alpha1, solution.alpha.alpha2

  def optimizeAlpha(self,
                    gridStep: float = 0.1,
                    refinePasses: int = 3,
                    candidates: Iterable[SplitFactors] = (),
                    ) -> BsPowerSolution:
    """Minimizes the relaxed power over the split factors. The grid is
    searched first, then each coordinate is refined in turn with a
    bounded scalar search of tolerance 1e-3 in a window of one grid step
    around the incumbent. Additional candidate splits, for instance
    splits already tried for this realization, are included in the
    comparison. Collinear channels restrict the search to α = (0, 0)."""
    if self.isCollinear():
      return self.solve(SplitFactors.allCommon(), Scheme.WEW)
    grid = self._grid(gridStep)
    solutions = [self.solve(SplitFactors(a1, a2)) for a1 in grid
                 for a2 in grid]
    solutions.extend(self.solve(alpha) for alpha in candidates)
    best = min(solutions, key=self._rankKey)
    for _ in range(max(int(refinePasses), 0)):
      improved = False
      for coordinate in range(2):
        current = list(best.alpha)
        low = max(0.0, current[coordinate] - gridStep)
        high = min(1.0, current[coordinate] + gridStep)

        def objective(value: float) -> float:
          """Relaxed power with one split factor replaced."""
          trial = list(current)
          trial[coordinate] = float(np.clip(value, 0.0, 1.0))
          return self.solve(SplitFactors(*trial)).totalPower

        result = minimize_scalar(objective, bounds=(low, high),
                                 method='bounded',
                                 options={'xatol': 1e-3})
        trial = list(current)
        trial[coordinate] = float(np.clip(result.x, 0.0, 1.0))
        candidate = self.solve(SplitFactors(*trial))
        if candidate.totalPower < best.totalPower:
          best, improved = candidate, True
      if not improved:
        break
    return best.relabel(Scheme.WEW)


def _problem(ch: ChannelRealization, rates: RateRequirements,
             sigma2: float, kwargs: dict[str, Any]) -> BsPowerProblem:
  """Builds the problem from the shared keyword arguments."""
  return BsPowerProblem(ch, rates, sigma2, **kwargs)


def solveFixedAlpha(ch: ChannelRealization,
                    rates: RateRequirements,
                    alpha: SplitFactors,
                    sigma2: float,
                    **kwargs) -> BsPowerSolution:
  """Relaxed phase-1 optimum at fixed split factors."""
  return _problem(ch, rates, sigma2, kwargs).solve(alpha)


def solveZfOnly(ch: ChannelRealization,
                rates: RateRequirements,
                sigma2: float,
                **kwargs) -> BsPowerSolution:
  """Zero forcing only: Pi = β1i / |hiᴴwi|² without common beam."""
  return _problem(ch, rates, sigma2, kwargs).solveZfOnly()


def solveCommonOnly(ch: ChannelRealization,
                    rates: RateRequirements,
                    sigma2: float,
                    **kwargs) -> BsPowerSolution:
  """Common only: minimize Tr(W_C) subject to Tr(Hi W_C) >= β2i."""
  return _problem(ch, rates, sigma2, kwargs).solveCommonOnly()


def optimizeAlpha(ch: ChannelRealization,
                  rates: RateRequirements,
                  sigma2: float,
                  gridStep: float = 0.1,
                  refinePasses: int = 3,
                  **kwargs) -> BsPowerSolution:
  """The wireless emulated wire scheme with optimized split factors."""
  problem = _problem(ch, rates, sigma2, kwargs)
  return problem.optimizeAlpha(gridStep, refinePasses)


def solveRandomAlpha(ch: ChannelRealization,
                     rates: RateRequirements,
                     sigma2: float,
                     rng: Generator,
                     **kwargs) -> BsPowerSolution:
  """Phase-1 optimum at uniformly drawn split factors."""
  return _problem(ch, rates, sigma2, kwargs).solveRandomAlpha(rng)


def solveSingleCell(h: CVec,
                    downlinkRate: float,
                    gammaM: float,
                    sigma2: float) -> tuple[CVec, float]:
  """A single small cell served by a matched beam. Returns the beam and
  its power β / ‖h‖² with β = σ²(2^R - 1)(1 + γ_M)."""
  norm = checkNonZero(np.asarray(h, dtype=np.complex128))
  beta = sigma2 * (2.0 ** downlinkRate - 1.0) * (1.0 + gammaM)
  power = beta / norm2(h)
  return np.asarray(h) / norm * np.sqrt(power), float(power)
