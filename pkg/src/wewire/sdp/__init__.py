"""The 'wewire.sdp' package provides a primal-dual interior point solver
for linear objectives over nonnegative scalars and one Hermitian positive
semidefinite matrix."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from ._conic_problem import LinearConstraint, ConicProblem
from ._conic_solution import SolverStatus, ConicSolution
from ._interior_point import ConicSolver, solveConic
from ._problem_io import problemRecords, solutionRecord
from ._problem_io import dumpProblem, loadProblem
