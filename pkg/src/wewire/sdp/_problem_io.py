"""Problems are dumped as JSON lines so that failing instances can be
collected in a debug log and replayed later. A dump is a header record
holding the sizes and the objective, followed by one record per
constraint:

  {"kind": "problem", "nScalars": 2, "psdDim": 2, "scalarCost": [...],
   "matrixCost": {"re": [[...]], "im": [[...]]}, "nConstraints": 6}
  {"kind": "constraint", "a": [...], "S": {"re": ..., "im": ...}, "b": 6.0}

Complex matrices are stored as a pair of nested lists holding the real
and imaginary parts."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import json
from typing import Any, Iterable, TextIO

import numpy as np
from vistutils.text import monoSpace

from wewire.core import CMat
from wewire.sdp import ConicProblem, ConicSolution, LinearConstraint


def _encodeMatrix(A: CMat) -> dict[str, Any]:
  """Encodes a complex matrix as real and imaginary nested lists."""
  return {'re': np.real(A).tolist(), 'im': np.imag(A).tolist()}


def _decodeMatrix(data: dict[str, Any], dim: int) -> CMat:
  """Decodes a complex matrix from real and imaginary nested lists."""
  out = np.array(data['re'], dtype=np.float64) + 1j * np.array(
    data['im'], dtype=np.float64)
  return out.reshape(dim, dim)


def problemRecords(problem: ConicProblem) -> list[dict[str, Any]]:
  """Returns the header record followed by one record per constraint."""
  header = {
    'kind': 'problem',
    'nScalars': problem.nScalars,
    'psdDim': problem.psdDim,
    'scalarCost': problem.scalarCost.tolist(),
    'matrixCost': _encodeMatrix(problem.matrixCost),
    'nConstraints': problem.nConstraints,
  }
  rows = [{
    'kind': 'constraint',
    'a': c.scalarCoeffs.tolist(),
    'S': _encodeMatrix(c.matrix),
    'b': c.bound,
  } for c in problem.constraints]
  return [header, *rows]


def solutionRecord(solution: ConicSolution) -> dict[str, Any]:
  """Returns a JSON compatible summary of the solution."""
  return {
    'kind': 'solution',
    'status': str(solution.status),
    'p': solution.p.tolist(),
    'W': _encodeMatrix(solution.W),
    'primalObjective': solution.primalObjective,
    'dualObjective': solution.dualObjective,
    'iterations': solution.iterations,
    'dual': solution.dual.tolist(),
    'primalResidual': solution.primalResidual,
    'dualResidual': solution.dualResidual,
  }


def dumpProblem(problem: ConicProblem, stream: TextIO, **extra) -> None:
  """Writes the problem as JSON lines to the stream. Extra keyword
  arguments are stored in the header record."""
  header, *rows = problemRecords(problem)
  header.update(extra)
  for record in [header, *rows]:
    stream.write(json.dumps(record) + '\n')


def loadProblem(lines: Iterable[str] | TextIO) -> ConicProblem:
  """Reads the first problem written by dumpProblem from the lines.
  Records of other kinds before the header are skipped."""
  records = (json.loads(line) for line in lines if line.strip())
  header = None
  for record in records:
    if record.get('kind') == 'problem':
      header = record
      break
  if header is None:
    e = """No problem record was found!"""
    raise ValueError(monoSpace(e))
  nScalars, psdDim = int(header['nScalars']), int(header['psdDim'])
  constraints = []
  for _ in range(int(header['nConstraints'])):
    row = next(records, None)
    if row is None or row.get('kind') != 'constraint':
      e = """Expected %d constraint records after the problem header, 
      but found only %d!"""
      raise ValueError(monoSpace(e % (header['nConstraints'],
                                      len(constraints))))
    constraints.append(
      LinearConstraint(np.array(row['a'], dtype=np.float64),
                       _decodeMatrix(row['S'], psdDim), float(row['b'])))
  return ConicProblem(nScalars, psdDim,
                      np.array(header['scalarCost'], dtype=np.float64),
                      _decodeMatrix(header['matrixCost'], psdDim),
                      tuple(constraints))
