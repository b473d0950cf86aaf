"""Tests of the complex linear algebra helpers in wewire.core."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_almost_equal

from wewire.core import NotPSD, ZeroVector, complexFromEmbedding, cvec
from wewire.core import hermitian, isPsd, logDet2Psd, orthProjector, outer
from wewire.core import realEmbedding


class TestOrthProjector:
  """Projector onto the orthogonal complement of a vector."""

  def test_axisVector(self) -> None:
    """The projector annihilates the axis vector."""
    P = orthProjector(cvec(0, 1))
    assert_array_almost_equal(P, [[1, 0], [0, 0]])

  def test_diagonalVector(self) -> None:
    """Direct evaluation of I - hhᴴ/‖h‖²."""
    P = orthProjector(cvec(1, 1) / np.sqrt(2))
    assert_array_almost_equal(P, [[0.5, -0.5], [-0.5, 0.5]])

  def test_projectorProperties(self) -> None:
    """P h = 0, P = Pᴴ and P² = P for a random complex vector."""
    rng = np.random.default_rng(3)
    h = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    P = orthProjector(h)
    assert_allclose(P @ h, 0, atol=1e-12)
    assert np.array_equal(P, P.conj().T)
    assert_allclose(P @ P, P, atol=1e-12)

  def test_randomVectors(self) -> None:
    """P h vanishes and P is idempotent for 1000 random vectors."""
    rng = np.random.default_rng(17)
    for k in range(1000):
      dim = 2 + 2 * (k % 2)
      h = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
      P = orthProjector(h)
      assert np.linalg.norm(P @ h) <= 1e-10 * np.linalg.norm(h)
      assert np.linalg.norm(P @ P - P, 'fro') <= 1e-10

  def test_zeroVector(self) -> None:
    """A zero vector has no orthogonal complement projector."""
    with pytest.raises(ZeroVector):
      orthProjector(cvec(0, 0))


class TestLogDet:
  """Log-determinant of Hermitian PSD matrices."""

  def test_identity(self) -> None:
    """log₂ det I = 0."""
    assert logDet2Psd(np.eye(2)) == pytest.approx(0.0, abs=1e-14)

  def test_scaledIdentity(self) -> None:
    """log₂ det 2I₂ = 2."""
    assert logDet2Psd(2 * np.eye(2)) == pytest.approx(2.0)

  def test_rankOneUpdates(self) -> None:
    """Two rank one updates of the identity match the closed form."""
    rng = np.random.default_rng(11)
    h1, h2 = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    c1, c2 = 2.0, 3.0
    A = np.eye(2) + c1 * outer(h1) + c2 * outer(h2)
    n1, n2 = np.vdot(h1, h1).real, np.vdot(h2, h2).real
    cross = abs(np.vdot(h1, h2)) ** 2
    expected = np.log2((1 + c1 * n1) * (1 + c2 * n2) - c1 * c2 * cross)
    assert logDet2Psd(A) == pytest.approx(expected, abs=1e-10)

  def test_indefinite(self) -> None:
    """An indefinite matrix is rejected."""
    with pytest.raises(NotPSD):
      logDet2Psd(np.diag([1.0, -1.0]))

  @pytest.mark.parametrize('dim', [2, 4])
  def test_eigenvalueOracle(self, dim: int) -> None:
    """Agrees with the sum of log₂ eigenvalues on random PSD matrices."""
    rng = np.random.default_rng(23 + dim)
    for _ in range(100):
      B = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal(
        (dim, dim))
      A = hermitian(B @ B.conj().T + 0.1 * np.eye(dim))
      expected = float(np.sum(np.log2(np.linalg.eigvalsh(A))))
      assert logDet2Psd(A) == pytest.approx(expected, abs=1e-9)


class TestEmbedding:
  """Real symmetric embedding of Hermitian matrices."""

  def test_identity(self) -> None:
    """I₂ embeds as I₄."""
    assert_array_almost_equal(realEmbedding(np.eye(2)), np.eye(4))

  def test_pauliY(self) -> None:
    """The embedding of [[0, -i], [i, 0]] and its spectrum."""
    A = np.array([[0, -1j], [1j, 0]])
    expected = [[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]
    X = realEmbedding(A)
    assert_array_almost_equal(X, expected)
    assert_allclose(np.linalg.eigvalsh(X), [-1, -1, 1, 1], atol=1e-12)

  def test_traceAndInverse(self) -> None:
    """The trace doubles and complexFromEmbedding inverts the map."""
    rng = np.random.default_rng(5)
    B = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    A = hermitian(B @ B.conj().T)
    X = realEmbedding(A)
    assert np.trace(X) == pytest.approx(2 * np.trace(A).real)
    assert_allclose(complexFromEmbedding(X), A, atol=1e-12)
    assert isPsd(A)
    assert not isPsd(-A)

  def test_psdPreserved(self) -> None:
    """Cholesky succeeds on 500 random Hermitian matrices exactly when it
    succeeds on their embeddings."""

    def choleskyOk(A: np.ndarray) -> bool:
      """True when the Cholesky factorization exists."""
      try:
        np.linalg.cholesky(A)
      except np.linalg.LinAlgError:
        return False
      return True

    rng = np.random.default_rng(29)
    outcomes = set()
    checked = 0
    while checked < 500:
      dim = int(rng.integers(2, 5))
      B = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal(
        (dim, dim))
      A = hermitian(B @ B.conj().T - rng.uniform(0.0, 2.0) * np.eye(dim))
      if abs(np.linalg.eigvalsh(A)[0]) < 1e-6:
        continue
      ok = choleskyOk(A)
      assert choleskyOk(realEmbedding(A)) == ok
      outcomes.add(ok)
      checked += 1
    assert outcomes == {True, False}
