"""The 'wewire.core' package provides the complex linear algebra kernel,
the numerical tolerances and the exception classes shared by the rest
of the package."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from ._errors import WewException, ZeroVector, NotPSD, CollinearChannels
from ._errors import SolverFailure, NonPositivePower, ProtocolError
from ._errors import UplinkLongerThanDownlink, LengthMismatch
from ._tolerances import ZERO_PER_DIM, PSD_RELATIVE, COLLINEAR
from ._tolerances import RATE_SLACK, RANK_RATIO, zeroThreshold
from ._cmat import CVec, CMat, RMat, cvec, hermitian, outer, norm2
from ._cmat import checkNonZero, psdTolerance, cholesky, isPsd
from ._projector import orthProjector
from ._logdet import logDet2Psd
from ._embedding import realEmbedding, complexFromEmbedding
