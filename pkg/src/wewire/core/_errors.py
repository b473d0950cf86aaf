"""The exception classes raised by the 'wewire' package. Every class
derives from WewException and from the builtin exception a caller would
naturally expect, so that either may be caught."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations


class WewException(Exception):
  """Base class for all exceptions raised by 'wewire'."""


class ZeroVector(WewException, ValueError):
  """Raised when a vector has no usable direction."""


class NotPSD(WewException, ValueError):
  """Raised when a matrix expected to be positive semidefinite is not."""


class CollinearChannels(WewException, ValueError):
  """Raised when zero forcing is requested for (nearly) parallel
  channels. Callers are expected to fall back to the common-only
  scheme."""


class SolverFailure(WewException, ArithmeticError):
  """Raised when a numerical solver ends in a state that the calling
  problem cannot produce, for example 'Infeasible' on a problem that is
  always satisfiable by scaling. Failures of the conic solver carry the
  problem and the solver output as the attributes problem and
  solution."""


class NonPositivePower(WewException, ValueError):
  """Raised when a power to be converted to decibels is not positive."""


class ProtocolError(WewException, ValueError):
  """Raised when the network coded protocol receives inconsistent
  messages."""


class UplinkLongerThanDownlink(ProtocolError):
  """Raised when an uplink message is longer than the downlink message it
  is to be combined with."""


class LengthMismatch(ProtocolError):
  """Raised when message lengths at an end node are inconsistent."""
