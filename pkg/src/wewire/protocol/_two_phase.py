"""simulateTwoPhase runs the emulated wire protocol end to end on bit
payloads for one channel realization. No noise is simulated: a
transmission is delivered exactly when the optimized powers put its rate
inside the capacity region of the receiver, and is lost otherwise.

Phase 1: the base station sends the private parts over the zero forcing
beams and the concatenated common parts over the common beam while each
mobile sends its uplink message to its small cell. Each small cell
decodes the base station streams first, removes them, and then decodes
the uplink.

Phase 2: each small cell broadcasts the XOR of its downlink and uplink
messages to its mobile and to the base station. A small cell that missed
its downlink message forwards the uplink message alone. The mobile links
carry the wired reference rates by construction."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.random import Generator
from vistutils.text import monoSpace

from wewire.beamforming import zfBeamformers
from wewire.channel import ChannelRealization
from wewire.core import LengthMismatch, RATE_SLACK
from wewire.rates import RateRequirements, SplitFactors, macFeasible
from wewire.rates import rateFromSnr
from wewire.sdp import SolverStatus
from wewire.power import BsPowerSolution, EtaSolution, individualEtaBounds
from wewire.power import sumRateValue
from wewire.protocol import Message, Origin, splitMessage, concatCommon
from wewire.protocol import extractCommon, xorEncode, recoverAtEndnodes
from wewire.protocol import padBits

PHASE2_SLACK = 1e-8


def bitCount(rate: float) -> int:
  """Bits carried by a flow of the given rate over one period, with the
  period normalized so that each phase lasts one time unit."""
  return int(round(rate))


@dataclass(frozen=True)
class Payloads:
  """The four messages of one period."""

  downlink1: Message
  downlink2: Message
  uplink1: Message
  uplink2: Message

  @classmethod
  def random(cls, rates: RateRequirements, rng: Generator) -> Payloads:
    """Draws payloads with round(rate) bits per flow."""
    (ul1, ul2), (dl1, dl2) = rates.uplink, rates.downlink
    return cls(Message.random(rng, bitCount(dl1), Origin.downlink(1)),
               Message.random(rng, bitCount(dl2), Origin.downlink(2)),
               Message.random(rng, bitCount(ul1), Origin.uplink(1)),
               Message.random(rng, bitCount(ul2), Origin.uplink(2)))

  def downlink(self, index: int) -> Message:
    """Downlink message to MS1 or MS2."""
    return (self.downlink1, self.downlink2)[index - 1]

  def uplink(self, index: int) -> Message:
    """Uplink message from MS1 or MS2."""
    return (self.uplink1, self.uplink2)[index - 1]

  def check(self, rates: RateRequirements) -> None:
    """Raises LengthMismatch unless every payload has round(rate) bits."""
    for i in (1, 2):
      expected = (bitCount(rates.downlink[i - 1]),
                  bitCount(rates.uplink[i - 1]))
      actual = (len(self.downlink(i)), len(self.uplink(i)))
      if expected != actual:
        e = """Payloads of MS%d have (downlink, uplink) lengths %s, but the 
        rates require %s!"""
        raise LengthMismatch(monoSpace(e % (i, actual, expected)))


@dataclass(frozen=True)
class FlowResult:
  """The outcome of one end-to-end flow."""

  delivered: bool
  exact: bool
  bits: int
  expectedBits: int

  @property
  def success(self) -> bool:
    """Delivered, exact and wired-equivalent in size."""
    return self.delivered and self.exact and self.bits == self.expectedBits


@dataclass(frozen=True)
class ProtocolReport:
  """Per-flow outcomes of one simulated period together with the
  feasibility reported by both optimizers."""

  flows: dict[str, FlowResult]
  phase1Delivered: tuple[bool, bool]
  phase2Delivered: bool
  networkCoded: tuple[bool, bool]
  bsFeasible: bool
  etaFeasible: bool
  seedId: int = 0
  notes: tuple[str, ...] = field(default=())

  @property
  def success(self) -> bool:
    """True when all four flows succeeded."""
    return all(flow.success for flow in self.flows.values())

  @property
  def consistent(self) -> bool:
    """Success holds exactly when both optimizers reported
    feasibility."""
    return self.success == (self.bsFeasible and self.etaFeasible)

  def record(self) -> dict[str, Any]:
    """Returns the JSON compatible report."""
    return {
      'seed_id': self.seedId,
      'success': self.success,
      'consistent': self.consistent,
      'bs_feasible': self.bsFeasible,
      'eta_feasible': self.etaFeasible,
      'phase1_delivered': list(self.phase1Delivered),
      'phase2_delivered': self.phase2Delivered,
      'network_coded': list(self.networkCoded),
      'flows': {name: {
        'delivered': flow.delivered,
        'exact': flow.exact,
        'bits': flow.bits,
        'expected_bits': flow.expectedBits,
      } for name, flow in self.flows.items()},
      'notes': list(self.notes),
    }


def phase1Delivery(ch: ChannelRealization,
                   rates: RateRequirements,
                   alpha: SplitFactors,
                   bsSolution: BsPowerSolution,
                   sigma2: float) -> tuple[bool, bool]:
  """Per small cell: the base station streams fall inside its multiple
  access region at the reported powers."""
  if bsSolution.status is not SolverStatus.OPTIMAL:
    return False, False
  if alpha.hasPrivate():
    gains = zfBeamformers(*ch.channels).gains
  else:
    gains = (0.0, 0.0)
  gammaP = tuple(p * g / sigma2 for p, g in zip(bsSolution.privatePowers,
                                                gains))
  W = bsSolution.W
  gammaC = tuple(float(np.real(np.vdot(h, W @ h))) / sigma2
                 for h in ch.channels)
  return macFeasible(gammaP, gammaC, ch.gammaM, rates, alpha)


def uplinkDelivery(ch: ChannelRealization,
                   rates: RateRequirements) -> tuple[bool, bool]:
  """Per mobile: the uplink rate is within the MS-SBS link capacity once
  the base station streams are removed."""
  return tuple(bool(rateFromSnr(g) >= r - RATE_SLACK)
               for g, r in zip(ch.gammaM, rates.uplink))


def phase2Delivery(ch: ChannelRealization,
                   rates: RateRequirements,
                   etaSolution: EtaSolution,
                   sbsPower: float | tuple[float, float],
                   sigma2: float) -> bool:
  """The scaled small cell transmissions fall inside the rate region of
  the base station."""
  if etaSolution.status is not SolverStatus.OPTIMAL:
    return False
  eta = (etaSolution.eta1, etaSolution.eta2)
  bounds = individualEtaBounds(ch, rates, sbsPower, sigma2)
  for e, a in zip(eta, bounds):
    if e < 1.0 - PHASE2_SLACK or e < a * (1.0 - PHASE2_SLACK):
      return False
  total = sumRateValue(eta[0], eta[1], ch, sbsPower, sigma2)
  return total >= sum(rates.downlink) - PHASE2_SLACK


def simulateTwoPhase(ch: ChannelRealization,
                     rates: RateRequirements,
                     alpha: SplitFactors,
                     bsSolution: BsPowerSolution,
                     etaSolution: EtaSolution,
                     payloads: Payloads = None,
                     **kwargs) -> ProtocolReport:
  """Simulates one period. Keyword arguments:
    sbsPower: the SBS power or pair used by the phase-2 solution
      (required)
    sigma2: the noise power (default 1)
    rng: generator for random payloads (default seeded by ch.seedId)"""
  sigma2 = float(kwargs.get('sigma2', 1.0))
  if kwargs.get('sbsPower') is None:
    e = """The small cell power must be given as the keyword argument 
    'sbsPower'!"""
    raise TypeError(monoSpace(e))
  sbsPower = kwargs['sbsPower']
  rng = kwargs.get('rng', None)
  if payloads is None:
    rng = np.random.default_rng(ch.seedId) if rng is None else rng
    payloads = Payloads.random(rates, rng)
  payloads.check(rates)
  notes = []

  phase1 = phase1Delivery(ch, rates, alpha, bsSolution, sigma2)
  uplinkOk = uplinkDelivery(ch, rates)
  privateParts, commonParts = [], []
  for i in (1, 2):
    private, common = splitMessage(payloads.downlink(i), alpha[i - 1])
    privateParts.append(private)
    commonParts.append(common)
  common = concatCommon(*commonParts)
  atSbs: list[Message | None] = []
  uplinkAtSbs: list[Message | None] = []
  for i in (1, 2):
    if phase1[i - 1]:
      own = extractCommon(common, i)
      atSbs.append(privateParts[i - 1] + own)
    else:
      atSbs.append(None)
      notes.append('SBS%d missed the base station streams' % i)
    uplinkAtSbs.append(payloads.uplink(i) if uplinkOk[i - 1] else None)

  phase2 = phase2Delivery(ch, rates, etaSolution, sbsPower, sigma2)
  if not phase2:
    notes.append('the base station cannot decode the phase-2 broadcasts')
  flows, coded = {}, []
  for i in (1, 2):
    downlink, uplink = payloads.downlink(i), payloads.uplink(i)
    dlAtSbs, ulAtSbs = atSbs[i - 1], uplinkAtSbs[i - 1]
    coded.append(dlAtSbs is not None and ulAtSbs is not None)
    if coded[-1]:
      broadcast = xorEncode(dlAtSbs, ulAtSbs)
      ulAtBs, dlAtMs = recoverAtEndnodes(broadcast, downlink, uplink,
                                         len(uplink))
    elif dlAtSbs is not None:
      ulAtBs, dlAtMs = None, dlAtSbs
    elif ulAtSbs is not None:
      forwarded = Message(padBits(ulAtSbs.bits, len(downlink)))
      ulAtBs, dlAtMs = Message(forwarded.bits[:len(uplink)]), None
    else:
      ulAtBs, dlAtMs = None, None
    dlDelivered = dlAtMs is not None
    ulDelivered = ulAtBs is not None and phase2
    flows['downlink%d' % i] = FlowResult(
      dlDelivered, dlDelivered and dlAtMs == downlink,
      len(dlAtMs) if dlDelivered else 0, bitCount(rates.downlink[i - 1]))
    flows['uplink%d' % i] = FlowResult(
      ulDelivered, ulDelivered and ulAtBs == uplink,
      len(ulAtBs) if ulDelivered else 0, bitCount(rates.uplink[i - 1]))
  bsFeasible = bsSolution.status is SolverStatus.OPTIMAL and all(phase1)
  etaFeasible = phase2 and all(uplinkOk)
  return ProtocolReport(flows, (bool(phase1[0]), bool(phase1[1])), phase2,
                        (coded[0], coded[1]), bsFeasible, etaFeasible,
                        ch.seedId, tuple(notes))
