"""Tests of the network coded two phase protocol at the bit level."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from wewire.channel import ScenarioConfig, sampleRayleigh
from wewire.core import LengthMismatch, ProtocolError
from wewire.core import UplinkLongerThanDownlink
from wewire.power import BsPowerProblem, solveEta
from wewire.protocol import Message, Origin, Payloads, allBitStrings
from wewire.protocol import concatCommon, exhaustiveXorCheck, extractCommon
from wewire.protocol import privateLength, recoverAtEndnodes
from wewire.protocol import simulateTwoPhase, splitMessage, xorEncode
from wewire.rates import RateRequirements, SplitFactors
from wewire.sdp import SolverStatus


class TestMessage:
  """Immutable bit messages."""

  def test_equalityIgnoresOrigin(self) -> None:
    """Only the bits are compared."""
    assert Message('101', Origin.BS_TO_MS1) == Message('101')
    assert Message('101') != Message('1010')

  def test_readOnly(self) -> None:
    """The bits cannot be changed in place."""
    with pytest.raises(ValueError):
      Message('101').bits[0] = 0

  def test_invalidBits(self) -> None:
    """Only zeros and ones are bits."""
    with pytest.raises(ValueError):
      Message('102')

  def test_concatenation(self) -> None:
    """Addition concatenates and keeps the left origin."""
    joined = Message('10', Origin.BS_TO_MS2) + Message('011')
    assert str(joined) == '10011'
    assert joined.origin is Origin.BS_TO_MS2

  def test_allBitStrings(self) -> None:
    """Counting order with the most significant bit first."""
    rows = [''.join(map(str, row)) for row in allBitStrings(2)]
    assert rows == ['00', '01', '10', '11']


class TestSplitAndConcat:
  """Private/common split and the common concatenation."""

  def test_evenSplit(self) -> None:
    """Eight bits at α = 0.5 split 4 | 4."""
    private, common = splitMessage(Message('10110010'), 0.5)
    assert (str(private), str(common)) == ('1011', '0010')

  def test_oddSplit(self) -> None:
    """Five bits at α = 0.5 split 3 | 2."""
    private, common = splitMessage(Message('10110'), 0.5)
    assert (len(private), len(common)) == (3, 2)

  def test_allPrivate(self) -> None:
    """α = 1 leaves the common part empty."""
    private, common = splitMessage(Message('1101'), 1.0)
    assert str(private) == '1101'
    assert len(common) == 0

  def test_roundedProduct(self) -> None:
    """0.3 · 10 gives 3 private bits."""
    assert privateLength(0.3, 10) == 3
    assert privateLength(0.0, 10) == 0

  def test_concat(self) -> None:
    """(10, 011) concatenates to 10011 with boundary 2."""
    common = concatCommon(Message('10'), Message('011'))
    assert str(common) == '10011'
    assert common.boundary == 2
    first, second = extractCommon(common)
    assert (str(first), str(second)) == ('10', '011')
    assert str(extractCommon(common, 2)) == '011'

  def test_concatEmpty(self) -> None:
    """An empty first part leaves the second unchanged."""
    common = concatCommon(Message(), Message('011'))
    assert str(common) == '011'
    assert len(extractCommon(common, 1)) == 0

  def test_concatRoundTrip(self) -> None:
    """Random pairs split back into their parts."""
    rng = np.random.default_rng(0)
    for _ in range(25):
      first = Message.random(rng, int(rng.integers(0, 12)))
      second = Message.random(rng, int(rng.integers(0, 12)))
      assert extractCommon(concatCommon(first, second)) == (first, second)

  def test_missingBoundary(self) -> None:
    """A message without a boundary cannot be split."""
    with pytest.raises(ProtocolError):
      extractCommon(Message('0101'))


class TestXor:
  """Network coding and recovery at the end nodes."""

  def test_encode(self) -> None:
    """The uplink is zero padded at the tail: 1011 ⊕ 0100 = 1111."""
    assert str(xorEncode(Message('1011'), Message('01'))) == '1111'

  def test_recover(self) -> None:
    """Both end nodes recover their messages."""
    downlink, uplink = Message('1011'), Message('01')
    broadcast = xorEncode(downlink, uplink)
    atBs, atMs = recoverAtEndnodes(broadcast, downlink, uplink, 2)
    assert str(atBs) == '01'
    assert str(atMs) == '1011'

  def test_equalMessages(self) -> None:
    """x ⊕ x = 0."""
    assert str(xorEncode(Message('0110'), Message('0110'))) == '0000'

  def test_emptyUplink(self) -> None:
    """Without uplink bits the broadcast is the downlink message."""
    broadcast = xorEncode(Message('1001'), Message())
    assert str(broadcast) == '1001'
    _, atMs = recoverAtEndnodes(broadcast, Message('1001'), Message(), 0)
    assert str(atMs) == '1001'

  def test_uplinkTooLong(self) -> None:
    """The uplink message may not exceed the downlink message."""
    with pytest.raises(UplinkLongerThanDownlink):
      xorEncode(Message('10'), Message('101'))

  def test_lengthMismatch(self) -> None:
    """Inconsistent lengths are rejected at recovery."""
    broadcast = xorEncode(Message('1011'), Message('01'))
    with pytest.raises(LengthMismatch):
      recoverAtEndnodes(broadcast, Message('101'), Message('01'), 2)
    with pytest.raises(LengthMismatch):
      recoverAtEndnodes(broadcast, Message('1011'), Message('01'), 3)

  def test_exhaustiveSmall(self) -> None:
    """Every pair up to four bits, counted exactly."""
    assert exhaustiveXorCheck(4) == (651, 0)

  def test_exhaustiveTenBits(self) -> None:
    """Every pair up to ten bits is recovered exactly."""
    checked, errors = exhaustiveXorCheck(10)
    assert errors == 0
    assert checked == sum(2 ** n * (2 ** (n + 1) - 1) for n in range(11))


class TestTwoPhase:
  """End-to-end simulation of one period."""

  @staticmethod
  def _solve(ch, rates, sbsPower):
    """Optimized phase-1 and phase-2 solutions."""
    bs = BsPowerProblem(ch, rates, 1.0).optimizeAlpha(0.25, 1)
    eta = solveEta(ch, rates, sbsPower, 1.0)
    return bs, eta

  def test_feasibleInstance(self, skewed) -> None:
    """All four flows are recovered exactly."""
    rates = RateRequirements.symmetric(1, 4)
    bs, eta = self._solve(skewed, rates, 15.0)
    report = simulateTwoPhase(skewed, rates, bs.alpha, bs, eta,
                              sbsPower=15.0, sigma2=1.0)
    assert report.success
    assert report.consistent
    assert report.networkCoded == (True, True)
    assert report.flows['downlink1'].bits == 4
    assert report.flows['uplink2'].bits == 1

  def test_explicitPayloads(self, orthonormal) -> None:
    """Given payloads arrive unchanged."""
    rates = RateRequirements.symmetric(1, 4)
    bs, eta = self._solve(orthonormal, rates, 15.0)
    payloads = Payloads(Message('1011', Origin.BS_TO_MS1),
                        Message('0110', Origin.BS_TO_MS2),
                        Message('1', Origin.MS1_TO_BS),
                        Message('0', Origin.MS2_TO_BS))
    report = simulateTwoPhase(orthonormal, rates, bs.alpha, bs, eta,
                              payloads, sbsPower=15.0)
    assert report.success

  def test_wrongPayloadLength(self, orthonormal) -> None:
    """Payloads must match the rates."""
    rates = RateRequirements.symmetric(1, 4)
    bs, eta = self._solve(orthonormal, rates, 15.0)
    payloads = Payloads(Message('101'), Message('0110'), Message('1'),
                        Message('0'))
    with pytest.raises(LengthMismatch):
      simulateTwoPhase(orthonormal, rates, bs.alpha, bs, eta, payloads,
                       sbsPower=15.0)

  def test_failedBaseStation(self, skewed) -> None:
    """A non-optimal phase-1 solution delivers no downlink flow."""
    rates = RateRequirements.symmetric(1, 4)
    bs, eta = self._solve(skewed, rates, 15.0)
    failed = dataclasses.replace(bs, status=SolverStatus.MAX_ITERATIONS)
    report = simulateTwoPhase(skewed, rates, bs.alpha, failed, eta,
                              sbsPower=15.0)
    assert not report.flows['downlink1'].delivered
    assert not report.flows['downlink2'].delivered
    assert not report.success
    assert report.consistent
    assert report.flows['uplink1'].success

  def test_randomRealizations(self) -> None:
    """Optimized splits on random channels recover every flow."""
    config = ScenarioConfig(rates=RateRequirements.symmetric(1, 4))
    power = config.sbsPowers()
    for seedId in range(3):
      ch = sampleRayleigh(seedId, config)
      bs, eta = self._solve(ch, config.rates, power)
      report = simulateTwoPhase(ch, config.rates, bs.alpha, bs, eta,
                                sbsPower=power,
                                rng=np.random.default_rng(seedId))
      assert report.success
      assert report.record()['success']

  def test_allCommonSplit(self, identical) -> None:
    """Collinear channels use the common beam only."""
    rates = RateRequirements.symmetric(1, 3)
    bs, eta = self._solve(identical, rates, 7.0)
    assert bs.alpha == SplitFactors.allCommon()
    report = simulateTwoPhase(identical, rates, bs.alpha, bs, eta,
                              sbsPower=7.0)
    assert report.success

  def test_sbsPowerRequired(self, skewed) -> None:
    """The small cell power has no default."""
    rates = RateRequirements.symmetric(1, 4)
    bs, eta = self._solve(skewed, rates, 15.0)
    with pytest.raises(TypeError):
      simulateTwoPhase(skewed, rates, bs.alpha, bs, eta, sigma2=1.0)

  @pytest.mark.slow
  def test_hundredRealizations(self) -> None:
    """Every flow of 100 random realizations arrives with the wired bit
    counts."""
    config = ScenarioConfig(rates=RateRequirements.symmetric(1, 4))
    power = config.sbsPowers()
    for seedId in range(100):
      ch = sampleRayleigh(seedId, config)
      bs, eta = self._solve(ch, config.rates, power)
      report = simulateTwoPhase(ch, config.rates, bs.alpha, bs, eta,
                                sbsPower=power,
                                rng=np.random.default_rng(seedId))
      assert report.success
      assert report.flows['downlink1'].bits == 4
      assert report.flows['downlink2'].bits == 4
      assert report.flows['uplink1'].bits == 1
      assert report.flows['uplink2'].bits == 1
