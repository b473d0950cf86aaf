"""The 'wewire.protocol' package simulates the two-phase network coded
protocol on bit payloads and checks that the emulated wire is
lossless."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

from ._bits import Bits, asBits, bitString, randomBits, padBits, xorBits
from ._bits import allBitStrings
from ._message import Origin, Message
from ._netcode import privateLength, splitMessage, concatCommon
from ._netcode import extractCommon, xorEncode, recoverAtEndnodes
from ._netcode import exhaustiveXorCheck
from ._two_phase import bitCount, Payloads, FlowResult, ProtocolReport
from ._two_phase import phase1Delivery, uplinkDelivery, phase2Delivery
from ._two_phase import simulateTwoPhase
