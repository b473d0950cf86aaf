"""Message level operations of the network coded protocol: the
private/common split at the base station, the concatenation of the
common parts, XOR combining at a small cell and the recovery at the end
nodes. Shorter uplink messages are zero padded at the tail, and the
private part of a split is the message prefix."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import math

import numpy as np
from vistutils.text import monoSpace

from wewire.core import LengthMismatch, ProtocolError
from wewire.core import UplinkLongerThanDownlink
from wewire.protocol import Message, Origin, allBitStrings, padBits, xorBits


def privateLength(alpha: float, length: int) -> int:
  """Returns ⌈α·length⌉, the number of bits sent privately. The product
  is rounded to 9 decimals first, so that 0.3·10 gives 3."""
  if not 0 <= alpha <= 1:
    e = """The split factor must lie in [0, 1], but received: %s!"""
    raise ValueError(monoSpace(e % str(alpha)))
  return min(length, int(math.ceil(round(alpha * length, 9))))


def splitMessage(message: Message, alpha: float) -> tuple[Message, Message]:
  """Splits the message into the private prefix of ⌈α·len⌉ bits and the
  common suffix."""
  cut = privateLength(alpha, len(message))
  return (Message(message.bits[:cut], message.origin),
          Message(message.bits[cut:], message.origin))


def concatCommon(first: Message, second: Message) -> Message:
  """Concatenates the common parts of both downlink messages and records
  the boundary between them."""
  bits = np.concatenate([first.bits, second.bits])
  return Message(bits, Origin.BS_COMMON, len(first))


def extractCommon(common: Message,
                  index: int = None) -> tuple[Message, Message] | Message:
  """Splits a common message at its recorded boundary. With an index,
  only the part intended for that small cell is returned."""
  if common.boundary is None:
    e = """The common message carries no boundary between its parts!"""
    raise ProtocolError(monoSpace(e))
  if not 0 <= common.boundary <= len(common):
    e = """The boundary %d lies outside the common message of %d bits!"""
    raise ProtocolError(monoSpace(e % (common.boundary, len(common))))
  first = Message(common.bits[:common.boundary], Origin.downlink(1))
  second = Message(common.bits[common.boundary:], Origin.downlink(2))
  if index is None:
    return first, second
  if index not in (1, 2):
    e = """Expected small cell index 1 or 2, but received: %s!"""
    raise ValueError(monoSpace(e % str(index)))
  return (first, second)[index - 1]


def xorEncode(downlink: Message, uplink: Message) -> Message:
  """Pads the uplink message with zeros at the tail to the downlink
  length and returns the bitwise XOR."""
  if len(uplink) > len(downlink):
    e = """The uplink message has %d bits, which is more than the %d bits 
    of the downlink message!"""
    raise UplinkLongerThanDownlink(monoSpace(e % (len(uplink),
                                                  len(downlink))))
  padded = padBits(uplink.bits, len(downlink))
  return Message(xorBits(downlink.bits, padded))


def recoverAtEndnodes(broadcast: Message,
                      knownDownlink: Message,
                      knownUplink: Message,
                      uplinkLength: int) -> tuple[Message, Message]:
  """Recovers the uplink message at the base station, which knows the
  downlink message, and the downlink message at the mobile, which knows
  its own uplink message. Returns (uplink at BS, downlink at MS)."""
  if len(knownDownlink) != len(broadcast):
    e = """The broadcast has %d bits but the downlink message known at the 
    base station has %d!"""
    raise LengthMismatch(monoSpace(e % (len(broadcast),
                                        len(knownDownlink))))
  if len(knownUplink) != uplinkLength or uplinkLength > len(broadcast):
    e = """The uplink length %d is inconsistent with the known uplink 
    message of %d bits and the broadcast of %d bits!"""
    raise LengthMismatch(monoSpace(e % (uplinkLength, len(knownUplink),
                                        len(broadcast))))
  atBs = xorBits(broadcast.bits, knownDownlink.bits)[:uplinkLength]
  atMs = xorBits(broadcast.bits, padBits(knownUplink.bits, len(broadcast)))
  return (Message(atBs, knownUplink.origin),
          Message(atMs, knownDownlink.origin))


def exhaustiveXorCheck(maxBits: int,
                       chunk: int = 256) -> tuple[int, int]:
  """Encodes and recovers every downlink message of up to maxBits bits
  against every uplink message no longer than it. Returns the number of
  pairs checked and the number of pairs not recovered exactly at both
  end nodes."""
  checked, errors = 0, 0
  for n in range(maxBits + 1):
    downlinks = allBitStrings(n)
    for k in range(n + 1):
      uplinks = allBitStrings(k)
      padded = padBits(uplinks, n)
      for start in range(0, downlinks.shape[0], chunk):
        dl = downlinks[start:start + chunk][:, None, :]
        encoded = xorBits(dl, padded[None, :, :])
        atBs = xorBits(encoded, dl)[..., :k]
        atMs = xorBits(encoded, padded[None, :, :])
        okBs = np.all(atBs == uplinks[None, :, :], axis=-1)
        okMs = np.all(atMs == dl, axis=-1)
        checked += okBs.size
        errors += int(np.sum(~(okBs & okMs)))
  return checked, errors
