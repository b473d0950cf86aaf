"""WewSettings provides the configuration of the 'wewire' command line
tools. The configuration is a nested JSON document merged over the
shipped default document. Keys are dotted or slash separated paths such
as 'scenario.M' or 'scenario/M', and a bare leaf name such as 'alpha1'
resolves when it is unique."""
#  GPL-3.0 license
#  Copyright (c) 2024 Asger Jon Vistisen
from __future__ import annotations

import copy
import json
import os
from typing import Any, Callable

from icecream import ic
from vistutils.text import monoSpace
from vistutils.waitaminute import typeMsg

from wewire.channel import ScenarioConfig
from wewire.experiment import ExperimentConfig
from wewire.rates import RateRequirements, SplitFactors

ic.configureOutput(includeContext=True)

DEFAULT_CONFIG = os.path.join(os.path.dirname(__file__),
                              'default_config.json')


def _flatten(data: dict[str, Any], prefix: str = '') -> dict[str, Any]:
  """Returns the leaves of the nested document by dotted path."""
  out = {}
  for name, value in data.items():
    path = '%s.%s' % (prefix, name) if prefix else name
    if isinstance(value, dict):
      out |= _flatten(value, path)
    else:
      out[path] = value
  return out


def _merge(base: dict[str, Any], update: dict[str, Any],
           prefix: str = '') -> dict[str, Any]:
  """Merges update into a copy of base. Keys absent from base are
  rejected."""
  out = copy.deepcopy(base)
  for name, value in update.items():
    path = '%s.%s' % (prefix, name) if prefix else name
    if name not in out:
      e = """Unknown configuration key '%s'. Valid keys are: %s"""
      valid = ', '.join(sorted(_flatten(base, prefix)))
      raise KeyError(monoSpace(e % (path, valid)))
    if isinstance(out[name], dict):
      if not isinstance(value, dict):
        raise TypeError(typeMsg(path, value, dict))
      out[name] = _merge(out[name], value, path)
    else:
      out[name] = value
  return out


class WewSettings:
  """The 'WewSettings' class provides a convenient interface for working
  with the configuration document of an invocation."""

  __on_missing__ = None

  def __init__(self, path: str = None, onMissing: Callable = None) -> None:
    """Initialize the WewSettings object from the defaults, merged with
    the document at path when given."""
    with open(DEFAULT_CONFIG, 'r', encoding='utf-8') as file:
      self.__data__ = json.load(file)
    if path is not None:
      with open(path, 'r', encoding='utf-8') as file:
        document = json.load(file)
      if not isinstance(document, dict):
        raise TypeError(typeMsg('config', document, dict))
      self.__data__ = _merge(self.__data__, document)
    if onMissing is not None:
      if callable(onMissing):
        self.__on_missing__ = onMissing

  @staticmethod
  def _parseInt(val: str) -> int | None:
    """Convert a string to an integer."""
    digits = val[1:] if val.startswith('-') else val
    if digits and all([c in '0123456789_' for c in digits]):
      try:
        return int(val)
      except ValueError:
        return None
    return None

  @staticmethod
  def _parseFloat(val: str) -> float | None:
    """Convert a string to a float."""
    try:
      return float(val)
    except ValueError:
      return None

  @staticmethod
  def _parseBool(val: str) -> bool | None:
    """Convert 'true' or 'false' to a boolean."""
    return {'true': True, 'false': False}.get(val.strip().lower(), None)

  @staticmethod
  def _parseJson(val: str) -> Any:
    """Convert JSON lists, objects and null."""
    text = val.strip()
    if text.lower() in ['null', 'none']:
      return None
    if text[:1] in '[{' and text:
      return json.loads(text)
    raise ValueError

  @classmethod
  def parseValue(cls, val: str) -> Any:
    """Parses an override value as int, float, bool, null or JSON, in
    that order, falling back to the raw string."""
    intVal = cls._parseInt(val)
    if isinstance(intVal, int):
      return intVal
    floatVal = cls._parseFloat(val)
    if isinstance(floatVal, float):
      return floatVal
    boolVal = cls._parseBool(val)
    if isinstance(boolVal, bool):
      return boolVal
    try:
      return cls._parseJson(val)
    except ValueError:
      return val

  def keys(self) -> list[str]:
    """Every leaf key as a dotted path."""
    return sorted(_flatten(self.__data__))

  def resolveKey(self, key: str) -> str:
    """Returns the dotted path of the key, raising KeyError with the valid
    keys if it does not resolve to exactly one leaf."""
    if not isinstance(key, str):
      raise TypeError(typeMsg('key', key, str))
    path = '.'.join(w for w in key.replace('/', '.').split('.') if w)
    leaves = self.keys()
    if path in leaves:
      return path
    matches = [leaf for leaf in leaves if leaf.split('.')[-1] == path]
    if len(matches) == 1:
      return matches[0]
    if matches:
      e = """The key '%s' is ambiguous, it matches: %s"""
      raise KeyError(monoSpace(e % (key, ', '.join(matches))))
    e = """Unknown configuration key '%s'. Valid keys are: %s"""
    raise KeyError(monoSpace(e % (key, ', '.join(leaves))))

  def _wrapValue(self, *args) -> Any:
    """Get the value of the key."""
    key, fb = [*args, None, None][:2]
    if key is None:
      e = """At least a key must be provided!"""
      raise ValueError(monoSpace(e))
    try:
      path = self.resolveKey(key)
    except KeyError:
      self._onMissing(key, fb)
      return fb
    node = self.__data__
    for word in path.split('.'):
      node = node[word]
    if node is None:
      return fb
    return node

  def value(self, *args) -> Any:
    """Get the value of the key, or the fallback when the key is missing
    or null."""
    val = self._wrapValue(*args)
    if isinstance(val, str):
      parsed = self.parseValue(val)
      if not isinstance(parsed, (dict, list)):
        return parsed
    return copy.deepcopy(val)

  def setValue(self, key: str, value: Any) -> None:
    """Sets an existing key. Unknown keys raise KeyError."""
    path = self.resolveKey(key)
    words = path.split('.')
    node = self.__data__
    for word in words[:-1]:
      node = node[word]
    node[words[-1]] = value

  def override(self, assignment: str) -> None:
    """Applies a 'key=value' override."""
    if '=' not in assignment:
      e = """Overrides must have the form key=value, but received '%s'!"""
      raise ValueError(monoSpace(e % assignment))
    key, val = assignment.split('=', 1)
    self.setValue(key.strip(), self.parseValue(val.strip()))

  def _onMissing(self, key: str, fb: Any = None) -> Any:
    """Record missing value"""
    if self.__on_missing__ is None:
      return
    return self.__on_missing__(key, fb)

  def toJson(self) -> str:
    """The effective configuration as a JSON document."""
    return json.dumps(self.__data__, indent=2)

  @staticmethod
  def _pair(name: str, val: Any) -> tuple[float, float]:
    """A number or a pair of numbers as a pair of floats."""
    if isinstance(val, (int, float)) and not isinstance(val, bool):
      return float(val), float(val)
    if isinstance(val, (list, tuple)) and len(val) == 2:
      return float(val[0]), float(val[1])
    e = """'%s' must be a number or a pair of numbers, but received %s!"""
    raise ValueError(monoSpace(e % (name, str(val))))

  def rates(self) -> RateRequirements:
    """The wired reference rates."""
    uplink = self._pair('scenario.R_U', self.value('scenario.R_U'))
    downlink = self._pair('scenario.R_D', self.value('scenario.R_D'))
    return RateRequirements(uplink, downlink)

  def scenarioConfig(self) -> ScenarioConfig:
    """Builds the ScenarioConfig of the document."""
    sbsPower = self.value('scenario.P_S')
    if sbsPower is not None:
      sbsPower = self._pair('scenario.P_S', sbsPower)
    return ScenarioConfig(
      M=self.value('scenario.M'),
      sigma2=float(self.value('scenario.sigma2')),
      rates=self.rates(),
      sbsPower=sbsPower,
      nRealizations=self.value('scenario.n_realizations'),
      masterSeed=self.value('scenario.master_seed'),
      gammaSource=self.value('scenario.gamma_source'),
      channelGain=float(self.value('scenario.channel_gain')))

  def experimentConfig(self) -> ExperimentConfig:
    """Builds the ExperimentConfig of the document."""
    sweep = self.value('experiment.rd_sweep')
    if isinstance(sweep, (int, float)):
      sweep = [sweep]
    return ExperimentConfig(
      scenario=self.scenarioConfig(),
      rdSweep=tuple(sweep),
      schemes=tuple(self.value('experiment.schemes')),
      gridStep=float(self.value('experiment.grid_step')),
      includeSbsProblem=bool(self.value('experiment.include_sbs_problem')),
      averaging=self.value('experiment.averaging'),
      threads=self.value('experiment.threads'),
      tol=float(self.value('experiment.tol')),
      refinePasses=self.value('experiment.refine_passes'),
      debugLog=self.value('experiment.debug_log'))

  def splitFactors(self) -> SplitFactors | None:
    """The fixed split factors of a single instance, or None when both
    are unset. Setting only one of them is an error."""
    alpha1 = self.value('instance.alpha1')
    alpha2 = self.value('instance.alpha2')
    if alpha1 is None and alpha2 is None:
      return None
    if alpha1 is None or alpha2 is None:
      e = """Both alpha1 and alpha2 must be set, but received alpha1=%s 
      and alpha2=%s!"""
      raise ValueError(monoSpace(e % (alpha1, alpha2)))
    return SplitFactors(float(alpha1), float(alpha2))
