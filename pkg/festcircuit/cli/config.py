# Copyright 2024 The festcircuit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Run configuration: a YAML file, flag overrides and dataset paths.

A configuration file looks like

  entries: cinando_entries.csv
  world_bank: wb_population_gdp.csv
  uis: uis_feature_films.csv
  period: [2012, 2021]
  reference_country: FRA
  repeats: 100
  seed: 0
  normalization: radius
  thresholds:
    population: [5.0e+6, 1.0e+8, 3.0e+8]
    gdp_per_capita: [3000, 50000]

Relative dataset paths resolve against `FESTCIRCUIT_DATA_DIR` when it is set,
otherwise against the directory of the configuration file.
"""

from collections.abc import Mapping, Sequence
import dataclasses
import hashlib
import json
import os
from typing import Any

from absl import logging
from festcircuit import errors
from festcircuit.diversity import bootstrap
from festcircuit.diversity import embeddings
from festcircuit.diversity import metric
from festcircuit.flows import star_network
from festcircuit.flows import trade_balance
from festcircuit.regression import univariate
from festcircuit.socioeconomic import covariates
from festcircuit.socioeconomic import world_bank as world_bank_lib
from festcircuit.utils import formatting
import yaml

DATA_DIR_ENV = 'FESTCIRCUIT_DATA_DIR'

DEFAULT_PERIOD = (2012, 2021)
DEFAULT_OUT_DIR = 'festcircuit_out'
DEFAULT_POPULATION_THRESHOLDS = (5e6, 2e7, 1e8, 3e8)
DEFAULT_GDP_PER_CAPITA_THRESHOLDS = (3e3, 1e4, 2.5e4, 5e4)

# Config keys naming input files. Only `entries` is always required.
PATH_KEYS = (
    'entries',
    'world_bank',
    'uis',
    'capitals',
    'aliases',
    'accreditation',
    'language_vectors',
    'regions',
)
# Keys that do not change the content of any output file.
_UNHASHED_KEYS = ('out_dir', 'workers')


def _period(value: Any, key: str) -> tuple[int, int]:
  try:
    start, end = (int(year) for year in value)
  except (TypeError, ValueError):
    raise errors.ConfigError(
        f'{key} must be a [start, end] pair of years, got {value!r}'
    ) from None
  if start > end:
    raise errors.ConfigError(f'{key} start {start} is after end {end}')
  return start, end


def _thresholds(value: Any, key: str) -> tuple[float, ...]:
  try:
    thresholds = tuple(float(threshold) for threshold in value)
  except (TypeError, ValueError):
    raise errors.ConfigError(
        f'{key} must be a list of numbers, got {value!r}'
    ) from None
  if list(thresholds) != sorted(thresholds):
    raise errors.ConfigError(f'{key} must be ascending, got {list(value)}')
  return thresholds


@dataclasses.dataclass(frozen=True, kw_only=True)
class RunConfig:
  """Everything a run depends on.

  Dataset paths are absolute once the config is loaded. Optional datasets
  left unset fall back to the bundled tables (capitals, regions) or disable
  the analyses that need them.
  """

  entries: str
  world_bank: str | None = None
  uis: str | None = None
  capitals: str | None = None
  aliases: str | None = None
  accreditation: str | None = None
  language_vectors: str | None = None
  regions: str | None = None
  period: tuple[int, int] = DEFAULT_PERIOD
  reference_country: str = covariates.DEFAULT_REFERENCE_COUNTRY
  repeats: int = bootstrap.DEFAULT_REPEATS
  seed: int = 0
  out_dir: str = DEFAULT_OUT_DIR
  workers: int = 1
  population_thresholds: tuple[float, ...] = DEFAULT_POPULATION_THRESHOLDS
  gdp_per_capita_thresholds: tuple[float, ...] = (
      DEFAULT_GDP_PER_CAPITA_THRESHOLDS
  )
  min_hosted_events: int = trade_balance.DEFAULT_MIN_HOSTED_EVENTS
  star_countries: tuple[str, ...] = ()
  star_coverage: float = star_network.DEFAULT_COVERAGE
  embedding_dimension: int = embeddings.DEFAULT_GENRE_DIMENSION
  normalization: metric.Normalization = metric.DEFAULT_NORMALIZATION
  region_groups: Mapping[str, str] = dataclasses.field(default_factory=dict)
  language_fallbacks: Mapping[str, str] = dataclasses.field(
      default_factory=dict
  )
  world_bank_indicators: world_bank_lib.WorldBankIndicators = (
      world_bank_lib.WorldBankIndicators()
  )
  uis_period: tuple[int, int] = univariate.UIS_PERIOD

  def __post_init__(self):
    _period(self.period, 'period')
    _period(self.uis_period, 'uis_period')
    if self.repeats < 1:
      raise errors.ConfigError(f'repeats must be >= 1, got {self.repeats}')
    if self.workers < 1:
      raise errors.ConfigError(f'workers must be >= 1, got {self.workers}')
    if self.embedding_dimension < 1:
      raise errors.ConfigError('embedding_dimension must be >= 1')
    if not 0.0 < self.star_coverage <= 1.0:
      raise errors.ConfigError(
          f'star_coverage must be in (0, 1], got {self.star_coverage}'
      )

  def missing_paths(self) -> dict[str, str]:
    """Configured input files that do not exist, keyed by config key."""
    return {
        key: path
        for key in PATH_KEYS
        if (path := getattr(self, key)) is not None
        and not os.path.isfile(path)
    }

  def check_paths(self) -> None:
    """Raises ConfigError listing every configured file that is missing."""
    missing = self.missing_paths()
    if missing:
      listing = ', '.join(f'{key}={path}' for key, path in missing.items())
      raise errors.ConfigError(f'missing input files: {listing}')

  def to_dict(self) -> dict[str, Any]:
    return formatting.to_jsonable(self)

  def fingerprint(self) -> str:
    """SHA-256 of the settings that determine the outputs."""
    settings = {
        key: value
        for key, value in self.to_dict().items()
        if key not in _UNHASHED_KEYS
    }
    canonical = json.dumps(settings, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def data_root(config_path: str | os.PathLike[str] | None = None) -> str:
  """The directory relative dataset paths resolve against."""
  root = os.environ.get(DATA_DIR_ENV)
  if root:
    return os.path.abspath(root)
  if config_path is not None:
    return os.path.dirname(os.path.abspath(config_path))
  return os.getcwd()


def resolve_path(path: str | None, root: str) -> str | None:
  if path is None or not str(path).strip():
    return None
  path = os.path.expanduser(str(path))
  return os.path.normpath(os.path.join(root, path))


def from_mapping(
    raw: Mapping[str, Any],
    root: str,
) -> RunConfig:
  """Builds a config from parsed YAML.

  Args:
    raw: the parsed document.
    root: directory relative dataset paths resolve against.

  Raises:
    ConfigError: on unknown keys, missing `entries` or invalid values.
  """
  raw = dict(raw)
  fields = {}
  for key in PATH_KEYS:
    if key in raw:
      fields[key] = resolve_path(raw.pop(key), root)
  if not fields.get('entries'):
    raise errors.ConfigError('the config must name an entries file')
  if 'period' in raw:
    fields['period'] = _period(raw.pop('period'), 'period')
  if 'uis_period' in raw:
    fields['uis_period'] = _period(raw.pop('uis_period'), 'uis_period')
  for key, cast in (
      ('reference_country', str),
      ('repeats', int),
      ('seed', int),
      ('out_dir', str),
      ('workers', int),
      ('min_hosted_events', int),
      ('star_coverage', float),
      ('embedding_dimension', int),
  ):
    if key in raw:
      try:
        fields[key] = cast(raw.pop(key))
      except (TypeError, ValueError):
        raise errors.ConfigError(f'invalid value for {key}') from None
  if 'normalization' in raw:
    value = raw.pop('normalization')
    try:
      fields['normalization'] = metric.Normalization(str(value).lower())
    except ValueError:
      choices = [n.value for n in metric.Normalization]
      raise errors.ConfigError(
          f'normalization must be one of {choices}, got {value!r}'
      ) from None
  if 'star_countries' in raw:
    fields['star_countries'] = tuple(str(c) for c in raw.pop('star_countries'))
  for key in ('region_groups', 'language_fallbacks'):
    if key in raw:
      value = raw.pop(key) or {}
      if not isinstance(value, Mapping):
        raise errors.ConfigError(f'{key} must be a mapping')
      fields[key] = {str(k): str(v) for k, v in value.items()}
  thresholds = raw.pop('thresholds', None) or {}
  for key in ('population', 'gdp_per_capita'):
    if key in thresholds:
      fields[f'{key}_thresholds'] = _thresholds(
          thresholds[key], f'thresholds.{key}'
      )
  unknown_thresholds = set(thresholds) - {'population', 'gdp_per_capita'}
  indicators = raw.pop('world_bank_indicators', None) or {}
  unknown_indicators = set(indicators) - {'population', 'gdp'}
  if indicators:
    fields['world_bank_indicators'] = world_bank_lib.WorldBankIndicators(**{
        key: str(value)
        for key, value in indicators.items()
        if key not in unknown_indicators
    })
  unknown = sorted(
      list(raw)
      + [f'thresholds.{key}' for key in unknown_thresholds]
      + [f'world_bank_indicators.{key}' for key in unknown_indicators]
  )
  if unknown:
    raise errors.ConfigError(f'unknown config keys: {unknown}')
  return RunConfig(**fields)


def load_config(path: str | os.PathLike[str]) -> RunConfig:
  """Reads a YAML run configuration.

  Raises:
    ConfigError: if the file cannot be read or holds an invalid config.
  """
  try:
    with open(path, encoding='utf-8') as f:
      raw = yaml.safe_load(f)
  except OSError as e:
    raise errors.ConfigError(f'cannot read config {path}: {e}') from None
  except yaml.YAMLError as e:
    raise errors.ConfigError(f'{path}: invalid YAML: {e}') from None
  if not isinstance(raw, Mapping):
    raise errors.ConfigError(f'{path}: expected a mapping of settings')
  config = from_mapping(raw, data_root(path))
  logging.info('Loaded run config from %s.', path)
  return config


def with_overrides(
    config: RunConfig,
    *,
    period: Sequence[int] | None = None,
    seed: int | None = None,
    repeats: int | None = None,
    reference_country: str | None = None,
    out_dir: str | None = None,
    workers: int | None = None,
) -> RunConfig:
  """Returns `config` with every non-None override applied."""
  overrides = {
      'seed': seed,
      'repeats': repeats,
      'reference_country': reference_country,
      'out_dir': out_dir,
      'workers': workers,
  }
  if period is not None:
    overrides['period'] = _period(period, 'period')
  changes = {
      key: value for key, value in overrides.items() if value is not None
  }
  if changes:
    logging.info('Flag overrides: %s', sorted(changes))
  return dataclasses.replace(config, **changes)
