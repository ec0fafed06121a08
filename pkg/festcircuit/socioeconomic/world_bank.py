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


"""Readers for World Bank indicators and UIS film production counts."""

from collections.abc import Mapping
import dataclasses
import os

from absl import logging
from festcircuit import errors
from festcircuit.ingest import aliases as aliases_lib
from festcircuit.utils import audit as audit_lib
import pandas as pd

WORLD_BANK_COLUMNS = ('country_name', 'indicator', 'year', 'value')
UIS_COLUMNS = ('country_name', 'year', 'feature_films_produced')

_MODULE = 'socioeconomic'

YearlySeries = Mapping[int, float]


@dataclasses.dataclass(frozen=True)
class WorldBankIndicators:
  """Indicator codes selecting the series to read.

  The defaults are total population and GDP in current US$.
  """

  population: str = 'SP.POP.TOTL'
  gdp: str = 'NY.GDP.MKTP.CD'


@dataclasses.dataclass(frozen=True, kw_only=True)
class WorldBankData:
  """Observed yearly series per canonical country code."""

  indicators: WorldBankIndicators
  population: Mapping[str, YearlySeries]
  gdp: Mapping[str, YearlySeries]

  def codes(self) -> set[str]:
    return set(self.population) | set(self.gdp)


def _read(
    path: str | os.PathLike[str], columns: tuple[str, ...]
) -> pd.DataFrame:
  frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding='utf-8')
  missing = [column for column in columns if column not in frame.columns]
  if missing:
    raise errors.SchemaError(f'{path}: missing columns {missing}')
  return frame


def _resolve_codes(
    frame: pd.DataFrame, country_aliases: aliases_lib.CountryAliasTable
) -> pd.DataFrame:
  """Adds a `code` column and drops rows of ignored names."""
  codes = country_aliases.resolve_all(frame['country_name'])
  frame = frame.assign(code=frame['country_name'].map(codes))
  return frame[frame['code'].notna()]


def _numeric(frame: pd.DataFrame, column: str) -> pd.DataFrame:
  """Parses year and `column`, dropping rows without a value."""
  frame = frame.assign(
      year=pd.to_numeric(frame['year'], errors='coerce'),
      **{column: pd.to_numeric(frame[column], errors='coerce')},
  )
  return frame.dropna(subset=['year', column])


def load_world_bank(
    path: str | os.PathLike[str],
    country_aliases: aliases_lib.CountryAliasTable,
    indicators: WorldBankIndicators = WorldBankIndicators(),
    audit: audit_lib.AuditTrail | None = None,
) -> WorldBankData:
  """Reads population and GDP from a long-format World Bank extract.

  Args:
    path: CSV with the columns in `WORLD_BANK_COLUMNS`. Rows of other
      indicators are ignored; empty values count as missing years.
    country_aliases: resolves `country_name`; names mapped to the ignore code
      (e.g. regional aggregates) are dropped.
    indicators: the indicator codes to read.
    audit: receives the non-positive values that were dropped.

  Returns:
    The observed series, not interpolated.

  Raises:
    SchemaError: if columns are missing.
    UnmappedCountryError: listing all unresolved country names.
  """
  frame = _read(path, WORLD_BANK_COLUMNS)
  wanted = [indicators.population, indicators.gdp]
  frame = frame[frame['indicator'].isin(wanted)]
  frame = _numeric(_resolve_codes(frame, country_aliases), 'value')
  non_positive = frame['value'] <= 0
  for row in frame[non_positive].itertuples(index=False):
    audit_lib.exclude(
        audit,
        _MODULE,
        f'{row.code}/{row.indicator}/{int(row.year)}',
        f'non-positive value {row.value}',
    )
  frame = frame[~non_positive]

  def _series(indicator: str) -> dict[str, dict[int, float]]:
    selected = frame[frame['indicator'] == indicator]
    series: dict[str, dict[int, float]] = {}
    for code, year, value in zip(
        selected['code'], selected['year'], selected['value']
    ):
      series.setdefault(code, {})[int(year)] = float(value)
    return series

  result = WorldBankData(
      indicators=indicators,
      population=_series(indicators.population),
      gdp=_series(indicators.gdp),
  )
  logging.info(
      'Read World Bank series for %d countries (population %s, GDP %s).',
      len(result.codes()),
      indicators.population,
      indicators.gdp,
  )
  return result


def load_uis(
    path: str | os.PathLike[str],
    country_aliases: aliases_lib.CountryAliasTable,
) -> dict[str, dict[int, int]]:
  """Reads UIS feature film production counts per country and year.

  Raises:
    SchemaError: if columns are missing.
    UnmappedCountryError: listing all unresolved country names.
  """
  frame = _numeric(
      _resolve_codes(_read(path, UIS_COLUMNS), country_aliases),
      'feature_films_produced',
  )
  counts: dict[str, dict[int, int]] = {}
  for code, year, produced in zip(
      frame['code'], frame['year'], frame['feature_films_produced']
  ):
    counts.setdefault(code, {})[int(year)] = int(produced)
  logging.info('Read UIS production counts for %d countries.', len(counts))
  return counts
