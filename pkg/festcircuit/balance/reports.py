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


"""Distributions of producer-country attributes over circuit entries."""

from collections.abc import Callable, Mapping, Sequence
import collections
import dataclasses
import enum
import functools
import math

from absl import logging
from festcircuit import errors
from festcircuit.balance import accreditation as accreditation_lib
from festcircuit.balance import expectations
from festcircuit.socioeconomic import profiles as profiles_lib
from festcircuit.typing import country
from festcircuit.typing import screening
from festcircuit.utils import audit as audit_lib
from festcircuit.utils import concurrency
import numpy as np
import pandas as pd

_MODULE = 'balance'

REPORT_COLUMNS = (
    'split',
    'group',
    'year',
    'attribute',
    'observed_log_mean',
    'uniform',
    'proportional',
    'n_entries',
)

LOG_VALUE_COLUMNS = ('split', 'group', 'year', 'attribute', 'log_value')


@enum.unique
class Split(enum.Enum):
  ALL = 'all'
  ACCREDITATION = 'accreditation'
  REGION = 'region'
  FESTIVAL_SERIES = 'festival_series'


@dataclasses.dataclass(frozen=True, kw_only=True)
class BalanceReport:
  """Observed and baseline log10 means of one group of entries.

  Attributes:
    attribute: the producer-country attribute.
    split: how the entries were grouped.
    group: the group label, e.g. `A-list` or a region.
    year: event year for festival-series trajectories, else None.
    log_values: log10 attribute of every (record, producer) pair.
    observed_log_mean: log10 of the geometric mean of the entries.
    uniform_expectation: log10 mean under equal entries per country.
    proportional_expectation: log10 mean under attribute-proportional entries.
  """

  attribute: country.Attribute
  split: Split
  group: str
  year: int | None
  log_values: np.ndarray
  observed_log_mean: float
  uniform_expectation: float
  proportional_expectation: float

  def __post_init__(self):
    for name in (
        'observed_log_mean',
        'uniform_expectation',
        'proportional_expectation',
    ):
      if not math.isfinite(getattr(self, name)):
        raise ValueError(f'{name} must be finite')

  @property
  def n_entries(self) -> int:
    return len(self.log_values)


def _log_attribute(
    profiles: Mapping[str, country.CountryProfile],
    attribute: country.Attribute,
    code: str,
    year: int,
) -> float:
  profile = profiles.get(code)
  if profile is None:
    raise errors.CovariateUnavailableError(f'{code}: no country profile')
  return math.log10(profiles_lib.attribute_value(profile, attribute, year))


def entry_log_values(
    records: Sequence[screening.ScreeningRecord],
    attribute: country.Attribute,
    profiles: Mapping[str, country.CountryProfile],
) -> np.ndarray:
  """Log10 attribute of each producer of each record at its event year.

  Returns:
    One value per (record, producer) pair, in record order.

  Raises:
    CovariateUnavailableError: if a producer lacks the attribute.
  """
  lookup = functools.cache(
      functools.partial(_log_attribute, profiles, attribute)
  )
  return np.array(
      [
          lookup(producer, record.event_year)
          for record in records
          for producer in record.producer_countries
      ],
      dtype=float,
  )


def records_with_attribute(
    records: Sequence[screening.ScreeningRecord],
    attribute: country.Attribute,
    profiles: Mapping[str, country.CountryProfile],
    audit: audit_lib.AuditTrail | None = None,
) -> list[screening.ScreeningRecord]:
  """Drops records with a producer lacking `attribute`, reporting them."""

  @functools.cache
  def available(code: str, year: int) -> bool:
    try:
      _log_attribute(profiles, attribute, code, year)
    except errors.CovariateUnavailableError:
      return False
    return True

  kept = []
  missing = collections.Counter()
  for record in records:
    absent = [
        code
        for code in record.producer_countries
        if not available(code, record.event_year)
    ]
    if absent:
      missing.update(absent)
    else:
      kept.append(record)
  for code, dropped in sorted(missing.items()):
    audit_lib.exclude(
        audit,
        _MODULE,
        code,
        f'no {attribute.value}; {dropped} records left out',
    )
  return kept


def geometric_mean_log(
    values: Sequence[float] | np.ndarray,
    weights: Sequence[float] | np.ndarray | None = None,
) -> float:
  """Returns the mean of log values, the log of their geometric mean.

  Raises:
    ValueError: if `values` is empty.
  """
  values = np.asarray(values, dtype=float)
  if values.size == 0:
    raise ValueError('Cannot average an empty list of log values.')
  return float(np.average(values, weights=weights))


def _coproduction_weights(
    records: Sequence[screening.ScreeningRecord],
) -> np.ndarray:
  return np.array([
      1.0 / record.producer_count
      for record in records
      for _ in record.producer_countries
  ])


def balance_report(
    records: Sequence[screening.ScreeningRecord],
    attribute: country.Attribute,
    profiles: Mapping[str, country.CountryProfile],
    universe: Mapping[str, float],
    *,
    split: Split = Split.ALL,
    group: str = 'all',
    year: int | None = None,
    weighted: bool = False,
) -> BalanceReport:
  """Builds the report of one group of records.

  Args:
    records: the group's records, non-empty.
    attribute: the attribute to report on.
    profiles: country profiles.
    universe: attribute of every participating country, for the baselines.
    split: the split the group belongs to.
    group: the group label.
    year: the event year of a trajectory point.
    weighted: if True, the observed mean weights pairs by 1/n co-production
      shares instead of counting each pair fully.
  """
  log_values = entry_log_values(records, attribute, profiles)
  weights = _coproduction_weights(records) if weighted else None
  return BalanceReport(
      attribute=attribute,
      split=split,
      group=group,
      year=year,
      log_values=log_values,
      observed_log_mean=geometric_mean_log(log_values, weights),
      uniform_expectation=expectations.uniform_expectation(universe),
      proportional_expectation=expectations.proportional_expectation(universe),
  )


def group_records(
    records: Sequence[screening.ScreeningRecord],
    split: Split,
    *,
    accreditation: accreditation_lib.AccreditationTable | None = None,
    profiles: Mapping[str, country.CountryProfile] | None = None,
    region_groups: Mapping[str, str] | None = None,
) -> dict[tuple[str, int | None], list[screening.ScreeningRecord]]:
  """Partitions records into the groups of `split`.

  Region groups use the region of the host country, relabelled through
  `region_groups` when given. Festival-series groups are further split by
  event year.

  Returns:
    (group, year) to records, sorted by group then year.
  """
  key: Callable[[screening.ScreeningRecord], tuple[str, int | None]]
  match split:
    case Split.ALL:
      key = lambda record: ('all', None)
    case Split.ACCREDITATION:
      table = accreditation or accreditation_lib.AccreditationTable()
      key = lambda record: (
          table.classify(record.festival_series_id).label,
          None,
      )
    case Split.REGION:
      profiles = profiles or {}
      region_groups = region_groups or {}

      def key(record):
        profile = profiles.get(record.host_country)
        region = profile.region if profile and profile.region else 'Unknown'
        return (region_groups.get(region, region), None)

    case Split.FESTIVAL_SERIES:
      key = lambda record: (record.festival_series_id, record.event_year)
    case _:
      raise ValueError(f'Unknown split {split!r}')
  groups: dict[tuple[str, int | None], list[screening.ScreeningRecord]] = {}
  for record in records:
    groups.setdefault(key(record), []).append(record)
  return dict(
      sorted(groups.items(), key=lambda item: (item[0][0], item[0][1] or 0))
  )


def split_report(
    records: Sequence[screening.ScreeningRecord],
    split: Split,
    attribute: country.Attribute,
    profiles: Mapping[str, country.CountryProfile],
    universe: Mapping[str, float],
    *,
    accreditation: accreditation_lib.AccreditationTable | None = None,
    region_groups: Mapping[str, str] | None = None,
    weighted: bool = False,
    max_workers: int | None = None,
) -> list[BalanceReport]:
  """Reports every group of `split`.

  The baselines come from `universe`, the participating countries of the
  whole circuit, so they are shared by all groups.

  Returns:
    One report per group, sorted by group then year. Group sizes sum to the
    entry count of `records`.
  """
  groups = group_records(
      records,
      split,
      accreditation=accreditation,
      profiles=profiles,
      region_groups=region_groups,
  )
  tasks = {
      f'{group}/{year}': functools.partial(
          balance_report,
          group_members,
          attribute,
          profiles,
          universe,
          split=split,
          group=group,
          year=year,
          weighted=weighted,
      )
      for (group, year), group_members in groups.items()
  }
  reports = list(
      concurrency.run_tasks(tasks, max_workers=max_workers).values()
  )
  logging.info(
      'Balance split %s on %s: %d groups.',
      split.value,
      attribute.value,
      len(reports),
  )
  return reports


def reports_frame(reports: Sequence[BalanceReport]) -> pd.DataFrame:
  """Tabulates reports with the columns in `REPORT_COLUMNS`."""
  return pd.DataFrame(
      [
          {
              'split': r.split.value,
              'group': r.group,
              'year': r.year,
              'attribute': r.attribute.value,
              'observed_log_mean': r.observed_log_mean,
              'uniform': r.uniform_expectation,
              'proportional': r.proportional_expectation,
              'n_entries': r.n_entries,
          }
          for r in reports
      ],
      columns=list(REPORT_COLUMNS),
  ).astype({'year': 'Int64'})


def log_values_frame(reports: Sequence[BalanceReport]) -> pd.DataFrame:
  """Long table of the raw log values of every report, for density plots."""
  return pd.DataFrame(
      [
          {
              'split': r.split.value,
              'group': r.group,
              'year': r.year,
              'attribute': r.attribute.value,
              'log_value': value,
          }
          for r in reports
          for value in r.log_values
      ],
      columns=list(LOG_VALUE_COLUMNS),
  ).astype({'year': 'Int64'})
