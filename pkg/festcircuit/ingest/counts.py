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


"""Per-country appearance counts and record summaries."""

from collections.abc import Iterable, Sequence
import collections
import dataclasses
import fractions

from absl import logging
from festcircuit.ingest import films
from festcircuit.typing import screening


def country_appearance_counts(
    records: Iterable[screening.ScreeningRecord],
    weighted: bool,
) -> dict[str, fractions.Fraction]:
  """Counts festival appearances per producer country.

  Args:
    records: collapsed screening records.
    weighted: if False every (record, producer) pair counts 1. If True each
      record splits one unit equally across its producers.

  Returns:
    Exact counts per country code. Weighted counts sum to the number of
    records; unweighted counts sum to the number of producer rows.
  """
  counts: dict[str, fractions.Fraction] = collections.defaultdict(
      fractions.Fraction
  )
  for record in records:
    share = record.coproduction_weight if weighted else fractions.Fraction(1)
    for producer in record.producer_countries:
      counts[producer] += share
  logging.info(
      'Counted %s %s appearances over %d countries.',
      sum(counts.values()),
      'weighted' if weighted else 'unweighted',
      len(counts),
  )
  return dict(counts)


def yearly_appearance_counts(
    records: Iterable[screening.ScreeningRecord],
) -> dict[str, dict[int, int]]:
  """Counts unweighted appearances per producer country and event year."""
  counts: dict[str, dict[int, int]] = collections.defaultdict(
      lambda: collections.defaultdict(int)
  )
  for record in records:
    for producer in record.producer_countries:
      counts[producer][record.event_year] += 1
  return {code: dict(by_year) for code, by_year in counts.items()}


def country_film_counts(
    records: Iterable[screening.ScreeningRecord],
) -> dict[str, int]:
  """Counts distinct films each country took part in producing."""
  country_films: dict[str, set[str]] = collections.defaultdict(set)
  for record in records:
    key = record.film_key or films.film_key(record.identity)
    for producer in record.producer_countries:
      country_films[producer].add(key)
  return {code: len(keys) for code, keys in country_films.items()}


@dataclasses.dataclass(frozen=True, kw_only=True)
class RecordSummary:
  """Descriptive statistics of a record set.

  Attributes:
    records: collapsed film-festival entries.
    entries: entries re-expanded to one row per producer country.
    films: distinct films.
    festivals: distinct festival editions.
    series: distinct festival series.
    countries: distinct producer or host countries.
    producer_countries: distinct producer countries.
    primary_producer_countries: distinct first-listed producer countries.
    mean_year_lag: mean of event year minus production year, None if empty.
  """

  records: int
  entries: int
  films: int
  festivals: int
  series: int
  countries: int
  producer_countries: int
  primary_producer_countries: int
  mean_year_lag: float | None


def summarize_records(
    records: Sequence[screening.ScreeningRecord],
) -> RecordSummary:
  """Returns descriptive statistics of `records`."""
  producers = {code for r in records for code in r.producer_countries}
  hosts = {r.host_country for r in records}
  lags = [r.event_year - r.production_year for r in records]
  return RecordSummary(
      records=len(records),
      entries=sum(r.producer_count for r in records),
      films=films.count_films(records),
      festivals=len({r.festival_id for r in records}),
      series=len({r.festival_series_id for r in records}),
      countries=len(producers | hosts),
      producer_countries=len(producers),
      primary_producer_countries=len(
          {r.producer_countries[0] for r in records}
      ),
      mean_year_lag=sum(lags) / len(lags) if lags else None,
  )
