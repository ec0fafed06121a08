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


"""Country profiles and the covariates derived from them."""

from collections.abc import Callable, Iterable, Mapping, Sequence
import collections
import dataclasses
import os

from absl import logging
from festcircuit import data
from festcircuit import errors
from festcircuit.ingest import counts
from festcircuit.ingest import films
from festcircuit.socioeconomic import series as series_lib
from festcircuit.socioeconomic import world_bank
from festcircuit.typing import country
from festcircuit.typing import screening
from festcircuit.utils import audit as audit_lib
import numpy as np
import pandas as pd

_MODULE = 'socioeconomic'

Selector = country.Attribute | Callable[[country.CountryProfile, int], float]


def load_regions(
    path: str | os.PathLike[str] | None = None,
) -> dict[str, tuple[str, str]]:
  """Reads code -> (display name, region) from the bundled or a custom CSV."""
  path = data.REGIONS_CSV if path is None else path
  frame = pd.read_csv(path, dtype=str, keep_default_na=False)
  missing = {'code', 'name', 'region'} - set(frame.columns)
  if missing:
    raise errors.SchemaError(f'{path}: missing columns {sorted(missing)}')
  return {
      code: (name, region)
      for code, name, region in zip(
          frame['code'], frame['name'], frame['region']
      )
  }


def hosted_event_counts(
    records: Iterable[screening.ScreeningRecord],
) -> dict[str, int]:
  """Counts distinct festival editions hosted per country."""
  editions: dict[str, set[str]] = collections.defaultdict(set)
  for record in records:
    editions[record.host_country].add(record.festival_id)
  return {code: len(ids) for code, ids in editions.items()}


def hosted_series_counts(
    records: Iterable[screening.ScreeningRecord],
) -> dict[str, int]:
  """Counts distinct festival series hosted per country."""
  hosted: dict[str, set[str]] = collections.defaultdict(set)
  for record in records:
    hosted[record.host_country].add(record.festival_series_id)
  return {code: len(ids) for code, ids in hosted.items()}


def build_profiles(
    records: Sequence[screening.ScreeningRecord],
    world_bank_data: world_bank.WorldBankData,
    *,
    capitals: Mapping[str, tuple[float, float]],
    regions: Mapping[str, tuple[str, str]] | None = None,
    audit: audit_lib.AuditTrail | None = None,
) -> dict[str, country.CountryProfile]:
  """Assembles a profile for every country in the records or the WB data.

  Args:
    records: the analysis record set; gives hosted events and yearly
      appearance counts.
    world_bank_data: observed population and GDP series, gap-filled here.
    capitals: capital coordinates per country.
    regions: display name and region per country.
    audit: receives countries lacking capitals or WB series.

  Returns:
    Profiles keyed by country code, in sorted code order.
  """
  regions = load_regions() if regions is None else regions
  events = hosted_event_counts(records)
  yearly = counts.yearly_appearance_counts(records)
  participating = set(yearly) | set(events)
  profiles = {}
  for code in sorted(participating | world_bank_data.codes()):
    population = world_bank_data.population.get(code, {})
    gdp = world_bank_data.gdp.get(code, {})
    if code in participating:
      if not population or not gdp:
        audit_lib.warn(
            audit, _MODULE, f'{code} has no World Bank population or GDP'
        )
      if code not in capitals:
        audit_lib.warn(audit, _MODULE, f'{code} has no capital coordinates')
    name, region = regions.get(code, (code, ''))
    profiles[code] = country.CountryProfile(
        code=code,
        name=name,
        region=region,
        population_by_year=(
            series_lib.interpolate_series(population) if population else {}
        ),
        gdp_by_year=series_lib.interpolate_series(gdp) if gdp else {},
        capital_lat_lon=capitals.get(code),
        hosted_events=events.get(code, 0),
        appearance_weight_by_year=yearly.get(code, {}),
    )
  logging.info('Built %d country profiles.', len(profiles))
  return profiles


def population(profile: country.CountryProfile, year: int) -> float:
  """Population at `year`, carried from the nearest observation outside.

  Raises:
    CovariateUnavailableError: if the country has no population series.
  """
  if not profile.population_by_year:
    raise errors.CovariateUnavailableError(
        f'{profile.code}: no population series'
    )
  return series_lib.value_at(profile.population_by_year, year)


def gdp_per_capita(profile: country.CountryProfile, year: int) -> float:
  """GDP per capita in US$ at `year`.

  Each series is carried from its nearest observation when `year` lies
  outside its own span, as long as `year` lies inside at least one span.

  Raises:
    CovariateUnavailableError: if a series is missing or `year` lies outside
      both observed spans.
  """
  gdp_span = series_lib.span(profile.gdp_by_year)
  population_span = series_lib.span(profile.population_by_year)
  if gdp_span is None or population_span is None:
    raise errors.CovariateUnavailableError(
        f'{profile.code}: no GDP or population series'
    )
  spans = (gdp_span, population_span)
  if not any(first <= year <= last for first, last in spans):
    raise errors.CovariateUnavailableError(
        f'{profile.code}: {year} is outside the GDP and population spans'
    )
  return series_lib.value_at(profile.gdp_by_year, year) / population(
      profile, year
  )


def attribute_value(
    profile: country.CountryProfile,
    attribute: country.Attribute,
    year: int,
) -> float:
  """Returns `attribute` of the country at `year`."""
  match attribute:
    case country.Attribute.POPULATION:
      return population(profile, year)
    case country.Attribute.GDP_PER_CAPITA:
      return gdp_per_capita(profile, year)
  raise ValueError(f'Unknown attribute {attribute!r}')


@dataclasses.dataclass(frozen=True)
class WeightedAverage:
  """A period average and whether appearance weights were usable."""

  value: float
  weighted: bool


def weighted_period_average(
    profile: country.CountryProfile,
    selector: Selector,
    period: tuple[int, int] | None = None,
) -> WeightedAverage:
  """Averages a yearly value over a period, weighted by yearly appearances.

  Args:
    profile: the country.
    selector: an attribute, or a function of (profile, year) to average.
    period: inclusive year range. Defaults to the years with appearances.

  Returns:
    Σ w_y·v_y / Σ w_y with w_y the appearance count of year y. When every
    weight is zero the unweighted mean over the period is returned with
    `weighted=False`.

  Raises:
    EmptySeriesError: if there is no year to average over.
    CovariateUnavailableError: if a value is missing for a year with
      appearances, or for any year of the period when no year has any.
  """
  if period is None:
    years = sorted(profile.appearance_weight_by_year)
  else:
    years = list(range(period[0], period[1] + 1))
  if not years:
    raise errors.EmptySeriesError(f'{profile.code}: no years to average')
  if isinstance(selector, country.Attribute):
    attribute = selector
    selector = lambda p, y: attribute_value(p, attribute, y)
  weights = {
      year: float(profile.appearance_weight_by_year.get(year, 0))
      for year in years
  }
  # Years without appearances contribute nothing and are never evaluated.
  weighted_years = [year for year in years if weights[year] > 0]
  if weighted_years:
    values = [selector(profile, year) for year in weighted_years]
    return WeightedAverage(
        float(
            np.average(
                np.array(values, dtype=float),
                weights=[weights[year] for year in weighted_years],
            )
        ),
        True,
    )
  values = np.array([selector(profile, year) for year in years], dtype=float)
  logging.warning(
      '%s has no appearances in %s..%s; using the unweighted mean.',
      profile.code,
      years[0],
      years[-1],
  )
  return WeightedAverage(float(values.mean()), False)


COUNTRY_AGGREGATE_COLUMNS = (
    'code',
    'name',
    'region',
    'appearances',
    'weighted_appearances',
    'films',
    'hosted_events',
    'hosted_series',
    'mean_population',
    'mean_gdp_per_capita',
    'capital_lat',
    'capital_lon',
)


def country_aggregates(
    records: Sequence[screening.ScreeningRecord],
    profiles: Mapping[str, country.CountryProfile],
    period: tuple[int, int],
) -> pd.DataFrame:
  """Per-country table of appearances and covariates for map rendering.

  Covariates are averaged over `period` as in `weighted_period_average`.
  Countries without covariates get empty covariate cells.
  """
  unweighted = counts.country_appearance_counts(records, weighted=False)
  weighted = counts.country_appearance_counts(records, weighted=True)
  film_counts = counts.country_film_counts(records)
  series_counts = hosted_series_counts(records)
  rows = []
  for code in sorted(unweighted):
    profile = profiles.get(code, country.CountryProfile(code=code))
    row = {
        'code': code,
        'name': profile.name,
        'region': profile.region,
        'appearances': int(unweighted[code]),
        'weighted_appearances': float(weighted[code]),
        'films': film_counts[code],
        'hosted_events': profile.hosted_events,
        'hosted_series': series_counts.get(code, 0),
        'mean_population': np.nan,
        'mean_gdp_per_capita': np.nan,
        'capital_lat': np.nan,
        'capital_lon': np.nan,
    }
    for column, attribute in (
        ('mean_population', country.Attribute.POPULATION),
        ('mean_gdp_per_capita', country.Attribute.GDP_PER_CAPITA),
    ):
      try:
        row[column] = weighted_period_average(
            profile, attribute, period
        ).value
      except errors.FestCircuitError:
        pass
    if profile.capital_lat_lon is not None:
      row['capital_lat'], row['capital_lon'] = profile.capital_lat_lon
    rows.append(row)
  logging.info(
      'Aggregated %d countries over %d films.',
      len(rows),
      films.count_films(records),
  )
  return pd.DataFrame(rows, columns=list(COUNTRY_AGGREGATE_COLUMNS))

