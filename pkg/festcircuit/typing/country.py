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


"""Types describing countries and their socioeconomic covariates."""

from collections.abc import Mapping
import dataclasses
import enum
import math
import types


@enum.unique
class Attribute(enum.Enum):
  """A per-country socioeconomic attribute."""
  POPULATION = 'population'
  GDP_PER_CAPITA = 'gdp_per_capita'


def _frozen_mapping(mapping: Mapping[int, float]) -> Mapping[int, float]:
  return types.MappingProxyType(dict(sorted(mapping.items())))


@dataclasses.dataclass(frozen=True, kw_only=True)
class CountryProfile:
  """A canonical country with its yearly covariates.

  Attributes:
    code: canonical country code.
    name: display name.
    region: region label.
    population_by_year: persons per year, gap-free over the observed span.
    gdp_by_year: current US$ per year, gap-free over the observed span.
    capital_lat_lon: capital coordinates in decimal degrees, if known.
    hosted_events: number of festival editions hosted in the period.
    appearance_weight_by_year: film-festival pair counts per year.
  """

  code: str
  name: str = ''
  region: str = ''
  population_by_year: Mapping[int, float] = dataclasses.field(
      default_factory=dict
  )
  gdp_by_year: Mapping[int, float] = dataclasses.field(default_factory=dict)
  capital_lat_lon: tuple[float, float] | None = None
  hosted_events: int = 0
  appearance_weight_by_year: Mapping[int, float] = dataclasses.field(
      default_factory=dict
  )

  def __post_init__(self):
    for label, series in (
        ('population', self.population_by_year),
        ('gdp', self.gdp_by_year),
    ):
      for year, value in series.items():
        if not math.isfinite(value) or value <= 0:
          raise ValueError(
              f'{self.code}: {label} must be positive, got {value} in {year}'
          )
    if self.hosted_events < 0:
      raise ValueError(f'{self.code}: hosted_events must be non-negative')
    if self.capital_lat_lon is not None:
      lat, lon = self.capital_lat_lon
      if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
        raise ValueError(
            f'{self.code}: capital coordinates out of range: {lat}, {lon}'
        )
    object.__setattr__(
        self, 'population_by_year', _frozen_mapping(self.population_by_year)
    )
    object.__setattr__(self, 'gdp_by_year', _frozen_mapping(self.gdp_by_year))
    object.__setattr__(
        self,
        'appearance_weight_by_year',
        _frozen_mapping(self.appearance_weight_by_year),
    )


@dataclasses.dataclass(frozen=True, kw_only=True)
class CovariateRow:
  """Period-level covariates of one country, the unit of the regression.

  Attributes:
    code: canonical country code.
    mean_population: appearance-weighted mean population.
    mean_gdp_per_capita: appearance-weighted mean GDP per capita in US$.
    events: festival editions hosted in the period.
    distance_from_reference_km: capital distance to the reference country.
    appearances: number of film-festival pairs, N.
  """

  code: str
  mean_population: float
  mean_gdp_per_capita: float
  events: int
  distance_from_reference_km: float
  appearances: int

  def __post_init__(self):
    if self.mean_population <= 0 or self.mean_gdp_per_capita <= 0:
      raise ValueError(f'{self.code}: covariates must be positive')
    if self.events < 0 or self.distance_from_reference_km < 0:
      raise ValueError(f'{self.code}: events and distance must be >= 0')
    if self.appearances < 0:
      raise ValueError(f'{self.code}: appearances must be >= 0')
