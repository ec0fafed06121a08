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


"""Design matrix of the log-log model of national festival presence.

The response is log10 N, the number of film-festival pairs of a country. The
predictors are population and GDP per capita, both in log10 and centered at
10M people and US$10k, festival editions hosted (log10 with +1 smoothing),
capital distance to the reference country in thousands of km, and the
product of the two centered log predictors.
"""

from collections.abc import Sequence
import dataclasses
import math

from absl import logging
from festcircuit.typing import country
from festcircuit.utils import audit as audit_lib
import numpy as np

_MODULE = 'regression'

POPULATION_CENTER = 1e7
GDP_PER_CAPITA_CENTER = 1e4
DISTANCE_UNIT_KM = 1000.0

INTERCEPT = 'intercept'
TERMS = (
    INTERCEPT,
    'population',
    'gdp_per_capita',
    'events',
    'distance',
    'population:gdp_per_capita',
)


@dataclasses.dataclass(frozen=True)
class Design:
  """Inputs of one regression.

  Attributes:
    matrix: the n x k design matrix, intercept first.
    response: the n responses.
    countries: the country of each row.
    terms: the name of each column.
  """

  matrix: np.ndarray
  response: np.ndarray
  countries: tuple[str, ...]
  terms: tuple[str, ...] = TERMS


def design_row(
    population: float,
    gdp_per_capita: float,
    events: float,
    distance_km: float,
) -> np.ndarray:
  """Returns the predictor row of one country, in `TERMS` order."""
  if population <= 0 or gdp_per_capita <= 0:
    raise ValueError('population and GDP per capita must be positive')
  population_c = math.log10(population / POPULATION_CENTER)
  gdp_c = math.log10(gdp_per_capita / GDP_PER_CAPITA_CENTER)
  return np.array([
      1.0,
      population_c,
      gdp_c,
      math.log10(events + 1),
      distance_km / DISTANCE_UNIT_KM,
      population_c * gdp_c,
  ])


def build_design(
    rows: Sequence[country.CovariateRow],
    audit: audit_lib.AuditTrail | None = None,
) -> Design:
  """Builds the design of the full model from covariate rows.

  Rows with no appearances are left out with a warning, log10 0 being
  undefined.

  Args:
    rows: one row per country.
    audit: receives the left-out countries.

  Returns:
    The design, rows in the order of `rows`.
  """
  kept = []
  for row in rows:
    if row.appearances < 1:
      audit_lib.warn(
          audit, _MODULE, f'{row.code}: no appearances, left out of the fit'
      )
      audit_lib.exclude(audit, _MODULE, row.code, 'N = 0')
      continue
    kept.append(row)
  matrix = np.array(
      [
          design_row(
              row.mean_population,
              row.mean_gdp_per_capita,
              row.events,
              row.distance_from_reference_km,
          )
          for row in kept
      ],
      dtype=float,
  ).reshape(len(kept), len(TERMS))
  response = np.log10([row.appearances for row in kept]).astype(float)
  logging.info(
      'Design: %d countries, %d left out.', len(kept), len(rows) - len(kept)
  )
  return Design(
      matrix=matrix,
      response=response,
      countries=tuple(row.code for row in kept),
  )


def distance_design(design: Design) -> Design:
  """Keeps only the intercept and distance columns of `design`."""
  columns = [TERMS.index(INTERCEPT), TERMS.index('distance')]
  return Design(
      matrix=design.matrix[:, columns],
      response=design.response,
      countries=design.countries,
      terms=(INTERCEPT, 'distance'),
  )
