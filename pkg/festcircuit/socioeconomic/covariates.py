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


"""Period-level covariate rows, one per participating country."""

from collections.abc import Mapping

from absl import logging
from festcircuit import errors
from festcircuit.socioeconomic import geography
from festcircuit.socioeconomic import profiles as profiles_lib
from festcircuit.typing import country
from festcircuit.utils import audit as audit_lib

_MODULE = 'socioeconomic'

DEFAULT_REFERENCE_COUNTRY = 'FRA'


def build_covariate_rows(
    profiles: Mapping[str, country.CountryProfile],
    appearances: Mapping[str, int],
    *,
    period: tuple[int, int],
    reference_country: str = DEFAULT_REFERENCE_COUNTRY,
    audit: audit_lib.AuditTrail | None = None,
) -> list[country.CovariateRow]:
  """Builds the covariate row of every country that can enter the model.

  Countries without appearances, without World Bank covariates or without a
  capital are left out and reported to `audit`.

  Args:
    profiles: country profiles with gap-free series.
    appearances: unweighted appearance count N per country.
    period: inclusive years over which covariates are averaged, weighted by
      yearly appearances.
    reference_country: country whose capital distances are measured from.
    audit: receives the exclusions.

  Returns:
    Rows sorted by country code.

  Raises:
    MissingCapitalError: if the reference country has no capital.
  """
  reference = profiles.get(reference_country)
  if reference is None or reference.capital_lat_lon is None:
    raise errors.MissingCapitalError(reference_country)
  rows = []
  for code in sorted(appearances):
    n = int(appearances[code])
    if n < 1:
      audit_lib.exclude(audit, _MODULE, code, 'no appearances')
      continue
    profile = profiles.get(code)
    if profile is None:
      audit_lib.exclude(audit, _MODULE, code, 'no country profile')
      continue
    if profile.capital_lat_lon is None:
      audit_lib.exclude(audit, _MODULE, code, 'no capital coordinates')
      continue
    try:
      mean_population = profiles_lib.weighted_period_average(
          profile, country.Attribute.POPULATION, period
      )
      mean_gdp_per_capita = profiles_lib.weighted_period_average(
          profile, country.Attribute.GDP_PER_CAPITA, period
      )
    except errors.CovariateUnavailableError as e:
      audit_lib.exclude(audit, _MODULE, code, str(e))
      continue
    if not mean_population.weighted:
      audit_lib.warn(
          audit, _MODULE, f'{code}: covariates averaged without weights'
      )
    rows.append(
        country.CovariateRow(
            code=code,
            mean_population=mean_population.value,
            mean_gdp_per_capita=mean_gdp_per_capita.value,
            events=profile.hosted_events,
            distance_from_reference_km=geography.haversine_km(
                profile.capital_lat_lon, reference.capital_lat_lon
            )
            if code != reference_country
            else 0.0,
            appearances=n,
        )
    )
  logging.info(
      'Built %d covariate rows from %d countries (reference %s).',
      len(rows),
      len(appearances),
      reference_country,
  )
  return rows
