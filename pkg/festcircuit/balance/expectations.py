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


"""Balance baselines: where the circuit would sit if it were fair.

Under the uniform baseline every participating country shows the same number
of films. Under the proportional baseline a country's share of films is
proportional to its attribute value. Both are reported as the log10 mean of
the resulting entry distribution.
"""

from collections.abc import Iterable, Mapping
import enum

from absl import logging
from festcircuit import errors
from festcircuit.ingest import counts
from festcircuit.socioeconomic import profiles as profiles_lib
from festcircuit.typing import country
from festcircuit.typing import screening
from festcircuit.utils import audit as audit_lib
import numpy as np

_MODULE = 'balance'


@enum.unique
class Baseline(enum.Enum):
  UNIFORM = 'uniform'
  PROPORTIONAL = 'proportional'


def _positive_array(values: Mapping[str, float]) -> np.ndarray:
  if not values:
    raise ValueError('At least one participating country is required.')
  array = np.array([float(v) for v in values.values()])
  if np.any(array <= 0) or not np.all(np.isfinite(array)):
    raise ValueError('Attribute values must be positive and finite.')
  return array


def uniform_expectation(values: Mapping[str, float]) -> float:
  """Log10 mean when every country has the same number of entries.

  Args:
    values: attribute value per participating country.
  """
  return float(np.mean(np.log10(_positive_array(values))))


def proportional_expectation(values: Mapping[str, float]) -> float:
  """Log10 mean when entries are proportional to the attribute.

  Args:
    values: attribute value per participating country.

  Returns:
    Σ a·log10(a) / Σ a over the countries.
  """
  array = _positive_array(values)
  return float(np.average(np.log10(array), weights=array))


def expectation(values: Mapping[str, float], baseline: Baseline) -> float:
  match baseline:
    case Baseline.UNIFORM:
      return uniform_expectation(values)
    case Baseline.PROPORTIONAL:
      return proportional_expectation(values)
  raise ValueError(f'Unknown baseline {baseline!r}')


def simulated_expectation(
    values: Mapping[str, float],
    baseline: Baseline,
    *,
    entries: int,
    seed: int,
) -> float:
  """Monte Carlo version of `expectation`.

  Draws `entries` countries with replacement, uniformly or with probability
  proportional to the attribute, and returns the log10 mean of the draws.
  Converges to `expectation` as `entries` grows.
  """
  array = _positive_array(values)
  logs = np.log10(array)
  if baseline is Baseline.UNIFORM:
    probabilities = None
  else:
    probabilities = array / array.sum()
  rng = np.random.default_rng(seed)
  drawn = rng.choice(len(array), size=entries, replace=True, p=probabilities)
  return float(logs[drawn].mean())


def participating_values(
    records: Iterable[screening.ScreeningRecord],
    profiles: Mapping[str, country.CountryProfile],
    attribute: country.Attribute,
    period: tuple[int, int],
    audit: audit_lib.AuditTrail | None = None,
) -> dict[str, float]:
  """Attribute of each country with at least one appearance in `records`.

  Each value is averaged over `period` weighted by the country's yearly
  appearances. Countries without the attribute are left out and reported.
  """
  values = {}
  appearances = counts.country_appearance_counts(records, weighted=False)
  for code in sorted(appearances):
    profile = profiles.get(code)
    if profile is None:
      audit_lib.exclude(audit, _MODULE, code, 'no country profile')
      continue
    try:
      values[code] = profiles_lib.weighted_period_average(
          profile, attribute, period
      ).value
    except errors.CovariateUnavailableError as e:
      audit_lib.exclude(audit, _MODULE, code, str(e))
  logging.info(
      'Balance universe: %d countries with %s.', len(values), attribute.value
  )
  return values
