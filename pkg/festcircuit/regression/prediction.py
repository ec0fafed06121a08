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


"""Expected appearance counts and who beats them."""

from collections.abc import Sequence
import dataclasses
import os

from festcircuit import data
from festcircuit import errors
from festcircuit.regression import design as design_lib
from festcircuit.regression import ols
import numpy as np
import pandas as pd

COEFFICIENT_COLUMNS = ('term', 'beta', 'se', 't', 'p')
RANKING_COLUMNS = ('country', 'residual', 'observed', 'predicted')


@dataclasses.dataclass(frozen=True)
class PublishedCoefficients:
  """Coefficients of the full model as published, for prediction only."""

  coefficients: np.ndarray
  standard_errors: np.ndarray
  p_values: np.ndarray
  terms: tuple[str, ...] = design_lib.TERMS


def load_published_coefficients(
    path: str | os.PathLike[str] | None = None,
) -> PublishedCoefficients:
  """Reads `term,beta,se,p` rows covering every term of the full model.

  Args:
    path: the CSV, defaults to the bundled table.

  Raises:
    SchemaError: on missing columns or terms.
  """
  path = data.PUBLISHED_COEFFICIENTS_CSV if path is None else path
  frame = pd.read_csv(path)
  missing = {'term', 'beta', 'se', 'p'} - set(frame.columns)
  if missing:
    raise errors.SchemaError(f'{path}: missing columns {sorted(missing)}')
  frame = frame.set_index('term')
  absent = set(design_lib.TERMS) - set(frame.index)
  if absent:
    raise errors.SchemaError(f'{path}: missing terms {sorted(absent)}')
  frame = frame.loc[list(design_lib.TERMS)]
  return PublishedCoefficients(
      coefficients=frame['beta'].to_numpy(dtype=float),
      standard_errors=frame['se'].to_numpy(dtype=float),
      p_values=frame['p'].to_numpy(dtype=float),
  )


def predict_appearances(
    coefficients: Sequence[float] | np.ndarray,
    *,
    population: float,
    gdp_per_capita: float,
    events: float = 0,
    distance_km: float = 0.0,
) -> float:
  """Expected appearance count of a country under the full model.

  Args:
    coefficients: β in `design.TERMS` order, e.g. `RegressionFit.coefficients`.
    population: number of inhabitants.
    gdp_per_capita: US$ per inhabitant.
    events: festival editions hosted.
    distance_km: capital distance to the reference country.

  Returns:
    10 ** (βᵀx), on the count scale.
  """
  coefficients = np.asarray(coefficients, dtype=float)
  if coefficients.shape != (len(design_lib.TERMS),):
    raise ValueError(
        f'expected {len(design_lib.TERMS)} coefficients, got'
        f' {coefficients.shape}'
    )
  row = design_lib.design_row(
      population, gdp_per_capita, events, distance_km
  )
  return float(10 ** (row @ coefficients))


@dataclasses.dataclass(frozen=True)
class RankedResidual:
  country: str
  residual: float
  observed: int
  predicted: float


def residual_ranking(fit: ols.RegressionFit) -> list[RankedResidual]:
  """Countries from most over- to most under-represented.

  Returns:
    One entry per fitted country, sorted by residual descending then code.
    Observed and predicted counts are on the linear scale.
  """
  ranking = [
      RankedResidual(
          country=code,
          residual=fit.residuals[code],
          observed=int(round(10 ** observed)),
          predicted=float(10 ** fitted),
      )
      for code, observed, fitted in zip(
          fit.countries, fit.response, fit.fitted
      )
  ]
  ranking.sort(key=lambda entry: (-entry.residual, entry.country))
  return ranking


def ranking_frame(ranking: Sequence[RankedResidual]) -> pd.DataFrame:
  return pd.DataFrame(
      [dataclasses.astuple(entry) for entry in ranking],
      columns=list(RANKING_COLUMNS),
  )


def coefficients_frame(fit: ols.RegressionFit) -> pd.DataFrame:
  """The coefficient table, one row per term."""
  return pd.DataFrame(
      {
          'term': fit.terms,
          'beta': fit.coefficients,
          'se': fit.standard_errors,
          't': fit.t_stats,
          'p': fit.p_values,
      },
      columns=list(COEFFICIENT_COLUMNS),
  )
