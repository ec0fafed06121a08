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


"""Single-predictor log-log models."""

from collections.abc import Iterable, Mapping, Sequence
import dataclasses
import numbers

from absl import logging
from festcircuit import errors
from festcircuit.ingest import counts
from festcircuit.ingest import films
from festcircuit.regression import design as design_lib
from festcircuit.regression import ols
from festcircuit.typing import screening
from festcircuit.utils import audit as audit_lib
import numpy as np

_MODULE = 'regression'

UIS_PERIOD = (2011, 2017)
UIS_TERMS = (design_lib.INTERCEPT, 'feature_films_produced')


@dataclasses.dataclass(frozen=True)
class UisCorrelation:
  """Festival appearances against national film production.

  Attributes:
    fit: the OLS fit of log10 appearances on log10 films produced.
    appearances: appearance count of each fitted country.
    productions: films produced by each fitted country.
  """

  fit: ols.RegressionFit
  appearances: Mapping[str, int]
  productions: Mapping[str, int]

  @property
  def slope(self) -> float:
    return self.fit.coefficient(UIS_TERMS[1])

  @property
  def intercept(self) -> float:
    return self.fit.coefficient(design_lib.INTERCEPT)

  @property
  def adj_r_squared(self) -> float:
    return self.fit.adj_r_squared

  def below_line(self) -> list[str]:
    """Countries appearing less than their production predicts."""
    return sorted(
        code for code, residual in self.fit.residuals.items() if residual < 0
    )


def uis_inputs(
    records: Iterable[screening.ScreeningRecord],
    uis_counts: Mapping[str, Mapping[int, int]],
    period: tuple[int, int] = UIS_PERIOD,
) -> tuple[dict[str, int], dict[str, int]]:
  """Appearances and films produced per country, both over `period`.

  Returns:
    Unweighted appearance counts of the records held in `period`, and UIS
    production counts summed over the years of `period`.
  """
  cropped = films.filter_period(records, *period)
  appearances = {
      code: int(value)
      for code, value in counts.country_appearance_counts(
          cropped, weighted=False
      ).items()
  }
  start, end = period
  productions = {
      code: sum(n for year, n in by_year.items() if start <= year <= end)
      for code, by_year in uis_counts.items()
  }
  return appearances, productions


def uis_correlation(
    appearances: Mapping[str, numbers.Real],
    productions: Mapping[str, numbers.Real],
    audit: audit_lib.AuditTrail | None = None,
) -> UisCorrelation:
  """Fits log10 appearances on log10 films produced.

  Only countries present in both mappings with both counts at least 1 enter
  the fit; the others are reported to `audit`.

  Raises:
    InsufficientDataError: if fewer than three countries overlap.
  """
  overlap = []
  for code in sorted(set(appearances) | set(productions)):
    if appearances.get(code, 0) >= 1 and productions.get(code, 0) >= 1:
      overlap.append(code)
    elif code in appearances:
      audit_lib.exclude(audit, _MODULE, code, 'no UIS production count')
  if len(overlap) < 3:
    raise errors.InsufficientDataError(
        f'{len(overlap)} countries have both appearances and UIS production'
    )
  produced = np.log10([float(productions[code]) for code in overlap])
  matrix = np.column_stack([np.ones(len(overlap)), produced])
  response = np.log10([float(appearances[code]) for code in overlap])
  fit = ols.ols_fit(
      matrix, response, terms=UIS_TERMS, countries=overlap, max_workers=1
  )
  logging.info(
      'UIS correlation over %d countries: slope %.3f, adjusted R² %.3f.',
      len(overlap),
      fit.coefficient(UIS_TERMS[1]),
      fit.adj_r_squared,
  )
  return UisCorrelation(
      fit=fit,
      appearances={code: appearances[code] for code in overlap},
      productions={code: productions[code] for code in overlap},
  )


def distance_only_fit(
    design: design_lib.Design,
) -> ols.RegressionFit:
  """Fits log10 N on distance alone, reusing the rows of the full design."""
  return ols.fit_design(design_lib.distance_design(design), max_workers=1)


def residual_pairs(
    correlation: UisCorrelation,
) -> Sequence[tuple[str, float]]:
  """(country, residual) sorted by residual descending."""
  return sorted(
      correlation.fit.residuals.items(), key=lambda item: (-item[1], item[0])
  )
