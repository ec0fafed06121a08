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


"""Yearly series with linear gap filling."""

from collections.abc import Mapping

from festcircuit import errors
import numpy as np
import pandas as pd


def _observed(series: Mapping[int, float]) -> pd.Series:
  observed = pd.Series(
      {int(year): float(value) for year, value in series.items()},
      dtype=float,
  ).dropna()
  if observed.empty:
    raise errors.EmptySeriesError('series has no observed values')
  return observed.sort_index()


def interpolate_series(series: Mapping[int, float]) -> dict[int, float]:
  """Fills the gaps of a yearly series over its observed span.

  Each missing year between two observations is filled on the straight line
  between its nearest observed neighbours. Observed values are kept exactly.

  Args:
    series: year to value. NaN values count as missing.

  Returns:
    A value for every year from the first to the last observation.

  Raises:
    EmptySeriesError: if nothing is observed.
  """
  observed = _observed(series)
  years = range(int(observed.index[0]), int(observed.index[-1]) + 1)
  filled = observed.reindex(years).interpolate(method='index')
  return {int(year): float(value) for year, value in filled.items()}


def span(series: Mapping[int, float]) -> tuple[int, int] | None:
  """Returns the first and last year of `series`, None if it is empty."""
  if not series:
    return None
  return min(series), max(series)


def value_at(series: Mapping[int, float], year: int) -> float:
  """Returns the value of `series` at `year`.

  Inside the observed span the value is interpolated linearly. Before the
  first and after the last observation the nearest observed value is carried.

  Raises:
    EmptySeriesError: if nothing is observed.
  """
  observed = _observed(series)
  return float(
      np.interp(year, observed.index.to_numpy(float), observed.to_numpy())
  )
