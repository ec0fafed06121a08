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


"""Ordinary least squares through a QR decomposition."""

from collections.abc import Mapping, Sequence
import dataclasses
import functools
import types

from absl import logging
from festcircuit import errors
from festcircuit.regression import design as design_lib
from festcircuit.utils import concurrency
import numpy as np
from scipy import linalg
from scipy import stats


@dataclasses.dataclass(frozen=True, kw_only=True)
class RegressionFit:
  """Result of `ols_fit`.

  Coefficient arrays follow the order of `terms`. `df_model` excludes the
  intercept, so the F statistic has (df_model, df_resid) degrees of freedom.
  """

  terms: tuple[str, ...]
  countries: tuple[str, ...]
  coefficients: np.ndarray
  standard_errors: np.ndarray
  t_stats: np.ndarray
  p_values: np.ndarray
  r_squared: float
  adj_r_squared: float
  f_statistic: float
  f_p_value: float
  df_model: int
  df_resid: int
  response: np.ndarray
  fitted: np.ndarray
  residuals: Mapping[str, float]
  vif: Mapping[str, float]

  @property
  def n_obs(self) -> int:
    return len(self.response)

  def coefficient(self, term: str) -> float:
    return float(self.coefficients[self.terms.index(term)])


def _check_shape(matrix: np.ndarray, response: np.ndarray) -> None:
  if matrix.ndim != 2 or response.ndim != 1:
    raise ValueError('expected a 2-d design and a 1-d response')
  if matrix.shape[0] != response.shape[0]:
    raise ValueError(
        f'{matrix.shape[0]} design rows but {response.shape[0]} responses'
    )
  rows, columns = matrix.shape
  if rows <= columns:
    raise errors.InsufficientDataError(
        f'{rows} observations for {columns} coefficients'
    )
  rank = np.linalg.matrix_rank(matrix)
  if rank < columns:
    raise errors.RankDeficiencyError(
        f'design has rank {rank} but {columns} columns'
    )


def _r_squared(response: np.ndarray, residuals: np.ndarray) -> float:
  total = float(np.sum((response - response.mean()) ** 2))
  if total == 0:
    raise errors.InsufficientDataError('the response is constant')
  return float(np.clip(1 - residuals @ residuals / total, 0.0, 1.0))


def _auxiliary_vif(matrix: np.ndarray, column: int) -> float:
  target = matrix[:, column]
  others = np.delete(matrix, column, axis=1)
  solution, *_ = np.linalg.lstsq(others, target, rcond=None)
  r_squared = _r_squared(target, target - others @ solution)
  if r_squared >= 1:
    return float('inf')
  return 1 / (1 - r_squared)


def variance_inflation_factors(
    matrix: np.ndarray,
    terms: Sequence[str],
    *,
    max_workers: int | None = None,
) -> dict[str, float]:
  """VIF of every predictor but the intercept.

  Each non-constant column is regressed on all other columns, intercept
  included, and its VIF is 1 / (1 - R²) of that auxiliary regression.
  """
  columns = [n for n in range(len(terms)) if np.ptp(matrix[:, n]) > 0]
  if len(columns) < 2:
    return {terms[n]: 1.0 for n in columns}
  values = concurrency.map_ordered(
      functools.partial(_auxiliary_vif, matrix),
      columns,
      max_workers=max_workers,
  )
  return {terms[n]: value for n, value in zip(columns, values)}


def ols_fit(
    matrix: np.ndarray,
    response: np.ndarray,
    *,
    terms: Sequence[str] | None = None,
    countries: Sequence[str] | None = None,
    max_workers: int | None = None,
) -> RegressionFit:
  """Fits `response ≈ matrix @ beta` by least squares.

  Args:
    matrix: n x k design, first column the intercept.
    response: n responses.
    terms: column names, defaults to `design.TERMS` when k matches.
    countries: row labels, defaults to row numbers.
    max_workers: parallelism of the VIF auxiliary regressions.

  Returns:
    The fit. Standard errors come from σ²(XᵀX)⁻¹, p-values are two-sided
    against the t distribution with n - k degrees of freedom.

  Raises:
    InsufficientDataError: with n <= k, or a constant response.
    RankDeficiencyError: if the design columns are linearly dependent.
  """
  matrix = np.asarray(matrix, dtype=float)
  response = np.asarray(response, dtype=float)
  _check_shape(matrix, response)
  rows, columns = matrix.shape
  if terms is None:
    terms = (
        design_lib.TERMS
        if columns == len(design_lib.TERMS)
        else tuple(f'x{n}' for n in range(columns))
    )
  terms = tuple(terms)
  if countries is None:
    countries = tuple(str(n) for n in range(rows))
  countries = tuple(countries)

  q, r = np.linalg.qr(matrix)
  coefficients = linalg.solve_triangular(r, q.T @ response)
  fitted = matrix @ coefficients
  residuals = response - fitted

  df_resid = rows - columns
  df_model = columns - 1
  sigma2 = float(residuals @ residuals) / df_resid
  r_inv = linalg.solve_triangular(r, np.eye(columns))
  standard_errors = np.sqrt(sigma2 * np.sum(r_inv**2, axis=1))
  with np.errstate(divide='ignore', invalid='ignore'):
    t_stats = coefficients / standard_errors
  p_values = 2 * stats.t.sf(np.abs(t_stats), df_resid)

  r_squared = _r_squared(response, residuals)
  adj_r_squared = 1 - (1 - r_squared) * (rows - 1) / df_resid
  if df_model == 0:
    f_statistic = f_p_value = float('nan')
  elif r_squared >= 1:
    f_statistic, f_p_value = float('inf'), 0.0
  else:
    f_statistic = (r_squared / df_model) / ((1 - r_squared) / df_resid)
    f_p_value = float(stats.f.sf(f_statistic, df_model, df_resid))

  logging.info(
      'OLS: n=%d, k=%d, R²=%.4f, adjusted R²=%.4f.',
      rows,
      columns,
      r_squared,
      adj_r_squared,
  )
  return RegressionFit(
      terms=terms,
      countries=countries,
      coefficients=coefficients,
      standard_errors=standard_errors,
      t_stats=t_stats,
      p_values=p_values,
      r_squared=r_squared,
      adj_r_squared=float(adj_r_squared),
      f_statistic=f_statistic,
      f_p_value=f_p_value,
      df_model=df_model,
      df_resid=df_resid,
      response=response,
      fitted=fitted,
      residuals=types.MappingProxyType(
          dict(zip(countries, residuals.tolist()))
      ),
      vif=types.MappingProxyType(
          variance_inflation_factors(matrix, terms, max_workers=max_workers)
      ),
  )


def fit_design(
    design: design_lib.Design, *, max_workers: int | None = None
) -> RegressionFit:
  """Runs `ols_fit` on a `Design`."""
  return ols_fit(
      design.matrix,
      design.response,
      terms=design.terms,
      countries=design.countries,
      max_workers=max_workers,
  )
