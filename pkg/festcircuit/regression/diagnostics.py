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


"""Assumption checks of a fitted model."""

from collections.abc import Mapping
import dataclasses
from typing import Any

from absl import logging
from festcircuit.regression import ols
import numpy as np
from scipy import stats
from statsmodels.stats import diagnostic

DEFAULT_VIF_THRESHOLD = 10.0


@dataclasses.dataclass(frozen=True, kw_only=True)
class Diagnostics:
  """Multicollinearity, residual shape and heteroscedasticity of a fit.

  Attributes:
    vif: variance inflation factor per predictor.
    high_vif: predictors whose VIF exceeds the threshold.
    residual_vs_fitted: (country, fitted, residual) per observation.
    residual_skewness: sample skewness of the residuals.
    residual_kurtosis: excess kurtosis of the residuals.
    breusch_pagan_lm: Lagrange multiplier statistic.
    breusch_pagan_p: p-value of the LM statistic, small values point to
      heteroscedasticity.
  """

  vif: Mapping[str, float]
  high_vif: tuple[str, ...]
  residual_vs_fitted: tuple[tuple[str, float, float], ...]
  residual_skewness: float
  residual_kurtosis: float
  breusch_pagan_lm: float
  breusch_pagan_p: float

  def to_dict(self) -> dict[str, Any]:
    return {
        'vif': dict(self.vif),
        'high_vif': list(self.high_vif),
        'residual_vs_fitted': [
            {'country': code, 'fitted': fitted, 'residual': residual}
            for code, fitted, residual in self.residual_vs_fitted
        ],
        'residual_skewness': self.residual_skewness,
        'residual_kurtosis': self.residual_kurtosis,
        'breusch_pagan_lm': self.breusch_pagan_lm,
        'breusch_pagan_p': self.breusch_pagan_p,
    }


def diagnose(
    fit: ols.RegressionFit,
    matrix: np.ndarray,
    *,
    vif_threshold: float = DEFAULT_VIF_THRESHOLD,
) -> Diagnostics:
  """Computes the diagnostics of `fit` on its design `matrix`."""
  residuals = np.array([fit.residuals[code] for code in fit.countries])
  lm, lm_p, _, _ = diagnostic.het_breuschpagan(residuals, matrix)
  high_vif = tuple(
      term for term, value in fit.vif.items() if value > vif_threshold
  )
  if high_vif:
    logging.warning(
        'VIF above %.1f for %s.', vif_threshold, ', '.join(high_vif)
    )
  return Diagnostics(
      vif=fit.vif,
      high_vif=high_vif,
      residual_vs_fitted=tuple(
          (code, float(fitted), float(residual))
          for code, fitted, residual in zip(
              fit.countries, fit.fitted, residuals
          )
      ),
      residual_skewness=float(stats.skew(residuals)),
      residual_kurtosis=float(stats.kurtosis(residuals)),
      breusch_pagan_lm=float(lm),
      breusch_pagan_p=float(lm_p),
  )
