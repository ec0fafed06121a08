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


from absl.testing import absltest
from absl.testing import parameterized
from festcircuit.regression import design
from festcircuit.typing import country
from festcircuit.utils import audit
import numpy as np


def _row(code, population, gdp, events, distance, appearances):
  return country.CovariateRow(
      code=code,
      mean_population=population,
      mean_gdp_per_capita=gdp,
      events=events,
      distance_from_reference_km=distance,
      appearances=appearances,
  )


class DesignRowTest(parameterized.TestCase):

  @parameterized.named_parameters(
      ('centre', (1e7, 1e4, 0, 0), [1, 0, 0, 0, 0, 0]),
      ('one_decade', (1e8, 1e5, 9, 2500), [1, 1, 1, 1, 2.5, 1]),
      ('opposite', (1e6, 1e5, 99, 0), [1, -1, 1, 2, 0, -1]),
  )
  def test_row(self, covariates, expected):
    np.testing.assert_allclose(
        design.design_row(*covariates), expected, atol=1e-12
    )

  def test_non_positive(self):
    with self.assertRaises(ValueError):
      design.design_row(0, 1e4, 0, 0)


class BuildDesignTest(absltest.TestCase):

  def test_matrix_and_response(self):
    rows = [
        _row('AAA', 1e7, 1e4, 0, 0, 100),
        _row('BBB', 1e8, 1e5, 9, 2500, 1000),
    ]
    built = design.build_design(rows)
    self.assertEqual(built.countries, ('AAA', 'BBB'))
    self.assertEqual(built.terms, design.TERMS)
    self.assertEqual(built.matrix.shape, (2, 6))
    np.testing.assert_allclose(built.response, [2.0, 3.0])

  def test_zero_appearances_left_out_with_warning(self):
    rows = [
        _row('AAA', 1e7, 1e4, 0, 0, 10),
        _row('BBB', 1e7, 1e4, 0, 0, 0),
    ]
    trail = audit.AuditTrail()
    built = design.build_design(rows, trail)
    self.assertEqual(built.countries, ('AAA',))
    (warning,) = trail.entries(audit.WARNINGS)
    self.assertIn('BBB', warning['message'])
    (excluded,) = trail.entries(audit.EXCLUSIONS)
    self.assertEqual(excluded['item'], 'BBB')

  def test_empty(self):
    built = design.build_design([])
    self.assertEqual(built.matrix.shape, (0, 6))
    self.assertEqual(built.response.shape, (0,))

  def test_distance_design(self):
    built = design.build_design([_row('AAA', 1e8, 1e5, 9, 2500, 10)])
    reduced = design.distance_design(built)
    self.assertEqual(reduced.terms, ('intercept', 'distance'))
    np.testing.assert_allclose(reduced.matrix, [[1.0, 2.5]])


if __name__ == '__main__':
  absltest.main()
