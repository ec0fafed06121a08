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


import math

from absl.testing import absltest
from absl.testing import parameterized
from festcircuit import errors
from festcircuit.socioeconomic import series


class InterpolateSeriesTest(parameterized.TestCase):

  def test_midpoint(self):
    filled = series.interpolate_series({2010: 100.0, 2012: 200.0})
    self.assertEqual(filled, {2010: 100.0, 2011: 150.0, 2012: 200.0})

  def test_two_year_gap(self):
    filled = series.interpolate_series({2013: 400.0, 2010: 100.0})
    self.assertAlmostEqual(filled[2011], 200.0)
    self.assertAlmostEqual(filled[2012], 300.0)

  def test_observed_points_kept_and_monotone_between(self):
    observed = {2000: 5.0, 2004: 1.0, 2005: 9.0, 2011: 3.0}
    filled = series.interpolate_series(observed)
    for year, value in observed.items():
      self.assertEqual(filled[year], value)
    years = sorted(observed)
    for start, end in zip(years, years[1:]):
      segment = [filled[y] for y in range(start, end + 1)]
      ascending = observed[end] >= observed[start]
      self.assertEqual(segment, sorted(segment, reverse=not ascending))

  def test_nan_counts_as_missing(self):
    filled = series.interpolate_series({2010: 1.0, 2011: math.nan, 2012: 3.0})
    self.assertEqual(filled[2011], 2.0)

  def test_empty(self):
    with self.assertRaises(errors.EmptySeriesError):
      series.interpolate_series({})


class ValueAtTest(parameterized.TestCase):

  @parameterized.parameters(1990, 2015, 2040)
  def test_single_point_is_carried(self, year):
    self.assertEqual(series.value_at({2015: 7.0}, year), 7.0)

  @parameterized.parameters((2005, 100.0), (2011, 200.0), (2020, 400.0))
  def test_nearest_endpoint_carry(self, year, expected):
    self.assertAlmostEqual(
        series.value_at({2010: 100.0, 2013: 400.0}, year), expected
    )

  def test_span(self):
    self.assertEqual(series.span({2013: 1.0, 2010: 2.0}), (2010, 2013))
    self.assertIsNone(series.span({}))


if __name__ == '__main__':
  absltest.main()
