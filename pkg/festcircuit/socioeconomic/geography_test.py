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
from festcircuit import errors
from festcircuit.socioeconomic import geography
import numpy as np


class CapitalDistanceTest(parameterized.TestCase):

  @classmethod
  def setUpClass(cls):
    super().setUpClass()
    cls.capitals = geography.load_capitals()

  def test_same_country(self):
    self.assertEqual(
        geography.capital_distance_km('FRA', 'FRA', self.capitals), 0.0
    )

  def test_paris_berlin(self):
    distance = geography.capital_distance_km('FRA', 'DEU', self.capitals)
    self.assertBetween(distance, 876.0, 880.0)

  def test_symmetric(self):
    self.assertEqual(
        geography.capital_distance_km('ARG', 'JPN', self.capitals),
        geography.capital_distance_km('JPN', 'ARG', self.capitals),
    )

  def test_metric_on_random_triples(self):
    rng = np.random.default_rng(0)
    codes = sorted(self.capitals)
    for _ in range(200):
      a, b, c = rng.choice(codes, size=3, replace=False)
      ab = geography.capital_distance_km(a, b, self.capitals)
      bc = geography.capital_distance_km(b, c, self.capitals)
      ac = geography.capital_distance_km(a, c, self.capitals)
      self.assertGreaterEqual(ab, 0.0)
      self.assertLessEqual(ac, ab + bc + 1e-9)

  def test_missing_capital(self):
    with self.assertRaises(errors.MissingCapitalError):
      geography.capital_distance_km('FRA', 'XXX', self.capitals)

  def test_antipodes(self):
    self.assertAlmostEqual(
        geography.haversine_km((0.0, 0.0), (0.0, 180.0)),
        np.pi * geography.EARTH_RADIUS_KM,
        places=6,
    )

  def test_bad_coordinates(self):
    path = self.create_tempfile(
        content='code,capital,lat,lon\nXXX,Nowhere,95.0,0.0\n'
    ).full_path
    with self.assertRaises(errors.SchemaError):
      geography.load_capitals(path)


if __name__ == '__main__':
  absltest.main()
