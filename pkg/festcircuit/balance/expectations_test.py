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
from festcircuit.balance import expectations
from festcircuit.testing import synthetic
from festcircuit.typing import country
from festcircuit.utils import audit
import numpy as np

_POPULATIONS = {'A': 1e6, 'B': 1e7, 'C': 1e8}


class ExpectationTest(parameterized.TestCase):

  def test_uniform(self):
    self.assertAlmostEqual(
        expectations.uniform_expectation(_POPULATIONS), 7.0, places=12
    )

  def test_proportional(self):
    self.assertAlmostEqual(
        expectations.proportional_expectation(_POPULATIONS),
        (6 * 1 + 7 * 10 + 8 * 100) / 111,
        places=12,
    )
    self.assertAlmostEqual(
        expectations.proportional_expectation(_POPULATIONS), 7.892, places=3
    )

  @parameterized.parameters(
      expectations.Baseline.UNIFORM, expectations.Baseline.PROPORTIONAL
  )
  def test_single_country(self, baseline):
    self.assertAlmostEqual(
        expectations.expectation({'A': 1e5}, baseline), 5.0, places=12
    )

  def test_equal_values_agree(self):
    values = {code: 3.3e4 for code in 'ABCDE'}
    self.assertAlmostEqual(
        expectations.uniform_expectation(values),
        expectations.proportional_expectation(values),
        places=12,
    )

  def test_proportional_exceeds_uniform(self):
    rng = np.random.default_rng(11)
    for _ in range(50):
      values = {str(i): 10 ** rng.uniform(2, 9) for i in range(8)}
      self.assertGreater(
          expectations.proportional_expectation(values),
          expectations.uniform_expectation(values),
      )

  def test_non_positive_rejected(self):
    with self.assertRaises(ValueError):
      expectations.uniform_expectation({'A': 0.0})
    with self.assertRaises(ValueError):
      expectations.proportional_expectation({})

  @parameterized.parameters(
      expectations.Baseline.UNIFORM, expectations.Baseline.PROPORTIONAL
  )
  def test_simulation_converges(self, baseline):
    simulated = expectations.simulated_expectation(
        _POPULATIONS, baseline, entries=200_000, seed=0
    )
    self.assertAlmostEqual(
        simulated, expectations.expectation(_POPULATIONS, baseline), delta=0.01
    )


class ParticipatingValuesTest(absltest.TestCase):

  def test_universe_is_countries_with_appearances(self):
    records = [
        synthetic.record(['ARG'], 'FRA', title='a'),
        synthetic.record(['ARG', 'XXX'], 'FRA', title='b'),
    ]
    profiles = {
        'ARG': synthetic.constant_profile('ARG', 4.5e7, 1.0e4),
        'FRA': synthetic.constant_profile('FRA', 6.5e7, 4.0e4),
    }
    trail = audit.AuditTrail()
    values = expectations.participating_values(
        records,
        profiles,
        country.Attribute.GDP_PER_CAPITA,
        (2012, 2021),
        trail,
    )
    self.assertEqual(list(values), ['ARG'])
    self.assertAlmostEqual(values['ARG'], 1.0e4)
    (excluded,) = trail.entries(audit.EXCLUSIONS)
    self.assertEqual(excluded['item'], 'XXX')


if __name__ == '__main__':
  absltest.main()
