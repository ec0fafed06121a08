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
from festcircuit.balance import accreditation
from festcircuit.balance import reports
from festcircuit.testing import synthetic
from festcircuit.typing import country
from festcircuit.utils import audit
import numpy as np

_POPULATION = country.Attribute.POPULATION


def _profiles():
  return {
      'AAA': synthetic.constant_profile('AAA', 1e6, 1e3, region='Europe'),
      'BBB': synthetic.constant_profile('BBB', 1e7, 1e4, region='Asia'),
      'CCC': synthetic.constant_profile('CCC', 1e8, 1e5, region='Americas'),
  }


class EntryLogValuesTest(parameterized.TestCase):

  def test_single_producer(self):
    profiles = {'AAA': synthetic.constant_profile('AAA', 1e7, 1e4)}
    values = reports.entry_log_values(
        [synthetic.record(['AAA'])], _POPULATION, profiles
    )
    np.testing.assert_allclose(values, [7.0])

  def test_one_value_per_producer(self):
    values = reports.entry_log_values(
        [synthetic.record(['AAA', 'CCC'])], _POPULATION, _profiles()
    )
    np.testing.assert_allclose(values, [6.0, 8.0])

  def test_missing_country(self):
    with self.assertRaises(errors.CovariateUnavailableError):
      reports.entry_log_values(
          [synthetic.record(['ZZZ'])], _POPULATION, _profiles()
      )

  def test_records_with_attribute_drops_and_reports(self):
    records = [
        synthetic.record(['AAA'], title='a'),
        synthetic.record(['AAA', 'ZZZ'], title='b'),
    ]
    trail = audit.AuditTrail()
    kept = reports.records_with_attribute(
        records, _POPULATION, _profiles(), trail
    )
    self.assertEqual(kept, records[:1])
    (excluded,) = trail.entries(audit.EXCLUSIONS)
    self.assertEqual(excluded['item'], 'ZZZ')


class GeometricMeanLogTest(parameterized.TestCase):

  @parameterized.parameters(([0, 1, 2], 1.0), ([7, 7, 7], 7.0))
  def test_mean(self, values, expected):
    self.assertAlmostEqual(reports.geometric_mean_log(values), expected)

  def test_matches_product_root(self):
    rng = np.random.default_rng(9)
    raw = 10 ** rng.uniform(5, 9, size=100)
    root = np.prod(raw / 1e7) ** (1 / raw.size) * 1e7
    self.assertAlmostEqual(
        reports.geometric_mean_log(np.log10(raw)), np.log10(root), places=9
    )

  def test_empty(self):
    with self.assertRaises(ValueError):
      reports.geometric_mean_log([])


class SplitReportTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.records = synthetic.random_records(
        seed=12,
        count=80,
        countries=['AAA', 'BBB', 'CCC'],
        hosts=['AAA', 'BBB', 'CCC'],
    )
    self.profiles = _profiles()
    self.universe = {'AAA': 1e6, 'BBB': 1e7, 'CCC': 1e8}

  def _split(self, split, records=None, **kwargs):
    return reports.split_report(
        self.records if records is None else records,
        split,
        _POPULATION,
        self.profiles,
        self.universe,
        **kwargs,
    )

  @parameterized.parameters(
      reports.Split.ALL,
      reports.Split.ACCREDITATION,
      reports.Split.REGION,
      reports.Split.FESTIVAL_SERIES,
  )
  def test_groups_partition_entries(self, split):
    total = sum(r.producer_count for r in self.records)
    self.assertEqual(sum(r.n_entries for r in self._split(split)), total)

  def test_accreditation_groups(self):
    table = accreditation.AccreditationTable(
        {'AAA-0': accreditation.Accreditation.A_LIST}
    )
    groups = [
        r.group
        for r in self._split(reports.Split.ACCREDITATION, accreditation=table)
    ]
    self.assertEqual(groups, ['A-list', 'B-list'])

  def test_region_groups_relabel_host_regions(self):
    groups = {
        r.group
        for r in self._split(
            reports.Split.REGION,
            region_groups={'Asia': 'Asia-Pacific', 'Americas': 'Americas'},
        )
    }
    self.assertEqual(groups, {'Americas', 'Asia-Pacific', 'Europe'})

  def test_festival_series_trajectories_have_years(self):
    split = self._split(reports.Split.FESTIVAL_SERIES)
    self.assertTrue(all(r.year is not None for r in split))
    keys = [(r.group, r.year) for r in split]
    self.assertEqual(keys, sorted(keys))

  def test_single_festival_equals_global_report(self):
    records = [r for r in self.records if r.festival_series_id == 'AAA-0']
    (series_report,) = self._split(reports.Split.ALL, records=records)
    global_report = reports.balance_report(
        records, _POPULATION, self.profiles, self.universe
    )
    self.assertAlmostEqual(
        series_report.observed_log_mean, global_report.observed_log_mean
    )
    self.assertEqual(series_report.n_entries, global_report.n_entries)

  def test_order_invariance(self):
    forward = self._split(reports.Split.REGION)
    backward = self._split(reports.Split.REGION, records=self.records[::-1])
    for a, b in zip(forward, backward, strict=True):
      self.assertEqual(a.group, b.group)
      self.assertAlmostEqual(a.observed_log_mean, b.observed_log_mean)

  def test_weighted_observed_mean(self):
    records = [synthetic.record(['AAA', 'CCC'], title='a')] + [
        synthetic.record(['BBB'], title='b')
    ]
    report = reports.balance_report(
        records, _POPULATION, self.profiles, self.universe, weighted=True
    )
    # Pairs 6 and 8 weigh 1/2 each, 7 weighs 1.
    self.assertAlmostEqual(report.observed_log_mean, 7.0)

  def test_frames(self):
    split = self._split(reports.Split.FESTIVAL_SERIES, max_workers=1)
    frame = reports.reports_frame(split)
    self.assertEqual(list(frame.columns), list(reports.REPORT_COLUMNS))
    self.assertLen(frame, len(split))
    values = reports.log_values_frame(split)
    self.assertLen(values, sum(r.n_entries for r in split))


class AccreditationTableTest(absltest.TestCase):

  def test_unlisted_series_are_b_list(self):
    path = self.create_tempfile(
        content='festival_series_id,accreditation\nCannes,A\nPOFF,a\n'
    ).full_path
    table = accreditation.AccreditationTable.from_csv(path)
    self.assertIs(
        table.classify('Cannes'), accreditation.Accreditation.A_LIST
    )
    self.assertIs(
        table.classify('Anywhere'), accreditation.Accreditation.B_LIST
    )
    self.assertEqual(table.a_list(), {'Cannes', 'POFF'})

  def test_bad_value(self):
    path = self.create_tempfile(
        content='festival_series_id,accreditation\nCannes,C\n'
    ).full_path
    with self.assertRaises(errors.SchemaError):
      accreditation.AccreditationTable.from_csv(path)


if __name__ == '__main__':
  absltest.main()
