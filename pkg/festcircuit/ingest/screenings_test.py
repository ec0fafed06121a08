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


import fractions

from absl.testing import absltest
from absl.testing import parameterized
from festcircuit import errors
from festcircuit.ingest import aliases
from festcircuit.ingest import screenings
from festcircuit.testing import synthetic

_HEADER = ','.join(screenings.ENTRY_COLUMNS) + '\n'


def _row(
    producer,
    *,
    title='Lamb',
    production_year='2021',
    festival='CAN-2021',
    series='CAN',
    event_year='2021',
    host='France',
    languages='is',
    genre_tags='Drama',
):
  return (
      f'{title},{production_year},{festival},{series},{event_year},{host},'
      f'{producer},{languages},{genre_tags}\n'
  )


class ParseScreeningsTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.aliases = aliases.CountryAliasTable.from_csv()

  def _parse(self, content):
    path = self.create_tempfile(content=content).full_path
    return screenings.parse_screenings(path, self.aliases)

  def test_empty_file_with_header(self):
    self.assertEqual(self._parse(_HEADER), [])

  def test_rows_of_one_listing_collapse(self):
    records = self._parse(
        _HEADER
        + _row('Iceland', languages='is;en')
        + _row('Sweden', genre_tags='drama;Horror')
        + _row('Poland')
    )
    self.assertLen(records, 1)
    (record,) = records
    self.assertEqual(record.producer_countries, ('ISL', 'SWE', 'POL'))
    self.assertEqual(record.coproduction_weight, fractions.Fraction(1, 3))
    self.assertEqual(record.host_country, 'FRA')
    self.assertEqual(record.languages, ('is', 'en'))
    self.assertEqual(record.genre_tags, ('drama', 'horror'))
    self.assertIsNone(record.film_key)

  def test_repeated_producer_row_is_deduplicated(self):
    records = self._parse(_HEADER + _row('Iceland') + _row('iceland'))
    self.assertEqual(records[0].producer_countries, ('ISL',))

  def test_title_spellings_of_one_listing_collapse(self):
    records = self._parse(
        _HEADER
        + _row('Iceland', title='Lamb')
        + _row('Sweden', title='LAMB')
        + _row('Poland', title='  lamb.')
    )
    self.assertLen(records, 1)
    self.assertEqual(records[0].title, 'Lamb')
    self.assertEqual(records[0].producer_countries, ('ISL', 'SWE', 'POL'))

  def test_distinct_festivals_stay_distinct(self):
    records = self._parse(
        _HEADER
        + _row('Iceland')
        + _row('Iceland', festival='TIFF-2021', series='TIFF', host='Canada')
    )
    self.assertEqual(
        [r.festival_id for r in records], ['CAN-2021', 'TIFF-2021']
    )

  def test_missing_column(self):
    with self.assertRaises(errors.SchemaError):
      self._parse('film_title,production_year\nLamb,2021\n')

  @parameterized.named_parameters(
      dict(testcase_name='bad_year', row=_row('Iceland', event_year='soon')),
      dict(testcase_name='no_title', row=_row('Iceland', title='')),
      dict(testcase_name='no_producer', row=_row('')),
  )
  def test_malformed_row_reports_line(self, row):
    with self.assertRaises(errors.MalformedRowError) as cm:
      self._parse(_HEADER + _row('Iceland', title='Other') + row)
    self.assertEqual(cm.exception.line_number, 3)
    self.assertStartsWith(str(cm.exception), 'line 3:')

  def test_conflicting_rows_of_one_listing(self):
    with self.assertRaises(errors.MalformedRowError) as cm:
      self._parse(_HEADER + _row('Iceland') + _row('Sweden', event_year='2022'))
    self.assertEqual(cm.exception.line_number, 3)

  def test_unknown_countries_are_listed(self):
    with self.assertRaises(errors.UnmappedCountryError) as cm:
      self._parse(_HEADER + _row('Atlantis') + _row('Lemuria', host='Mu'))
    self.assertEqual(cm.exception.names, ('Atlantis', 'Lemuria', 'Mu'))

  def test_reexpansion_restores_row_count(self):
    records = synthetic.random_records(seed=3, count=40)
    path = self.create_tempfile().full_path
    synthetic.write_entries_csv(path, records)
    parsed = screenings.parse_screenings(path, self.aliases)
    self.assertLen(parsed, len(records))
    self.assertLen(
        screenings.expand_rows(parsed), len(synthetic.entry_rows(records))
    )
    self.assertEqual(
        [r.producer_countries for r in parsed],
        [r.producer_countries for r in records],
    )

  def test_split_list(self):
    self.assertEqual(screenings.split_list(' en; fr;;en '), ('en', 'fr'))


if __name__ == '__main__':
  absltest.main()
