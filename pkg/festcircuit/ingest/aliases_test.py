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
from festcircuit.ingest import aliases


class CountryAliasTableTest(parameterized.TestCase):

  @parameterized.named_parameters(
      dict(testcase_name='code', raw='FRA', expected='FRA'),
      dict(testcase_name='name', raw='France', expected='FRA'),
      dict(testcase_name='spacing', raw=' united   states ', expected='USA'),
  )
  def test_bundled_names_resolve(self, raw, expected):
    table = aliases.CountryAliasTable.from_csv()
    self.assertEqual(table.resolve(raw), expected)

  def test_custom_file_overrides_and_ignores(self):
    path = self.create_tempfile(
        content=(
            'raw_name,canonical_code\n'
            'Czech Republic,CZE\n'
            'Euro area,-\n'
        )
    ).full_path
    table = aliases.CountryAliasTable.from_csv(path)
    self.assertEqual(table.resolve('czech republic'), 'CZE')
    self.assertIsNone(table.resolve('Euro area'))
    self.assertNotIn(aliases.IGNORE, table.codes())

  def test_unmapped_names_are_all_reported(self):
    table = aliases.CountryAliasTable({'France': 'FRA'})
    with self.assertRaises(errors.UnmappedCountryError) as cm:
      table.resolve_all(['France', 'Atlantis', 'Lemuria', 'Atlantis'])
    self.assertEqual(cm.exception.names, ('Atlantis', 'Lemuria'))
    self.assertIn('Atlantis', str(cm.exception))

  def test_unmapped_lists_sorted_offenders(self):
    table = aliases.CountryAliasTable({'France': 'FRA'})
    self.assertEqual(table.unmapped(['b', 'France', 'a']), ['a', 'b'])

  def test_missing_columns(self):
    path = self.create_tempfile(content='name,code\nFrance,FRA\n').full_path
    with self.assertRaises(errors.SchemaError):
      aliases.CountryAliasTable.from_csv(path)

  def test_without_bundled_names(self):
    path = self.create_tempfile(
        content='raw_name,canonical_code\nGaul,FRA\n'
    ).full_path
    table = aliases.CountryAliasTable.from_csv(path, include_bundled=False)
    self.assertLen(table, 1)
    self.assertNotIn('France', table)


if __name__ == '__main__':
  absltest.main()
