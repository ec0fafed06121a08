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
from festcircuit import errors
from festcircuit.ingest import aliases
from festcircuit.socioeconomic import world_bank
from festcircuit.utils import audit

_WORLD_BANK = """\
country_name,indicator,year,value
France,SP.POP.TOTL,2012,65000000
France,SP.POP.TOTL,2014,66000000
France,NY.GDP.MKTP.CD,2012,2.7e12
France,NY.GDP.MKTP.CD,2013,
France,SL.UEM.TOTL.ZS,2012,9.8
Euro area,SP.POP.TOTL,2012,340000000
Uruguay,NY.GDP.MKTP.CD,2012,0
"""


class LoadWorldBankTest(absltest.TestCase):

  def setUp(self):
    super().setUp()
    self.aliases = aliases.CountryAliasTable({
        'France': 'FRA',
        'Uruguay': 'URY',
        'Euro area': aliases.IGNORE,
    })

  def test_reads_selected_indicators(self):
    path = self.create_tempfile(content=_WORLD_BANK).full_path
    trail = audit.AuditTrail()
    data = world_bank.load_world_bank(path, self.aliases, audit=trail)
    self.assertEqual(
        data.population, {'FRA': {2012: 65_000_000.0, 2014: 66_000_000.0}}
    )
    self.assertEqual(data.gdp, {'FRA': {2012: 2.7e12}})
    self.assertEqual(data.codes(), {'FRA'})
    (excluded,) = trail.entries(audit.EXCLUSIONS)
    self.assertEqual(excluded['item'], 'URY/NY.GDP.MKTP.CD/2012')

  def test_custom_indicators(self):
    path = self.create_tempfile(content=_WORLD_BANK).full_path
    data = world_bank.load_world_bank(
        path,
        self.aliases,
        world_bank.WorldBankIndicators(population='SL.UEM.TOTL.ZS'),
    )
    self.assertEqual(data.population, {'FRA': {2012: 9.8}})

  def test_unmapped_country(self):
    path = self.create_tempfile(
        content=_WORLD_BANK + 'Atlantis,SP.POP.TOTL,2012,5\n'
    ).full_path
    with self.assertRaises(errors.UnmappedCountryError):
      world_bank.load_world_bank(path, self.aliases)


class LoadUisTest(absltest.TestCase):

  def test_reads_counts(self):
    path = self.create_tempfile(
        content=(
            'country_name,year,feature_films_produced\n'
            'France,2011,272\n'
            'France,2012,279\n'
            'Uruguay,2012,\n'
        )
    ).full_path
    table = aliases.CountryAliasTable({'France': 'FRA', 'Uruguay': 'URY'})
    self.assertEqual(
        world_bank.load_uis(path, table), {'FRA': {2011: 272, 2012: 279}}
    )

  def test_missing_column(self):
    path = self.create_tempfile(content='country_name,year\nFrance,2011\n')
    with self.assertRaises(errors.SchemaError):
      world_bank.load_uis(path.full_path, aliases.CountryAliasTable({}))


if __name__ == '__main__':
  absltest.main()
