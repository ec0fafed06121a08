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


import dataclasses
import json
import os

from absl.testing import absltest
from festcircuit import errors
from festcircuit.balance import reports
from festcircuit.cli import commands
from festcircuit.cli import config as config_lib
from festcircuit.cli import manifest
from festcircuit.diversity import bootstrap
from festcircuit.diversity import metric
from festcircuit.flows import flow_matrix
from festcircuit.flows import trade_balance
from festcircuit.regression import prediction
from festcircuit.socioeconomic import profiles
from festcircuit.testing import synthetic
from festcircuit.utils import audit
import pandas as pd


def _write_fixture(directory, records):
  """Writes entries, World Bank and language files; returns a config."""
  entries = os.path.join(directory, 'entries.csv')
  synthetic.write_entries_csv(entries, records)
  wb = os.path.join(directory, 'wb.csv')
  synthetic.write_world_bank_csv(wb, synthetic.random_profiles(0))
  languages = os.path.join(directory, 'languages.csv')
  vectors = synthetic.random_vectors(0, synthetic.LANGUAGES, 3)
  pd.DataFrame(
      [[name, *vector] for name, vector in vectors.items()],
      columns=['language_id', 'v1', 'v2', 'v3'],
  ).to_csv(languages, index=False)
  return config_lib.RunConfig(
      entries=entries,
      world_bank=wb,
      language_vectors=languages,
      period=(2012, 2021),
      repeats=2,
      seed=5,
      out_dir=os.path.join(directory, 'out'),
      star_countries=('FRA',),
      min_hosted_events=1,
  )


def _read_bytes(directory):
  contents = {}
  for name in sorted(os.listdir(directory)):
    if name == manifest.MANIFEST_FILE:
      continue
    with open(os.path.join(directory, name), 'rb') as f:
      contents[name] = f.read()
  return contents


class ValidateTest(absltest.TestCase):

  def test_counts(self):
    directory = self.create_tempdir().full_path
    records = synthetic.random_records(seed=0, count=50)
    config = _write_fixture(directory, records)
    report = commands.cmd_validate(config)
    self.assertTrue(report.ok)
    self.assertEqual(report.summary.records, 50)
    self.assertEqual(report.summary.films, 50)
    self.assertEqual(
        report.summary.festivals, len({r.festival_id for r in records})
    )
    self.assertEqual(report.missing_covariates, ())
    self.assertEqual(report.missing_capitals, ())
    with open(os.path.join(config.out_dir, commands.VALIDATION_FILE)) as f:
      written = json.load(f)
    self.assertTrue(written['ok'])
    self.assertEqual(written['summary']['records'], 50)
    self.assertTrue(
        os.path.exists(os.path.join(config.out_dir, manifest.MANIFEST_FILE))
    )

  def test_alias_gap(self):
    directory = self.create_tempdir().full_path
    records = [
        synthetic.record(['FRA']),
        synthetic.record(['Atlantis'], title='Lost'),
    ]
    config = _write_fixture(directory, records)
    report = commands.cmd_validate(config)
    self.assertFalse(report.ok)
    self.assertEqual(report.unmapped_names, ('Atlantis',))
    self.assertIsNone(report.summary)

  def test_empty_entries(self):
    directory = self.create_tempdir().full_path
    config = _write_fixture(directory, [])
    report = commands.cmd_validate(config)
    self.assertTrue(report.ok)
    self.assertEqual(report.summary.records, 0)
    self.assertEqual(report.summary.films, 0)
    self.assertEqual(report.summary.countries, 0)

  def test_missing_input(self):
    config = config_lib.RunConfig(entries='/nonexistent/entries.csv')
    with self.assertRaises(errors.ConfigError):
      commands.cmd_validate(config)


class RunTest(absltest.TestCase):

  @classmethod
  def setUpClass(cls):
    super().setUpClass()
    cls.records = synthetic.random_records(seed=1, count=50)

  def setUp(self):
    super().setUp()
    self.directory = self.create_tempdir().full_path
    self.config = _write_fixture(self.directory, self.records)

  def _columns(self, name):
    return list(pd.read_csv(os.path.join(self.config.out_dir, name)).columns)

  def test_all_outputs_present_and_well_formed(self):
    trail = audit.AuditTrail()
    paths = commands.cmd_run(self.config, commands.Analysis.ALL, trail)
    names = sorted(os.path.basename(path) for path in paths)
    self.assertEqual(
        names,
        sorted([
            commands.BALANCE_REPORTS_FILE,
            commands.BALANCE_LOG_VALUES_FILE,
            commands.COEFFICIENTS_FILE,
            commands.RANKING_FILE,
            commands.COUNTRY_AGGREGATES_FILE,
            commands.FIT_SUMMARY_FILE,
            commands.FLOW_MATRIX_FILE,
            commands.FLOW_SHARES_FILE,
            commands.TRADE_BALANCE_FILE,
            commands.STAR_NETWORK_FILE.format('FRA'),
            commands.DIVERSITY_POINT_FILE,
            commands.DIVERSITY_SWEEP_FILE,
            manifest.MANIFEST_FILE,
        ]),
    )
    for path in paths:
      self.assertTrue(os.path.isfile(path), path)
    self.assertEqual(
        self._columns(commands.BALANCE_REPORTS_FILE),
        list(reports.REPORT_COLUMNS),
    )
    self.assertEqual(
        self._columns(commands.BALANCE_LOG_VALUES_FILE),
        list(reports.LOG_VALUE_COLUMNS),
    )
    self.assertEqual(
        self._columns(commands.COEFFICIENTS_FILE),
        list(prediction.COEFFICIENT_COLUMNS),
    )
    self.assertEqual(
        self._columns(commands.RANKING_FILE),
        list(prediction.RANKING_COLUMNS),
    )
    self.assertEqual(
        self._columns(commands.COUNTRY_AGGREGATES_FILE),
        list(profiles.COUNTRY_AGGREGATE_COLUMNS),
    )
    self.assertEqual(
        self._columns(commands.TRADE_BALANCE_FILE),
        list(trade_balance.TRADE_BALANCE_COLUMNS),
    )
    self.assertEqual(
        self._columns(commands.DIVERSITY_SWEEP_FILE),
        list(bootstrap.SWEEP_COLUMNS),
    )
    shares = self._columns(commands.FLOW_SHARES_FILE)
    self.assertEqual(shares[0], 'producer')
    self.assertEqual(shares[-1], flow_matrix.ROW_TOTAL_COLUMN)

  def test_fit_summary(self):
    commands.cmd_run(self.config, commands.Analysis.FIT)
    path = os.path.join(self.config.out_dir, commands.FIT_SUMMARY_FILE)
    with open(path) as f:
      summary = json.load(f)
    self.assertEqual(summary['full']['df_model'], 5)
    self.assertEqual(
        summary['full']['n_obs'] - 6, summary['full']['df_resid']
    )
    self.assertBetween(summary['full']['r_squared'], 0.0, 1.0)
    self.assertIsNone(summary['uis'])
    self.assertEqual(
        set(summary['distance_only']['coefficients']),
        {'intercept', 'distance'},
    )

  def test_manifest(self):
    trail = audit.AuditTrail()
    commands.cmd_run(self.config, commands.Analysis.FLOWS, trail)
    with open(os.path.join(self.config.out_dir, manifest.MANIFEST_FILE)) as f:
      written = json.load(f)
    self.assertEqual(written['schema_version'], manifest.SCHEMA_VERSION)
    self.assertEqual(written['command'], 'flows')
    self.assertEqual(written['seed'], 5)
    self.assertEqual(written['config_hash'], self.config.fingerprint())
    self.assertEqual(
        written['inputs']['entries']['sha256'],
        manifest.sha256_file(self.config.entries),
    )
    self.assertIn(commands.TRADE_BALANCE_FILE, written['outputs'])
    self.assertIsInstance(written['exclusions'], list)
    self.assertIn('created', written)

  def test_diversity_reruns_are_byte_identical(self):
    first = config_lib.with_overrides(
        self.config, repeats=1, out_dir=os.path.join(self.directory, 'a')
    )
    second = config_lib.with_overrides(
        first, out_dir=os.path.join(self.directory, 'b'), workers=3
    )
    commands.cmd_run(first, commands.Analysis.DIVERSITY)
    commands.cmd_run(second, commands.Analysis.DIVERSITY)
    self.assertEqual(_read_bytes(first.out_dir), _read_bytes(second.out_dir))

  def test_diversity_uses_configured_normalization(self):
    points = {}
    for normalization in metric.Normalization:
      config = config_lib.with_overrides(
          self.config,
          repeats=1,
          out_dir=os.path.join(self.directory, normalization.value),
      )
      config = dataclasses.replace(config, normalization=normalization)
      commands.cmd_run(config, commands.Analysis.DIVERSITY)
      path = os.path.join(config.out_dir, commands.DIVERSITY_POINT_FILE)
      with open(path) as f:
        points[normalization] = json.load(f)
    radius = points[metric.Normalization.RADIUS]
    diameter = points[metric.Normalization.DIAMETER]
    self.assertEqual(radius['normalization'], 'radius')
    self.assertEqual(diameter['normalization'], 'diameter')
    self.assertAlmostEqual(
        radius['latent_language'],
        min(1.0, 2 * diameter['latent_language']),
        delta=1e-5,
    )

  def test_all_reruns_are_byte_identical(self):
    other = config_lib.with_overrides(
        self.config, out_dir=os.path.join(self.directory, 'again')
    )
    commands.cmd_run(self.config, commands.Analysis.ALL)
    commands.cmd_run(other, commands.Analysis.ALL)
    self.assertEqual(
        _read_bytes(self.config.out_dir), _read_bytes(other.out_dir)
    )

  def test_missing_dataset_names_its_key(self):
    config = config_lib.RunConfig(
        entries=self.config.entries, out_dir=self.config.out_dir
    )
    with self.assertRaisesRegex(errors.ConfigError, 'world_bank'):
      commands.cmd_run(config, commands.Analysis.FIT)

  def test_flows_need_no_covariates(self):
    config = config_lib.RunConfig(
        entries=self.config.entries, out_dir=self.config.out_dir
    )
    paths = commands.cmd_run(config, commands.Analysis.FLOWS)
    self.assertLen(paths, 4)


if __name__ == '__main__':
  absltest.main()
