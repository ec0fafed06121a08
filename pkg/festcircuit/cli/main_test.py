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


import os
from unittest import mock

from absl import logging
from absl.testing import absltest
from festcircuit.cli import commands
from festcircuit.cli import main
from festcircuit.testing import synthetic


class MainTest(absltest.TestCase):

  def setUp(self):
    super().setUp()
    self.enter_context(mock.patch.dict(os.environ))
    self.directory = self.create_tempdir().full_path
    os.environ['FESTCIRCUIT_DATA_DIR'] = self.directory
    self.out_dir = os.path.join(self.directory, 'out')

  def _config(self, records):
    synthetic.write_entries_csv(
        os.path.join(self.directory, 'entries.csv'), records
    )
    path = os.path.join(self.directory, 'run.yaml')
    with open(path, 'w') as f:
      f.write('entries: entries.csv\nseed: 1\n')
    return path

  def _main(self, *argv):
    return main.main(main.parse_flags(['festcircuit', *argv]))

  def test_parse_flags(self):
    args = main.parse_flags([
        'festcircuit',
        'diversity',
        '--config=run.yaml',
        '--period',
        '2013',
        '2019',
        '--seed=4',
        '--reference-country=ARG',
        '--workers=2',
    ])
    self.assertEqual(args.command, 'diversity')
    self.assertEqual(args.period, [2013, 2019])
    self.assertEqual(args.seed, 4)
    self.assertEqual(args.reference_country, 'ARG')
    self.assertEqual(args.workers, 2)
    self.assertIsNone(args.repeats)
    self.assertIsNone(args.out_dir)

  def test_validate_succeeds(self):
    config = self._config(synthetic.random_records(seed=0, count=10))
    self.assertEqual(
        self._main(
            'validate', f'--config={config}', f'--out-dir={self.out_dir}'
        ),
        0,
    )
    self.assertTrue(
        os.path.exists(os.path.join(self.out_dir, commands.VALIDATION_FILE))
    )

  def test_validate_fails_on_unmapped_names(self):
    config = self._config([synthetic.record(['Atlantis'])])
    self.assertEqual(
        self._main(
            'validate', f'--config={config}', f'--out-dir={self.out_dir}'
        ),
        1,
    )

  def test_module_tagged_error(self):
    config = self._config(synthetic.random_records(seed=0, count=10))
    with mock.patch.object(logging, 'error') as error:
      code = self._main(
          'fit', f'--config={config}', f'--out-dir={self.out_dir}'
      )
    self.assertEqual(code, 1)
    error.assert_called_once()
    self.assertEqual(error.call_args.args[1], 'cli')

  def test_flows_succeed(self):
    config = self._config(synthetic.random_records(seed=0, count=10))
    self.assertEqual(
        self._main('flows', f'--config={config}', f'--out-dir={self.out_dir}'),
        0,
    )

  def test_bad_override(self):
    config = self._config(synthetic.random_records(seed=0, count=10))
    self.assertEqual(
        self._main('flows', f'--config={config}', '--repeats=0'), 1
    )


if __name__ == '__main__':
  absltest.main()
