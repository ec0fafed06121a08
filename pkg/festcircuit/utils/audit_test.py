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

"""Tests for the audit trail."""

from unittest import mock

from absl.testing import absltest
from festcircuit.utils import audit


class AuditTrailTest(absltest.TestCase):

  def test_empty_channels(self):
    trail = audit.AuditTrail()
    self.assertEmpty(trail.available_channels())
    self.assertEqual(trail.entries(audit.EXCLUSIONS), [])

  def test_exclude_is_replayed(self):
    trail = audit.AuditTrail()
    trail.exclude('regression', 'ATA', 'no appearances')
    trail.exclude('regression', 'VAT', 'missing covariates')
    self.assertEqual(
        trail.entries(audit.EXCLUSIONS),
        [
            {'module': 'regression', 'item': 'ATA', 'reason': 'no appearances'},
            {
                'module': 'regression',
                'item': 'VAT',
                'reason': 'missing covariates',
            },
        ],
    )

  def test_entries_can_be_read_twice(self):
    trail = audit.AuditTrail()
    trail.warn('diversity', 'language xx has no vector')
    self.assertLen(trail.entries(audit.WARNINGS), 1)
    self.assertLen(trail.entries(audit.WARNINGS), 1)

  def test_snapshot_groups_channels(self):
    trail = audit.AuditTrail()
    trail.warn('flows', 'w')
    trail.exclude('flows', 'X', 'r')
    self.assertEqual(
        sorted(trail.snapshot()), [audit.EXCLUSIONS, audit.WARNINGS]
    )

  def test_close_completes_channels(self):
    trail = audit.AuditTrail()
    trail.warn('flows', 'w')
    sentinel = mock.MagicMock()
    trail._channels[audit.WARNINGS].subscribe(on_completed=sentinel)
    trail.close()
    sentinel.assert_called_once()
    self.assertEmpty(trail.available_channels())

  def test_module_helpers_accept_missing_trail(self):
    audit.exclude(None, 'ingest', 'row', 'reason')
    audit.warn(None, 'ingest', 'message')


if __name__ == '__main__':
  absltest.main()
