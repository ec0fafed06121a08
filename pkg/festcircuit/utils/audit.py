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

"""A registry of audit channels collecting exclusions and warnings of a run.

Analysis modules publish what they left out (countries without covariates,
rows with zero appearances, languages without vectors, ...) to named channels.
The command line collects the channels into the run manifest.
"""

from collections.abc import Mapping
import threading
from typing import Any

from absl import logging
from reactivex import subject

EXCLUSIONS = 'exclusions'
WARNINGS = 'warnings'


class AuditTrail:
  """Named replay channels of audit records."""

  def __init__(self):
    self._channels: dict[str, subject.ReplaySubject] = {}
    self._channels_lock = threading.Lock()

  def _get_channel_or_create(self, channel: str) -> subject.ReplaySubject:
    """Returns the channel, creating it if needed. Caller holds the lock."""
    if not self._channels_lock.locked():
      raise RuntimeError('Channels lock is not acquired.')
    if channel not in self._channels:
      self._channels[channel] = subject.ReplaySubject()
    return self._channels[channel]

  def record(self, channel: str, module: str, **fields: Any) -> None:
    """Publishes an audit record.

    Args:
      channel: channel name, e.g. `EXCLUSIONS`.
      module: pipeline module publishing the record.
      **fields: payload of the record.
    """
    datum = {'module': module, **fields}
    with self._channels_lock:
      self._get_channel_or_create(channel).on_next(datum)

  def exclude(self, module: str, item: str, reason: str) -> None:
    """Records that `item` was left out of an analysis."""
    logging.warning('[%s] excluded %s: %s', module, item, reason)
    self.record(EXCLUSIONS, module, item=item, reason=reason)

  def warn(self, module: str, message: str) -> None:
    logging.warning('[%s] %s', module, message)
    self.record(WARNINGS, module, message=message)

  def available_channels(self) -> set[str]:
    with self._channels_lock:
      return set(self._channels)

  def entries(self, channel: str) -> list[Mapping[str, Any]]:
    """Returns every record published so far to `channel`."""
    with self._channels_lock:
      channel_subject = self._channels.get(channel)
    if channel_subject is None:
      return []
    data = []
    subscription = channel_subject.subscribe(on_next=data.append)
    subscription.dispose()
    return data

  def snapshot(self) -> dict[str, list[Mapping[str, Any]]]:
    """Returns all channels, records in publication order."""
    return {
        channel: self.entries(channel)
        for channel in sorted(self.available_channels())
    }

  def close(self) -> None:
    """Completes and forgets all channels."""
    with self._channels_lock:
      for channel in self._channels.values():
        channel.on_completed()
      self._channels.clear()


def exclude(audit: AuditTrail | None, module: str, item: str, reason: str):
  """Records an exclusion on `audit`, or only logs it when there is none."""
  if audit is None:
    logging.warning('[%s] excluded %s: %s', module, item, reason)
  else:
    audit.exclude(module, item, reason)


def warn(audit: AuditTrail | None, module: str, message: str):
  """Records a warning on `audit`, or only logs it when there is none."""
  if audit is None:
    logging.warning('[%s] %s', module, message)
  else:
    audit.warn(module, message)
