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


"""Film identification and period filtering."""

from collections.abc import Iterable, Sequence
import dataclasses
import hashlib

from absl import logging
from festcircuit.typing import screening


def film_key(identity: screening.FilmIdentity) -> str:
  """Returns a stable key derived only from the film identity."""
  text = f'{identity.normalized_title}\x1f{identity.production_year}'
  return hashlib.sha1(text.encode('utf-8')).hexdigest()[:16]


def assign_film_keys(
    records: Iterable[screening.ScreeningRecord],
) -> list[screening.ScreeningRecord]:
  """Sets `film_key` on every record from its title and production year.

  Records share a key iff their `FilmIdentity` is equal. The key depends on
  nothing else, so the operation is idempotent and order-independent.

  Args:
    records: the records to key.

  Returns:
    New records with `film_key` set, in input order.
  """
  keyed = [
      dataclasses.replace(record, film_key=film_key(record.identity))
      for record in records
  ]
  logging.info(
      'Assigned %d distinct film keys to %d records.',
      count_films(keyed),
      len(keyed),
  )
  return keyed


def count_films(records: Iterable[screening.ScreeningRecord]) -> int:
  """Returns the number of distinct films among keyed records."""
  return len({
      record.film_key or film_key(record.identity) for record in records
  })


def filter_period(
    records: Iterable[screening.ScreeningRecord],
    start: int,
    end: int,
) -> list[screening.ScreeningRecord]:
  """Keeps the records whose event year lies in [start, end].

  Raises:
    ValueError: if start > end.
  """
  if start > end:
    raise ValueError(f'Period start {start} is after end {end}.')
  return [record for record in records if start <= record.event_year <= end]


def films_by_key(
    records: Sequence[screening.ScreeningRecord],
) -> dict[str, list[screening.ScreeningRecord]]:
  """Groups keyed records by film."""
  groups: dict[str, list[screening.ScreeningRecord]] = {}
  for record in records:
    key = record.film_key or film_key(record.identity)
    groups.setdefault(key, []).append(record)
  return groups
