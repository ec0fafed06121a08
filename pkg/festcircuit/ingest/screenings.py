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


"""Parsing of festival programming entries.

The entries file has one row per (film listing, producer country). Rows of
the same listing are collapsed into one `ScreeningRecord` that carries the
full producer list.
"""

from collections.abc import Sequence
import dataclasses
import os

from absl import logging
from festcircuit import errors
from festcircuit.ingest import aliases as aliases_lib
from festcircuit.typing import screening
import pandas as pd

ENTRY_COLUMNS = (
    'film_title',
    'production_year',
    'festival_id',
    'festival_series_id',
    'event_year',
    'host_country',
    'producer_country',
    'languages',
    'genre_tags',
)

_LIST_SEPARATOR = ';'
# The first line of the file is the header.
_FIRST_DATA_LINE = 2


def split_list(cell: str) -> tuple[str, ...]:
  """Splits a semicolon-separated cell, dropping blanks and duplicates."""
  items = (item.strip() for item in cell.split(_LIST_SEPARATOR))
  return tuple(dict.fromkeys(item for item in items if item))


def _parse_year(value: str, column: str, line_number: int) -> int:
  try:
    return int(value.strip())
  except ValueError:
    raise errors.MalformedRowError(
        line_number, f'{column} is not an integer year: {value!r}'
    ) from None


@dataclasses.dataclass
class _Listing:
  """A listing being assembled from its per-producer rows."""

  first_line: int
  title: str
  production_year: int
  festival_id: str
  festival_series_id: str
  event_year: int
  host_country: str
  producers: list[str] = dataclasses.field(default_factory=list)
  languages: dict[str, None] = dataclasses.field(default_factory=dict)
  genre_tags: dict[str, None] = dataclasses.field(default_factory=dict)


def read_entries_frame(path: str | os.PathLike[str]) -> pd.DataFrame:
  """Reads the raw entries file as strings and checks its header.

  Raises:
    SchemaError: if columns are missing or the file is empty.
  """
  try:
    frame = pd.read_csv(
        path, dtype=str, keep_default_na=False, encoding='utf-8'
    )
  except pd.errors.EmptyDataError:
    raise errors.SchemaError(f'{path}: file has no header row') from None
  missing = [column for column in ENTRY_COLUMNS if column not in frame.columns]
  if missing:
    raise errors.SchemaError(f'{path}: missing columns {missing}')
  return frame


def parse_screenings(
    path: str | os.PathLike[str],
    country_aliases: aliases_lib.CountryAliasTable,
) -> list[screening.ScreeningRecord]:
  """Parses the entries file into collapsed screening records.

  Args:
    path: CSV file with the columns in `ENTRY_COLUMNS`.
    country_aliases: resolves raw host and producer names to codes.

  Returns:
    One record per film listing at a festival edition, in order of first
    appearance. `film_key` is left unset.

  Raises:
    SchemaError: if the header does not match.
    MalformedRowError: for a row with bad values, with its line number.
    UnmappedCountryError: listing every country name the alias table lacks.
  """
  frame = read_entries_frame(path)
  country_names = set(frame['host_country']) | set(frame['producer_country'])
  codes = country_aliases.resolve_all(
      name for name in country_names if name.strip()
  )
  return collapse_rows(frame, codes)


def collapse_rows(
    frame: pd.DataFrame,
    codes: dict[str, str | None],
) -> list[screening.ScreeningRecord]:
  """Collapses per-producer rows into records.

  Args:
    frame: raw rows with the columns in `ENTRY_COLUMNS`.
    codes: canonical code for every raw country name in `frame`.
  """
  listings: dict[tuple[str, int, str], _Listing] = {}
  for offset, row in enumerate(frame.itertuples(index=False)):
    line_number = offset + _FIRST_DATA_LINE
    title = row.film_title.strip()
    if not title:
      raise errors.MalformedRowError(line_number, 'empty film_title')
    festival_id = row.festival_id.strip()
    if not festival_id:
      raise errors.MalformedRowError(line_number, 'empty festival_id')
    if not row.producer_country.strip():
      raise errors.MalformedRowError(line_number, 'empty producer_country')
    if not row.host_country.strip():
      raise errors.MalformedRowError(line_number, 'empty host_country')
    production_year = _parse_year(
        row.production_year, 'production_year', line_number
    )
    event_year = _parse_year(row.event_year, 'event_year', line_number)
    host = codes[row.host_country]
    producer = codes[row.producer_country]
    if host is None:
      raise errors.MalformedRowError(
          line_number, f'host country {row.host_country!r} is ignored'
      )

    # Spellings that normalize alike are one listing; the first one is kept.
    key = (screening.normalize_title(title), production_year, festival_id)
    listing = listings.get(key)
    if listing is None:
      listing = _Listing(
          first_line=line_number,
          title=title,
          production_year=production_year,
          festival_id=festival_id,
          festival_series_id=row.festival_series_id.strip(),
          event_year=event_year,
          host_country=host,
      )
      listings[key] = listing
    elif (listing.event_year, listing.host_country) != (event_year, host):
      raise errors.MalformedRowError(
          line_number,
          f'conflicts with the listing first seen on line {listing.first_line}',
      )
    if producer is not None and producer not in listing.producers:
      listing.producers.append(producer)
    listing.languages.update(dict.fromkeys(split_list(row.languages)))
    listing.genre_tags.update(
        dict.fromkeys(tag.casefold() for tag in split_list(row.genre_tags))
    )

  records = []
  for listing in listings.values():
    if not listing.producers:
      raise errors.MalformedRowError(
          listing.first_line, 'listing has no producer country'
      )
    records.append(
        screening.ScreeningRecord(
            title=listing.title,
            production_year=listing.production_year,
            festival_id=listing.festival_id,
            festival_series_id=listing.festival_series_id,
            event_year=listing.event_year,
            host_country=listing.host_country,
            producer_countries=listing.producers,
            languages=tuple(listing.languages),
            genre_tags=tuple(listing.genre_tags),
        )
    )
  logging.info(
      'Parsed %d rows into %d screening records.', len(frame), len(records)
  )
  return records


def expand_rows(
    records: Sequence[screening.ScreeningRecord],
) -> list[tuple[screening.ScreeningRecord, str]]:
  """Re-expands records into one (record, producer) pair per producer."""
  return [
      (record, producer)
      for record in records
      for producer in record.producer_countries
  ]
