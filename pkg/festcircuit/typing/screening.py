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


"""Types describing festival programming entries."""

from collections.abc import Sequence
import dataclasses
import fractions
import string
import unicodedata


def normalize_title(title: str) -> str:
  """Returns the canonical form of a film title used for identification.

  Applies Unicode compatibility normalization and case folding, trims,
  collapses internal whitespace and strips punctuation at both ends.

  Args:
    title: the title as entered in the source data.
  """
  text = unicodedata.normalize('NFKC', title).casefold()
  text = ' '.join(text.split())

  def _is_punctuation(char: str) -> bool:
    return (
        unicodedata.category(char).startswith('P')
        or char in string.punctuation
    )

  start, end = 0, len(text)
  while start < end and _is_punctuation(text[start]):
    start += 1
  while end > start and _is_punctuation(text[end - 1]):
    end -= 1
  return text[start:end].strip()


@dataclasses.dataclass(frozen=True)
class FilmIdentity:
  """The identity of a film: its normalized title and production year.

  Attributes:
    normalized_title: title after `normalize_title`.
    production_year: reported year of production.
  """

  normalized_title: str
  production_year: int

  @classmethod
  def from_title(cls, title: str, production_year: int) -> 'FilmIdentity':
    return cls(normalize_title(title), production_year)


@dataclasses.dataclass(frozen=True, kw_only=True)
class ScreeningRecord:
  """One listing of a film at one festival edition.

  Rows that repeat a listing once per producer country in the source data are
  collapsed into a single record carrying the full producer list.

  Attributes:
    title: film title as entered in the source.
    production_year: year the film was produced.
    festival_id: identity of the festival edition.
    festival_series_id: identity of the festival series.
    event_year: year of the festival edition.
    host_country: canonical code of the country hosting the festival.
    producer_countries: canonical codes of the producer countries, in source
      order. The order is kept but never used for weighting.
    languages: canonical language identifiers spoken in the film.
    genre_tags: thematic tags of the film.
    film_key: film identity key, set by `ingest.films.assign_film_keys`.
  """

  title: str
  production_year: int
  festival_id: str
  festival_series_id: str
  event_year: int
  host_country: str
  producer_countries: Sequence[str]
  languages: Sequence[str] = ()
  genre_tags: Sequence[str] = ()
  film_key: str | None = None

  def __post_init__(self):
    producers = tuple(self.producer_countries)
    if not producers:
      raise ValueError('A screening record needs at least one producer.')
    if len(set(producers)) != len(producers):
      raise ValueError(f'Duplicate producer countries: {producers!r}')
    object.__setattr__(self, 'producer_countries', producers)
    object.__setattr__(self, 'languages', tuple(self.languages))
    object.__setattr__(self, 'genre_tags', tuple(self.genre_tags))

  @property
  def producer_count(self) -> int:
    return len(self.producer_countries)

  @property
  def coproduction_weight(self) -> fractions.Fraction:
    """The share of this entry credited to each producer, 1/n."""
    return fractions.Fraction(1, self.producer_count)

  @property
  def identity(self) -> FilmIdentity:
    return FilmIdentity.from_title(self.title, self.production_year)
