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


"""Latent vector spaces for genre tags and languages."""

from collections.abc import Iterable, Mapping, Sequence
import dataclasses
import enum
import itertools
import os
import types

from absl import logging
from festcircuit import errors
from festcircuit.ingest import films
from festcircuit.typing import screening
import numpy as np
import pandas as pd
from scipy.spatial import distance

DEFAULT_GENRE_DIMENSION = 8
LANGUAGE_ID_COLUMN = 'language_id'


@enum.unique
class SpaceKind(enum.Enum):
  GENRE = 'genre'
  LANGUAGE = 'language'


@dataclasses.dataclass(frozen=True)
class EmbeddingSpace:
  """Named vectors of one dimension.

  Attributes:
    kind: what the names are.
    vectors: name to vector.
    fallbacks: name to the name whose vector stands in for it.
    max_distance: largest Euclidean distance between two vectors, 0 for a
      space with a single distinct vector.
  """

  kind: SpaceKind
  vectors: Mapping[str, np.ndarray]
  fallbacks: Mapping[str, str] = dataclasses.field(default_factory=dict)
  max_distance: float = dataclasses.field(init=False)

  def __post_init__(self):
    if not self.vectors:
      raise ValueError(f'{self.kind.value} space has no vectors')
    frozen = {}
    dimension = None
    for name, vector in self.vectors.items():
      vector = np.array(vector, dtype=float)
      vector.setflags(write=False)
      if vector.ndim != 1 or dimension not in (None, vector.shape[0]):
        raise errors.DimensionMismatchError(
            f'{self.kind.value} vector {name!r} has shape {vector.shape},'
            f' expected ({dimension},)'
        )
      dimension = vector.shape[0]
      frozen[name] = vector
    object.__setattr__(self, 'vectors', types.MappingProxyType(frozen))
    object.__setattr__(
        self, 'fallbacks', types.MappingProxyType(dict(self.fallbacks))
    )
    matrix = np.stack(list(frozen.values()))
    max_distance = (
        float(distance.pdist(matrix).max()) if len(matrix) > 1 else 0.0
    )
    object.__setattr__(self, 'max_distance', max_distance)

  @property
  def dimension(self) -> int:
    return len(next(iter(self.vectors.values())))

  def __contains__(self, name: str) -> bool:
    return self.resolve(name) is not None

  def __len__(self) -> int:
    return len(self.vectors)

  def names(self) -> list[str]:
    return sorted(self.vectors)

  def resolve(self, name: str) -> str | None:
    """Returns the name whose vector represents `name`, if any."""
    if name in self.vectors:
      return name
    fallback = self.fallbacks.get(name)
    if fallback in self.vectors:
      return fallback
    return None

  def vector(self, name: str) -> np.ndarray | None:
    resolved = self.resolve(name)
    return None if resolved is None else self.vectors[resolved]


def tag_cooccurrence(
    tag_sets: Sequence[Iterable[str]],
) -> tuple[list[str], np.ndarray]:
  """Counts films per pair of tags.

  Returns:
    The sorted tags and the symmetric count matrix; the diagonal holds the
    number of films carrying each tag.
  """
  tag_sets = [sorted(set(tags)) for tags in tag_sets]
  tags = sorted(set(itertools.chain.from_iterable(tag_sets)))
  index = {tag: n for n, tag in enumerate(tags)}
  counts = np.zeros((len(tags), len(tags)))
  for film_tags in tag_sets:
    positions = [index[tag] for tag in film_tags]
    counts[np.ix_(positions, positions)] += 1
  return tags, counts


def ppmi(counts: np.ndarray) -> np.ndarray:
  """Positive pointwise mutual information of a co-occurrence matrix."""
  total = counts.sum()
  marginals = counts.sum(axis=1)
  with np.errstate(divide='ignore', invalid='ignore'):
    pmi = np.log(counts * total / np.outer(marginals, marginals))
  pmi[~np.isfinite(pmi)] = 0.0
  return np.maximum(pmi, 0.0)


def spectral_vectors(matrix: np.ndarray, dimension: int) -> np.ndarray:
  """Rows of U_d·sqrt(S_d) from the SVD of `matrix`.

  Each component's sign is fixed so that its largest-magnitude entry is
  positive, which makes the result independent of the LAPACK build.
  """
  u, s, _ = np.linalg.svd(matrix)
  s = np.where(s > s[0] * 1e-12, s, 0.0)
  dimension = min(dimension, len(s))
  u = u[:, :dimension]
  pivots = np.argmax(np.abs(u), axis=0)
  signs = np.sign(u[pivots, np.arange(dimension)])
  signs[signs == 0] = 1.0
  return u * signs * np.sqrt(s[:dimension])


def train_genre_embeddings(
    records: Sequence[screening.ScreeningRecord],
    dimension: int = DEFAULT_GENRE_DIMENSION,
) -> EmbeddingSpace:
  """Embeds genre tags from their co-occurrence on films.

  Tag co-occurrence is counted once per film, converted to positive PMI and
  factorized by SVD. Tags used together end up close.

  Args:
    records: screening records; each film counts once.
    dimension: number of latent dimensions, capped by the number of tags.

  Raises:
    DegenerateCooccurrenceError: if no film carries two distinct tags.
  """
  tag_sets = [
      set().union(*(record.genre_tags for record in group))
      for group in films.films_by_key(records).values()
  ]
  if not any(len(set(tags)) >= 2 for tags in tag_sets):
    raise errors.DegenerateCooccurrenceError(
        'no film carries two distinct genre tags'
    )
  tags, counts = tag_cooccurrence(tag_sets)
  vectors = spectral_vectors(ppmi(counts), dimension)
  logging.info(
      'Genre space: %d tags from %d films in %d dimensions.',
      len(tags),
      len(tag_sets),
      vectors.shape[1],
  )
  return EmbeddingSpace(SpaceKind.GENRE, dict(zip(tags, vectors)))


def load_language_vectors(
    path: str | os.PathLike[str],
    fallbacks: Mapping[str, str] | None = None,
) -> EmbeddingSpace:
  """Reads `language_id,v1..vd` rows.

  Args:
    path: the CSV file.
    fallbacks: language to the language whose vector it borrows.

  Raises:
    SchemaError: if the file is empty, lacks `language_id` or holds
      non-numeric values.
    DimensionMismatchError: if rows have different numbers of values.
  """
  try:
    frame = pd.read_csv(path, dtype={LANGUAGE_ID_COLUMN: str})
  except pd.errors.EmptyDataError:
    raise errors.SchemaError(f'{path}: empty language vectors file') from None
  except pd.errors.ParserError as e:
    raise errors.DimensionMismatchError(f'{path}: {e}') from None
  if LANGUAGE_ID_COLUMN not in frame.columns:
    raise errors.SchemaError(f'{path}: missing column {LANGUAGE_ID_COLUMN}')
  if frame.empty or len(frame.columns) < 2:
    raise errors.SchemaError(f'{path}: no language vectors')
  values = frame.drop(columns=[LANGUAGE_ID_COLUMN])
  try:
    values = values.astype(float)
  except ValueError:
    raise errors.SchemaError(f'{path}: non-numeric vector values') from None
  incomplete = values.isna().any(axis=1)
  if incomplete.any():
    raise errors.DimensionMismatchError(
        f'{path}: rows with missing values for'
        f' {sorted(frame.loc[incomplete, LANGUAGE_ID_COLUMN])}'
    )
  ids = frame[LANGUAGE_ID_COLUMN].str.strip()
  space = EmbeddingSpace(
      SpaceKind.LANGUAGE,
      dict(zip(ids, values.to_numpy())),
      fallbacks=fallbacks or {},
  )
  logging.info(
      'Language space: %d languages in %d dimensions, max distance %.4f.',
      len(space),
      space.dimension,
      space.max_distance,
  )
  return space
