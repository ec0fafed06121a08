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


"""Diversity of counterfactual circuits restricted to some producers.

A criterion on a producer-country attribute keeps the records whose every
producer satisfies it. The kept records are resampled with replacement up to
the size of the actual circuit, and the diversity of each resample is
measured. Repeats are summarized by their mean and a normal-approximation
95% interval of that mean.
"""

from collections.abc import Iterable, Mapping, Sequence
import collections
import dataclasses
import enum
import math

from absl import logging
from festcircuit import errors
from festcircuit.diversity import embeddings
from festcircuit.diversity import metric
from festcircuit.ingest import films
from festcircuit.socioeconomic import profiles as profiles_lib
from festcircuit.typing import country
from festcircuit.typing import screening
from festcircuit.utils import audit as audit_lib
from festcircuit.utils import concurrency
import numpy as np
import pandas as pd

_MODULE = 'diversity'

DEFAULT_REPEATS = 100
Z_95 = 1.96

LATENT_GENRE = 'latent_genre'
LATENT_LANGUAGE = 'latent_language'
LANGUAGE_COUNT = 'language_count'
LANGUAGE_COUNT_PCT = 'language_count_pct'

SWEEP_COLUMNS = (
    'attribute',
    'op',
    'threshold',
    'metric',
    'mean',
    'ci_low',
    'ci_high',
    'repeats',
    'seed',
    'skipped_records',
)


@enum.unique
class Comparison(enum.Enum):
  BELOW = '<'
  ABOVE = '>'


@dataclasses.dataclass(frozen=True)
class Criterion:
  """Keeps producer countries whose attribute is below or above a threshold.

  Comparisons are strict, so a value equal to the threshold matches neither
  direction.
  """

  attribute: country.Attribute
  comparison: Comparison
  threshold: float

  def matches(self, value: float) -> bool:
    if self.comparison is Comparison.BELOW:
      return value < self.threshold
    return value > self.threshold

  def describe(self) -> str:
    return (
        f'{self.attribute.value} {self.comparison.value} {self.threshold:g}'
    )


def filter_by_criterion(
    records: Iterable[screening.ScreeningRecord],
    criterion: Criterion | None,
    profiles: Mapping[str, country.CountryProfile] | None = None,
    audit: audit_lib.AuditTrail | None = None,
) -> list[screening.ScreeningRecord]:
  """Keeps records whose every producer meets `criterion` at the event year.

  A None criterion keeps everything. Producers whose attribute is unknown
  fail the criterion; they are reported once each.
  """
  if criterion is None:
    return list(records)
  profiles = profiles or {}
  unknown = collections.Counter()
  cache: dict[tuple[str, int], bool | None] = {}

  def satisfied(code: str, year: int) -> bool | None:
    if (code, year) not in cache:
      try:
        profile = profiles[code]
        value = profiles_lib.attribute_value(
            profile, criterion.attribute, year
        )
      except (KeyError, errors.CovariateUnavailableError):
        cache[(code, year)] = None
      else:
        cache[(code, year)] = criterion.matches(value)
    return cache[(code, year)]

  kept = []
  for record in records:
    checks = [
        satisfied(code, record.event_year)
        for code in record.producer_countries
    ]
    for code, check in zip(record.producer_countries, checks):
      if check is None:
        unknown[code] += 1
    if all(checks):
      kept.append(record)
  for code, n in sorted(unknown.items()):
    audit_lib.exclude(
        audit,
        _MODULE,
        code,
        f'no {criterion.attribute.value} for {n} records',
    )
  return kept


@dataclasses.dataclass(frozen=True)
class FilmVector:
  """Latent position of one film.

  Attributes:
    film_key: the film.
    genre_vector: mean vector of its genre tags, None without known tags.
    languages: every listed language, known or not.
    language_vectors: one row per language with a vector.
    language_weights: equal weights of those rows summing to 1.
  """

  film_key: str
  genre_vector: np.ndarray | None
  languages: tuple[str, ...]
  language_vectors: np.ndarray
  language_weights: np.ndarray

  @property
  def has_genre(self) -> bool:
    return self.genre_vector is not None

  @property
  def has_language(self) -> bool:
    return len(self.language_weights) > 0


def _key(record: screening.ScreeningRecord) -> str:
  return record.film_key or films.film_key(record.identity)


def film_vectors(
    records: Sequence[screening.ScreeningRecord],
    genre_space: embeddings.EmbeddingSpace,
    language_space: embeddings.EmbeddingSpace,
    audit: audit_lib.AuditTrail | None = None,
) -> dict[str, FilmVector]:
  """Places every film in the genre and language spaces.

  Tags and languages are pooled over all records of a film. Languages with
  a fallback are reported as warnings, languages without a vector as
  exclusions.
  """
  tags: dict[str, dict[str, None]] = collections.defaultdict(dict)
  languages: dict[str, dict[str, None]] = collections.defaultdict(dict)
  for record in records:
    key = _key(record)
    tags[key].update(dict.fromkeys(record.genre_tags))
    languages[key].update(dict.fromkeys(record.languages))

  missing = collections.Counter()
  substituted = {}
  vectors = {}
  for key in tags:
    genre = [genre_space.vector(t) for t in tags[key]]
    genre = [v for v in genre if v is not None]
    known = []
    for language in languages[key]:
      resolved = language_space.resolve(language)
      if resolved is None:
        missing[language] += 1
        continue
      if resolved != language:
        substituted[language] = resolved
      known.append(language_space.vectors[resolved])
    vectors[key] = FilmVector(
        film_key=key,
        genre_vector=np.mean(genre, axis=0) if genre else None,
        languages=tuple(languages[key]),
        language_vectors=(
            np.stack(known)
            if known
            else np.zeros((0, language_space.dimension))
        ),
        language_weights=np.full(len(known), 1 / len(known) if known else 0),
    )
  for language, resolved in sorted(substituted.items()):
    audit_lib.warn(
        audit,
        _MODULE,
        f'language {language!r} uses the vector of {resolved!r}',
    )
  for language, n in sorted(missing.items()):
    audit_lib.exclude(
        audit, _MODULE, language, f'no language vector ({n} films)'
    )
  return vectors


@dataclasses.dataclass(frozen=True)
class _Arrays:
  """Records of a circuit flattened for fast weighted measurement."""

  n_records: int
  genre_vectors: np.ndarray
  genre_mask: np.ndarray
  contribution_record: np.ndarray
  contribution_vectors: np.ndarray
  contribution_weights: np.ndarray
  presence_record: np.ndarray
  presence_language: np.ndarray


def _flatten(
    records: Sequence[screening.ScreeningRecord],
    vectors: Mapping[str, FilmVector],
    genre_dimension: int,
    language_dimension: int,
    language_ids: Mapping[str, int],
) -> _Arrays:
  genre_vectors = np.zeros((len(records), genre_dimension))
  genre_mask = np.zeros(len(records), dtype=bool)
  contribution_record, contribution_vectors, contribution_weights = [], [], []
  presence_record, presence_language = [], []
  for n, record in enumerate(records):
    film = vectors[_key(record)]
    if film.has_genre:
      genre_vectors[n] = film.genre_vector
      genre_mask[n] = True
    for vector, weight in zip(film.language_vectors, film.language_weights):
      contribution_record.append(n)
      contribution_vectors.append(vector)
      contribution_weights.append(weight)
    for language in film.languages:
      presence_record.append(n)
      presence_language.append(language_ids[language])
  return _Arrays(
      n_records=len(records),
      genre_vectors=genre_vectors,
      genre_mask=genre_mask,
      contribution_record=np.array(contribution_record, dtype=int),
      contribution_vectors=np.array(contribution_vectors).reshape(
          -1, language_dimension
      ),
      contribution_weights=np.array(contribution_weights, dtype=float),
      presence_record=np.array(presence_record, dtype=int),
      presence_language=np.array(presence_language, dtype=int),
  )


def _latent(
    vectors: np.ndarray,
    weights: np.ndarray,
    space: embeddings.EmbeddingSpace,
    normalization: metric.Normalization,
) -> float:
  if weights.sum() <= 0:
    return math.nan
  return metric.normalized_deviation(
      vectors, weights, space.max_distance, normalization
  )


def _measure(
    arrays: _Arrays,
    multiplicity: np.ndarray,
    genre_space: embeddings.EmbeddingSpace,
    language_space: embeddings.EmbeddingSpace,
    normalization: metric.Normalization,
) -> tuple[float, float, int]:
  """Genre diversity, language diversity and distinct languages."""
  genre = _latent(
      arrays.genre_vectors,
      multiplicity * arrays.genre_mask,
      genre_space,
      normalization,
  )
  language = _latent(
      arrays.contribution_vectors,
      multiplicity[arrays.contribution_record] * arrays.contribution_weights,
      language_space,
      normalization,
  )
  present = multiplicity[arrays.presence_record] > 0
  distinct = len(np.unique(arrays.presence_language[present]))
  return genre, language, distinct


def _language_ids(
    records: Iterable[screening.ScreeningRecord],
) -> dict[str, int]:
  names = sorted({lang for record in records for lang in record.languages})
  return {name: n for n, name in enumerate(names)}


@dataclasses.dataclass(frozen=True)
class PointDiversity:
  latent_genre: float
  latent_language: float
  languages: int


def point_diversity(
    records: Sequence[screening.ScreeningRecord],
    vectors: Mapping[str, FilmVector],
    genre_space: embeddings.EmbeddingSpace,
    language_space: embeddings.EmbeddingSpace,
    normalization: metric.Normalization = metric.DEFAULT_NORMALIZATION,
) -> PointDiversity:
  """Diversity of `records` as they are, each record counted once."""
  arrays = _flatten(
      records,
      vectors,
      genre_space.dimension,
      language_space.dimension,
      _language_ids(records),
  )
  genre, language, distinct = _measure(
      arrays,
      np.ones(len(records)),
      genre_space,
      language_space,
      normalization,
  )
  return PointDiversity(genre, language, distinct)


@dataclasses.dataclass(frozen=True)
class MetricSummary:
  """Mean of the repeat values and the 95% interval of that mean."""

  mean: float
  ci_low: float
  ci_high: float
  sd: float

  @classmethod
  def from_values(cls, values: Sequence[float]) -> 'MetricSummary | None':
    """Summarizes the finite values, None if there are none."""
    values = np.asarray(values, dtype=float)
    values = values[np.isfinite(values)]
    if values.size == 0:
      return None
    mean = float(values.mean())
    sd = float(values.std(ddof=1)) if values.size > 1 else 0.0
    half_width = Z_95 * sd / math.sqrt(values.size)
    return cls(mean, mean - half_width, mean + half_width, sd)

  @property
  def half_width(self) -> float:
    return (self.ci_high - self.ci_low) / 2

  def brackets(self, value: float) -> bool:
    return self.ci_low <= value <= self.ci_high


@dataclasses.dataclass(frozen=True, kw_only=True)
class DiversityEstimate:
  """Bootstrap estimate of the diversity of one counterfactual circuit.

  Metric summaries are None when the filtered circuit is empty or holds no
  film with the needed vectors.
  """

  criterion: Criterion | None
  repeats: int
  seed: int
  sample_size: int
  filtered_records: int
  skipped_genre: int
  skipped_language: int
  latent_genre: MetricSummary | None
  latent_language: MetricSummary | None
  language_count: MetricSummary | None
  language_count_pct: MetricSummary | None

  @property
  def description(self) -> str:
    return 'all' if self.criterion is None else self.criterion.describe()

  @property
  def defined(self) -> bool:
    return self.filtered_records > 0


def bootstrap_diversity(
    records: Sequence[screening.ScreeningRecord],
    criterion: Criterion | None,
    *,
    vectors: Mapping[str, FilmVector],
    genre_space: embeddings.EmbeddingSpace,
    language_space: embeddings.EmbeddingSpace,
    profiles: Mapping[str, country.CountryProfile] | None = None,
    repeats: int = DEFAULT_REPEATS,
    seed: int = 0,
    sample_size: int | None = None,
    normalization: metric.Normalization = metric.DEFAULT_NORMALIZATION,
    max_workers: int | None = 1,
    audit: audit_lib.AuditTrail | None = None,
) -> DiversityEstimate:
  """Estimates the diversity of the circuit restricted by `criterion`.

  Args:
    records: the actual circuit.
    criterion: which producer countries stay; None keeps all.
    vectors: film vectors from `film_vectors`.
    genre_space: the genre space.
    language_space: the language space.
    profiles: country profiles the criterion is evaluated on.
    repeats: number of resamples, at least 1.
    seed: repeat i draws from a generator seeded with `seed + i`.
    sample_size: records per resample, defaults to `len(records)`.
    normalization: see `metric.Normalization`.
    max_workers: parallelism across repeats.
    audit: receives the producers the criterion could not be checked on.

  Returns:
    The estimate. Language counts are distinct languages listed in a
    resample; the percentage is relative to the actual circuit.
  """
  if repeats < 1:
    raise ValueError(f'repeats must be >= 1, got {repeats}')
  filtered = filter_by_criterion(records, criterion, profiles, audit)
  sample_size = len(records) if sample_size is None else sample_size
  skipped_genre = sum(1 for r in filtered if not vectors[_key(r)].has_genre)
  skipped_language = sum(
      1 for r in filtered if not vectors[_key(r)].has_language
  )
  common = dict(
      criterion=criterion,
      repeats=repeats,
      seed=seed,
      sample_size=sample_size,
      filtered_records=len(filtered),
      skipped_genre=skipped_genre,
      skipped_language=skipped_language,
  )
  if not filtered:
    logging.warning(
        'No record meets %s; the estimate is undefined.',
        'all' if criterion is None else criterion.describe(),
    )
    return DiversityEstimate(
        **common,
        latent_genre=None,
        latent_language=None,
        language_count=None,
        language_count_pct=None,
    )

  language_ids = _language_ids(records)
  arrays = _flatten(
      filtered,
      vectors,
      genre_space.dimension,
      language_space.dimension,
      language_ids,
  )

  def one_repeat(repeat: int) -> tuple[float, float, int]:
    rng = np.random.default_rng(seed + repeat)
    draws = rng.integers(0, arrays.n_records, size=sample_size)
    multiplicity = np.bincount(draws, minlength=arrays.n_records)
    return _measure(
        arrays,
        multiplicity.astype(float),
        genre_space,
        language_space,
        normalization,
    )

  results = np.array(
      concurrency.map_ordered(
          one_repeat, range(repeats), max_workers=max_workers
      ),
      dtype=float,
  ).reshape(repeats, 3)
  counts = results[:, 2]
  circuit_languages = len(language_ids)
  pct = (
      MetricSummary.from_values(100 * counts / circuit_languages)
      if circuit_languages
      else None
  )
  result = DiversityEstimate(
      **common,
      latent_genre=MetricSummary.from_values(results[:, 0]),
      latent_language=MetricSummary.from_values(results[:, 1]),
      language_count=MetricSummary.from_values(counts),
      language_count_pct=pct,
  )
  logging.info(
      'Diversity of %s: %d records kept, %d repeats.',
      result.description,
      len(filtered),
      repeats,
  )
  return result


def threshold_sweep(
    records: Sequence[screening.ScreeningRecord],
    attribute: country.Attribute,
    thresholds: Sequence[float],
    **kwargs,
) -> list[DiversityEstimate]:
  """Estimates below and above each threshold, after the actual circuit.

  Args:
    records: the actual circuit.
    attribute: the attribute thresholds apply to.
    thresholds: ascending thresholds.
    **kwargs: forwarded to `bootstrap_diversity`.

  Returns:
    The unfiltered estimate, then for each threshold the `<` and `>`
    estimates.
  """
  if list(thresholds) != sorted(thresholds):
    raise ValueError(f'thresholds must be ascending, got {thresholds}')
  estimates = [bootstrap_diversity(records, None, **kwargs)]
  for threshold in thresholds:
    for comparison in Comparison:
      estimates.append(
          bootstrap_diversity(
              records,
              Criterion(attribute, comparison, threshold),
              **kwargs,
          )
      )
  return estimates


def _metric_rows(estimate: DiversityEstimate) -> list[dict[str, object]]:
  criterion = estimate.criterion
  base = {
      'attribute': 'all' if criterion is None else criterion.attribute.value,
      'op': '' if criterion is None else criterion.comparison.value,
      'threshold': math.nan if criterion is None else criterion.threshold,
      'repeats': estimate.repeats,
      'seed': estimate.seed,
  }
  rows = []
  for name, summary, skipped in (
      (LATENT_GENRE, estimate.latent_genre, estimate.skipped_genre),
      (LATENT_LANGUAGE, estimate.latent_language, estimate.skipped_language),
      (LANGUAGE_COUNT, estimate.language_count, estimate.skipped_language),
      (
          LANGUAGE_COUNT_PCT,
          estimate.language_count_pct,
          estimate.skipped_language,
      ),
  ):
    rows.append({
        **base,
        'metric': name,
        'mean': math.nan if summary is None else summary.mean,
        'ci_low': math.nan if summary is None else summary.ci_low,
        'ci_high': math.nan if summary is None else summary.ci_high,
        'skipped_records': skipped,
    })
  return rows


def sweep_frame(estimates: Sequence[DiversityEstimate]) -> pd.DataFrame:
  """Long table of estimates, one row per estimate and metric."""
  return pd.DataFrame(
      [row for estimate in estimates for row in _metric_rows(estimate)],
      columns=list(SWEEP_COLUMNS),
  )
