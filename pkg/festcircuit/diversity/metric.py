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


"""Latent diversity: normalized mean deviation from the mean vector."""

from collections.abc import Sequence
import enum

from festcircuit.diversity import embeddings
import numpy as np


@enum.unique
class Normalization(enum.Enum):
  """What the mean deviation is divided by.

  RADIUS divides by half of the largest distance in the space, the largest
  mean deviation two points can reach, so an equal-weight bimodal sample at
  the two ends of the space scores 1; values are clipped to 1. DIAMETER
  divides by the largest distance itself and never exceeds 1/2 on two points.
  """

  DIAMETER = 'diameter'
  RADIUS = 'radius'


DEFAULT_NORMALIZATION = Normalization.RADIUS


def normalized_deviation(
    vectors: np.ndarray,
    weights: np.ndarray,
    max_distance: float,
    normalization: Normalization = DEFAULT_NORMALIZATION,
) -> float:
  """Weighted mean distance to the weighted mean, normalized to [0, 1].

  Args:
    vectors: n x d.
    weights: n non-negative weights; zero-weight rows are ignored.
    max_distance: the normalization constant of the space.
    normalization: see `Normalization`.

  Raises:
    ValueError: if the weights sum to zero.
  """
  weights = np.asarray(weights, dtype=float)
  total = weights.sum()
  if total <= 0:
    raise ValueError('diversity of an empty sample')
  if max_distance <= 0:
    return 0.0
  mean = weights @ vectors / total
  deviation = weights @ np.linalg.norm(vectors - mean, axis=1) / total
  match normalization:
    case Normalization.DIAMETER:
      scale = max_distance
    case Normalization.RADIUS:
      scale = max_distance / 2
    case _:
      raise ValueError(f'Unknown normalization {normalization!r}')
  return float(np.clip(deviation / scale, 0.0, 1.0))


def diversity(
    samples: Sequence[tuple[Sequence[float] | np.ndarray, float]],
    space: embeddings.EmbeddingSpace,
    normalization: Normalization = DEFAULT_NORMALIZATION,
) -> float:
  """Diversity of weighted vectors of `space`.

  Args:
    samples: (vector, weight) pairs.
    space: provides the maximum distance.
    normalization: see `Normalization`.

  Raises:
    ValueError: on an empty sample or zero total weight.
  """
  if not samples:
    raise ValueError('diversity of an empty sample')
  vectors = np.stack([np.asarray(v, dtype=float) for v, _ in samples])
  weights = np.array([w for _, w in samples], dtype=float)
  return normalized_deviation(
      vectors, weights, space.max_distance, normalization
  )
