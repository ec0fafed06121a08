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


"""One country's festival trade partners, largest first."""

import dataclasses
import fractions
from typing import Any

from festcircuit.flows import flow_matrix as flow_matrix_lib

OTHERS = 'Others'
DEFAULT_COVERAGE = 0.2


@dataclasses.dataclass(frozen=True)
class Partner:
  """Weights exchanged with one partner.

  Attributes:
    country: the partner code, or `Others`.
    inbound: entries the partner produced and the centre hosted.
    outbound: entries the centre produced and the partner hosted.
  """

  country: str
  inbound: fractions.Fraction
  outbound: fractions.Fraction

  @property
  def weight(self) -> fractions.Fraction:
    return self.inbound + self.outbound


@dataclasses.dataclass(frozen=True)
class StarNetwork:
  """Trade partners of `country` covering a share of its foreign trade.

  `partners`, `others` and `domestic` together hold all of the country's
  inbound and outbound weight, domestic entries counted once.
  """

  country: str
  coverage: float
  domestic: fractions.Fraction
  partners: tuple[Partner, ...]
  others: Partner

  def total_weight(self) -> fractions.Fraction:
    return (
        sum((p.weight for p in self.partners), fractions.Fraction(0))
        + self.others.weight
        + self.domestic
    )

  def to_json(self) -> dict[str, Any]:
    """Nodes and directed weighted edges, the centre first."""
    nodes = [self.country] + [p.country for p in self.partners]
    edges = [{
        'source': self.country,
        'target': self.country,
        'weight': float(self.domestic),
    }]
    partners = list(self.partners)
    if self.others.weight:
      nodes.append(OTHERS)
      partners.append(self.others)
    for partner in partners:
      edges.append({
          'source': self.country,
          'target': partner.country,
          'weight': float(partner.outbound),
      })
      edges.append({
          'source': partner.country,
          'target': self.country,
          'weight': float(partner.inbound),
      })
    return {
        'country': self.country,
        'coverage': self.coverage,
        'nodes': nodes,
        'edges': edges,
    }


def star_network(
    matrix: flow_matrix_lib.FlowMatrix,
    code: str,
    coverage: float = DEFAULT_COVERAGE,
) -> StarNetwork:
  """Largest partners of `code` until `coverage` of its foreign trade.

  Partners are ranked by inbound plus outbound weight, ties by code, and the
  smallest leading group whose weight reaches `coverage` of the total
  partner weight is kept. The rest is summed into `Others`.

  Raises:
    UnknownCountryError: if `code` is not in the matrix.
    ValueError: if `coverage` is outside [0, 1].
  """
  if not 0 <= coverage <= 1:
    raise ValueError(f'coverage must be in [0, 1], got {coverage}')
  matrix.check(code)
  inbound = matrix.inbound(code)
  outbound = matrix.outbound(code)
  domestic = matrix.cell(code, code)
  zero = fractions.Fraction(0)
  ranked = sorted(
      (
          Partner(
              country=partner,
              inbound=inbound.get(partner, zero),
              outbound=outbound.get(partner, zero),
          )
          for partner in (set(inbound) | set(outbound)) - {code}
      ),
      key=lambda p: (-p.weight, p.country),
  )
  share = fractions.Fraction(coverage).limit_denominator(10**6)
  target = share * sum((p.weight for p in ranked), zero)
  kept = 0
  covered = zero
  while kept < len(ranked) and covered < target:
    covered += ranked[kept].weight
    kept += 1
  rest = ranked[kept:]
  return StarNetwork(
      country=code,
      coverage=coverage,
      domestic=domestic,
      partners=tuple(ranked[:kept]),
      others=Partner(
          country=OTHERS,
          inbound=sum((p.inbound for p in rest), zero),
          outbound=sum((p.outbound for p in rest), zero),
      ),
  )
