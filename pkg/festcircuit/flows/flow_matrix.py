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


"""Weighted flow of films from producer countries to host countries.

Every collapsed record carries one unit of weight, split equally among its
producers, so a film co-produced by A and B screened in X adds 1/2 to (A, X)
and 1/2 to (B, X).
"""

from collections.abc import Iterable, Mapping, Sequence
import collections
import fractions
import types

from absl import logging
from festcircuit import errors
from festcircuit.typing import screening
from festcircuit.utils import audit as audit_lib
from festcircuit.utils import concurrency
import pandas as pd

_MODULE = 'flows'

ROW_TOTAL_COLUMN = 'row_total'

Flows = Mapping[tuple[str, str], fractions.Fraction]


def accumulate_flows(
    records: Iterable[screening.ScreeningRecord],
) -> dict[tuple[str, str], fractions.Fraction]:
  """Sums exact (producer, host) weights over `records`."""
  flows: dict[tuple[str, str], fractions.Fraction] = collections.defaultdict(
      fractions.Fraction
  )
  for record in records:
    share = record.coproduction_weight
    for producer in record.producer_countries:
      flows[(producer, record.host_country)] += share
  return dict(flows)


def merge_flows(
    parts: Iterable[Flows],
) -> dict[tuple[str, str], fractions.Fraction]:
  merged: dict[tuple[str, str], fractions.Fraction] = collections.defaultdict(
      fractions.Fraction
  )
  for part in parts:
    for key, weight in part.items():
      merged[key] += weight
  return dict(merged)


def _descending(totals: Mapping[str, fractions.Fraction]) -> list[str]:
  return sorted(totals, key=lambda code: (-totals[code], code))


class FlowMatrix:
  """Producer x host matrix of weighted festival entries.

  Producers are ordered by their weighted production total and hosts by
  their hosted total, both descending with ties broken by code. Cells are
  exact fractions; `frame` exposes them as floats.
  """

  def __init__(self, flows: Flows):
    self._flows = types.MappingProxyType(
        {key: weight for key, weight in flows.items() if weight}
    )
    produced = collections.defaultdict(fractions.Fraction)
    hosted = collections.defaultdict(fractions.Fraction)
    for (producer, host), weight in self._flows.items():
      if weight < 0:
        raise ValueError(f'negative flow {producer}->{host}')
      produced[producer] += weight
      hosted[host] += weight
    self._produced = types.MappingProxyType(dict(produced))
    self._hosted = types.MappingProxyType(dict(hosted))
    self._producers = tuple(_descending(produced))
    self._hosts = tuple(_descending(hosted))

  @property
  def producers(self) -> tuple[str, ...]:
    return self._producers

  @property
  def hosts(self) -> tuple[str, ...]:
    return self._hosts

  @property
  def flows(self) -> Flows:
    return self._flows

  def countries(self) -> list[str]:
    return sorted(set(self._producers) | set(self._hosts))

  def __contains__(self, code: str) -> bool:
    return code in self._produced or code in self._hosted

  def cell(self, producer: str, host: str) -> fractions.Fraction:
    return self._flows.get((producer, host), fractions.Fraction(0))

  def produced(self, code: str) -> fractions.Fraction:
    """Weighted entries produced by `code`, wherever hosted."""
    return self._produced.get(code, fractions.Fraction(0))

  def hosted(self, code: str) -> fractions.Fraction:
    """Weighted entries screened in `code`, whoever produced them."""
    return self._hosted.get(code, fractions.Fraction(0))

  def total(self) -> fractions.Fraction:
    return sum(self._flows.values(), fractions.Fraction(0))

  def outbound(self, code: str) -> dict[str, fractions.Fraction]:
    """Host to weight of the entries produced by `code`."""
    return {
        host: weight
        for (producer, host), weight in self._flows.items()
        if producer == code
    }

  def inbound(self, code: str) -> dict[str, fractions.Fraction]:
    """Producer to weight of the entries hosted by `code`."""
    return {
        producer: weight
        for (producer, host), weight in self._flows.items()
        if host == code
    }

  def check(self, code: str) -> None:
    if code not in self:
      raise errors.UnknownCountryError(code)

  def frame(self) -> pd.DataFrame:
    """Float cells, producers as rows and hosts as columns."""
    frame = pd.DataFrame(
        0.0, index=list(self._producers), columns=list(self._hosts)
    )
    for (producer, host), weight in self._flows.items():
      frame.at[producer, host] = float(weight)
    frame.index.name = 'producer'
    frame.columns.name = 'host'
    return frame


def build_flow_matrix(
    records: Sequence[screening.ScreeningRecord],
    *,
    partitions: int = 1,
    max_workers: int | None = None,
) -> FlowMatrix:
  """Builds the flow matrix of `records`.

  Args:
    records: collapsed screening records.
    partitions: number of record chunks accumulated independently and then
      merged. Weights are exact, so the result does not depend on it.
    max_workers: parallelism across chunks.

  Returns:
    The matrix; its total equals the number of records.
  """
  chunks = concurrency.partition(records, partitions)
  parts = concurrency.map_ordered(
      accumulate_flows, chunks, max_workers=max_workers
  )
  matrix = FlowMatrix(merge_flows(parts))
  logging.info(
      'Flow matrix: %d records, %d producers x %d hosts.',
      len(records),
      len(matrix.producers),
      len(matrix.hosts),
  )
  return matrix


def row_normalize(
    matrix: FlowMatrix,
    audit: audit_lib.AuditTrail | None = None,
) -> pd.DataFrame:
  """Export shares: each producer row divided by its total.

  The diagonal cell of a producer is the share of its entries screened at
  home. Producers without entries are left out and reported.
  """
  frame = matrix.frame()
  totals = frame.sum(axis=1)
  empty = totals.index[totals <= 0]
  for code in empty:
    audit_lib.exclude(audit, _MODULE, code, 'no festival entries')
  frame = frame.drop(index=empty)
  return frame.div(totals.drop(index=empty), axis=0)


def shares_frame(
    matrix: FlowMatrix,
    audit: audit_lib.AuditTrail | None = None,
) -> pd.DataFrame:
  """Row-normalized shares with each producer's weighted production total."""
  shares = row_normalize(matrix, audit)
  shares[ROW_TOTAL_COLUMN] = [
      float(matrix.produced(code)) for code in shares.index
  ]
  return shares


def domestic_share(matrix: FlowMatrix, code: str) -> float:
  """Share of the productions of `code` screened at its own festivals.

  Raises:
    UnknownCountryError: if `code` produced nothing in the matrix.
  """
  produced = matrix.produced(code)
  if not produced:
    raise errors.UnknownCountryError(code)
  return float(matrix.cell(code, code) / produced)


def without_country(
    records: Iterable[screening.ScreeningRecord], code: str
) -> list[screening.ScreeningRecord]:
  """Drops the records that `code` produced or hosted."""
  return [
      record
      for record in records
      if record.host_country != code and code not in record.producer_countries
  ]

