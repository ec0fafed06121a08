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


"""FIAPF accreditation of festival series."""

from collections.abc import Mapping
import enum
import os
import types

from festcircuit import errors
import pandas as pd

ACCREDITATION_COLUMNS = ('festival_series_id', 'accreditation')


@enum.unique
class Accreditation(enum.Enum):
  A_LIST = 'A'
  B_LIST = 'B'

  @property
  def label(self) -> str:
    return f'{self.value}-list'


class AccreditationTable:
  """Classifies festival series as A-list or B-list.

  Series not listed in the table are B-list.
  """

  def __init__(self, mapping: Mapping[str, Accreditation] | None = None):
    self._mapping = types.MappingProxyType(dict(mapping or {}))

  @classmethod
  def from_csv(cls, path: str | os.PathLike[str]) -> 'AccreditationTable':
    """Reads `festival_series_id,accreditation` rows with values A or B.

    Raises:
      SchemaError: on missing columns or unknown accreditation values.
    """
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = set(ACCREDITATION_COLUMNS) - set(frame.columns)
    if missing:
      raise errors.SchemaError(f'{path}: missing columns {sorted(missing)}')
    mapping = {}
    for series_id, value in zip(
        frame['festival_series_id'], frame['accreditation']
    ):
      try:
        mapping[series_id.strip()] = Accreditation(value.strip().upper())
      except ValueError:
        raise errors.SchemaError(
            f'{path}: accreditation of {series_id!r} must be A or B, got'
            f' {value!r}'
        ) from None
    return cls(mapping)

  def classify(self, festival_series_id: str) -> Accreditation:
    return self._mapping.get(festival_series_id, Accreditation.B_LIST)

  def a_list(self) -> frozenset[str]:
    return frozenset(
        series_id
        for series_id, value in self._mapping.items()
        if value is Accreditation.A_LIST
    )
