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

"""Stable, platform-independent output writers."""

from collections.abc import Mapping, Sequence
import dataclasses
import enum
import fractions
import json
import math
import os
from typing import Any

import numpy as np
import pandas as pd

FLOAT_FORMAT = '%.6f'
DECIMALS = 6


def to_jsonable(value: Any) -> Any:
  """Converts `value` into plain JSON types with rounded floats."""
  if dataclasses.is_dataclass(value) and not isinstance(value, type):
    return to_jsonable(dataclasses.asdict(value))
  if isinstance(value, enum.Enum):
    return value.value
  if isinstance(value, Mapping):
    return {str(key): to_jsonable(item) for key, item in value.items()}
  if isinstance(value, (str, bool)) or value is None:
    return value
  if isinstance(value, (int, np.integer)):
    return int(value)
  if isinstance(value, (float, np.floating, fractions.Fraction)):
    value = float(value)
    if not math.isfinite(value):
      return str(value)
    return round(value, DECIMALS)
  if isinstance(value, np.ndarray):
    return [to_jsonable(item) for item in value.tolist()]
  if isinstance(value, Sequence) or isinstance(value, (set, frozenset)):
    return [to_jsonable(item) for item in value]
  return str(value)


def write_json(path: str | os.PathLike[str], payload: Any) -> None:
  with open(path, 'w', encoding='utf-8') as f:
    json.dump(to_jsonable(payload), f, indent=2, sort_keys=True)
    f.write('\n')


def write_csv(
    path: str | os.PathLike[str],
    frame: pd.DataFrame,
    *,
    index: bool = False,
) -> None:
  """Writes `frame` as UTF-8 CSV with fixed six-digit floats."""
  frame.to_csv(
      path,
      index=index,
      float_format=FLOAT_FORMAT,
      lineterminator='\n',
      encoding='utf-8',
  )
