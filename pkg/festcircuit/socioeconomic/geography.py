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


"""Capital city coordinates and great-circle distances."""

from collections.abc import Mapping
import os

from festcircuit import data
from festcircuit import errors
import numpy as np
import pandas as pd

EARTH_RADIUS_KM = 6371.0

CAPITAL_COLUMNS = ('code', 'capital', 'lat', 'lon')

LatLon = tuple[float, float]


def load_capitals(
    path: str | os.PathLike[str] | None = None,
) -> dict[str, LatLon]:
  """Reads a capitals table, the bundled one by default.

  Raises:
    SchemaError: if columns are missing or coordinates are out of range.
  """
  path = data.CAPITALS_CSV if path is None else path
  frame = pd.read_csv(path, keep_default_na=False, dtype={'code': str})
  missing = set(CAPITAL_COLUMNS) - set(frame.columns)
  if missing:
    raise errors.SchemaError(f'{path}: missing columns {sorted(missing)}')
  lat = pd.to_numeric(frame['lat'], errors='coerce')
  lon = pd.to_numeric(frame['lon'], errors='coerce')
  bad = ~(lat.between(-90, 90) & lon.between(-180, 180))
  if bad.any():
    raise errors.SchemaError(
        f'{path}: invalid coordinates for {sorted(frame["code"][bad])}'
    )
  return {
      code.strip(): (float(a), float(b))
      for code, a, b in zip(frame['code'], lat, lon)
  }


def haversine_km(a: LatLon, b: LatLon) -> float:
  """Great-circle distance between two points on a sphere of mean radius."""
  lat1, lon1 = np.radians(a)
  lat2, lon2 = np.radians(b)
  h = (
      np.sin((lat2 - lat1) / 2) ** 2
      + np.cos(lat1) * np.cos(lat2) * np.sin((lon2 - lon1) / 2) ** 2
  )
  return float(2 * EARTH_RADIUS_KM * np.arcsin(np.sqrt(min(1.0, h))))


def capital_distance_km(
    code_a: str,
    code_b: str,
    capitals: Mapping[str, LatLon],
) -> float:
  """Distance between the capitals of two countries in kilometers.

  Raises:
    MissingCapitalError: if either capital is unknown.
  """
  for code in (code_a, code_b):
    if code not in capitals:
      raise errors.MissingCapitalError(code)
  if code_a == code_b:
    return 0.0
  return haversine_km(capitals[code_a], capitals[code_b])
