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


"""Resolution of raw country names to canonical country codes."""

from collections.abc import Iterable, Mapping
import os

from festcircuit import data
from festcircuit import errors
import pandas as pd

# Canonical code marking a raw name that is deliberately ignored, e.g. the
# regional aggregates in World Bank downloads.
IGNORE = '-'

ALIAS_COLUMNS = ('raw_name', 'canonical_code')


def _key(raw_name: str) -> str:
  return ' '.join(raw_name.split()).casefold()


class CountryAliasTable:
  """Maps raw country names, as spelled in any input, to canonical codes."""

  def __init__(self, mapping: Mapping[str, str]):
    """Initializes the table.

    Args:
      mapping: raw name to canonical code. Lookups ignore case and repeated
        whitespace. A code of `IGNORE` marks names to drop.
    """
    self._mapping = {_key(raw): code.strip() for raw, code in mapping.items()}

  @classmethod
  def from_csv(
      cls,
      path: str | os.PathLike[str] | None = None,
      *,
      include_bundled: bool = True,
  ) -> 'CountryAliasTable':
    """Loads an alias table.

    Args:
      path: two-column CSV `raw_name,canonical_code`. Optional when the
        bundled names suffice.
      include_bundled: if True, the bundled canonical codes and display names
        resolve to themselves; entries from `path` take precedence.

    Returns:
      The alias table.

    Raises:
      SchemaError: if the file lacks the expected columns.
    """
    mapping = dict(bundled_names()) if include_bundled else {}
    if path is not None:
      frame = pd.read_csv(path, dtype=str, keep_default_na=False)
      missing = set(ALIAS_COLUMNS) - set(frame.columns)
      if missing:
        raise errors.SchemaError(
            f'{path}: alias table lacks columns {sorted(missing)}'
        )
      for raw, code in zip(frame['raw_name'], frame['canonical_code']):
        if raw.strip():
          mapping[raw] = code
    return cls(mapping)

  def __contains__(self, raw_name: str) -> bool:
    return _key(raw_name) in self._mapping

  def __len__(self) -> int:
    return len(self._mapping)

  def codes(self) -> set[str]:
    """Returns every canonical code the table resolves to."""
    return {code for code in self._mapping.values() if code != IGNORE}

  def resolve(self, raw_name: str) -> str | None:
    """Returns the canonical code of `raw_name`, None if it is ignored.

    Raises:
      UnmappedCountryError: if the name is unknown.
    """
    try:
      code = self._mapping[_key(raw_name)]
    except KeyError:
      raise errors.UnmappedCountryError([raw_name]) from None
    return None if code == IGNORE else code

  def resolve_all(self, raw_names: Iterable[str]) -> dict[str, str | None]:
    """Resolves many names, reporting every unknown name at once.

    Args:
      raw_names: names to resolve; duplicates are fine.

    Returns:
      A mapping from each distinct raw name to its code (None if ignored).

    Raises:
      UnmappedCountryError: listing all names that could not be resolved.
    """
    resolved = {}
    unmapped = set()
    for raw in set(raw_names):
      if raw in self:
        resolved[raw] = self.resolve(raw)
      else:
        unmapped.add(raw)
    if unmapped:
      raise errors.UnmappedCountryError(unmapped)
    return resolved

  def unmapped(self, raw_names: Iterable[str]) -> list[str]:
    """Returns the names that the table cannot resolve, sorted."""
    return sorted({raw for raw in raw_names if raw not in self})


def bundled_names() -> dict[str, str]:
  """Returns the bundled code and display name of every known country."""
  frame = pd.read_csv(data.REGIONS_CSV, dtype=str, keep_default_na=False)
  mapping = {}
  for code, name in zip(frame['code'], frame['name']):
    mapping[code] = code
    mapping[name] = code
  return mapping
