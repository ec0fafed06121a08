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

"""Exception hierarchy shared by all festcircuit modules."""

from collections.abc import Iterable


class FestCircuitError(Exception):
  """Base class for every error raised by festcircuit."""

  # Name of the pipeline module the error belongs to, used by the CLI to tag
  # messages.
  module: str = 'festcircuit'


class SchemaError(FestCircuitError, ValueError):
  """An input file does not have the documented columns."""

  module = 'ingest'


class MalformedRowError(FestCircuitError, ValueError):
  """A row of an input file could not be parsed."""

  module = 'ingest'

  def __init__(self, line_number: int, reason: str):
    super().__init__(f'line {line_number}: {reason}')
    self.line_number = line_number
    self.reason = reason


class UnmappedCountryError(FestCircuitError, KeyError):
  """Raw country names that the alias table cannot resolve."""

  module = 'ingest'

  def __init__(self, names: Iterable[str]):
    self.names = tuple(sorted(set(names)))
    super().__init__(f'unmapped country names: {", ".join(self.names)}')

  def __str__(self) -> str:
    return self.args[0]


class EmptySeriesError(FestCircuitError, ValueError):
  """A yearly series has no observed values."""

  module = 'socioeconomic'


class CovariateUnavailableError(FestCircuitError, KeyError):
  """A country lacks the covariate needed for a computation."""

  module = 'socioeconomic'

  def __str__(self) -> str:
    return str(self.args[0]) if self.args else ''


class MissingCapitalError(FestCircuitError, KeyError):
  """No capital coordinates are known for a country."""

  module = 'socioeconomic'

  def __str__(self) -> str:
    return f'no capital coordinates for {self.args[0]!r}'


class RankDeficiencyError(FestCircuitError, ValueError):
  """The design matrix does not have full column rank."""

  module = 'regression'


class InsufficientDataError(FestCircuitError, ValueError):
  """Not enough observations for the requested computation."""

  module = 'regression'


class UnknownCountryError(FestCircuitError, KeyError):
  """A country is not present in a flow matrix."""

  module = 'flows'

  def __str__(self) -> str:
    return f'unknown country {self.args[0]!r}'


class DegenerateCooccurrenceError(FestCircuitError, ValueError):
  """Tag co-occurrence data is too sparse to embed."""

  module = 'diversity'


class DimensionMismatchError(FestCircuitError, ValueError):
  """Vectors in one embedding file have different dimensions."""

  module = 'diversity'


class ConfigError(FestCircuitError, ValueError):
  """The run configuration is invalid."""

  module = 'cli'
