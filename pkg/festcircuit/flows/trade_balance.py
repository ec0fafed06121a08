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


"""Import/export balance of festival entries per country."""

from collections.abc import Mapping, Sequence
import dataclasses
import fractions
import math

from absl import logging
from festcircuit.flows import flow_matrix as flow_matrix_lib
import pandas as pd

DEFAULT_MIN_HOSTED_EVENTS = 5

NO_IMPORTS = 'no-imports'
NO_EXPORTS = 'no-exports'
NO_TRADE = 'no-trade'

TRADE_BALANCE_COLUMNS = (
    'country',
    'hosted_events',
    'imports',
    'exports',
    'domestic',
    'domestic_share',
    'balance',
    'flag',
)


@dataclasses.dataclass(frozen=True, kw_only=True)
class TradeBalance:
  """Cultural trade of one country on the circuit.

  Attributes:
    country: the country code.
    hosted_events: festival editions the country hosted.
    imports: weighted entries at its festivals produced elsewhere.
    exports: weighted entries of its productions screened elsewhere.
    domestic: weighted entries it produced and hosted.
    domestic_share: domestic / (domestic + exports), None without productions.
    balance: log2(imports / exports), None when either side is zero.
    flag: why `balance` is None, one of `no-imports`, `no-exports` and
      `no-trade`.
  """

  country: str
  hosted_events: int
  imports: fractions.Fraction
  exports: fractions.Fraction
  domestic: fractions.Fraction
  domestic_share: float | None
  balance: float | None
  flag: str | None


def country_trade(
    matrix: flow_matrix_lib.FlowMatrix,
    code: str,
    hosted_events: int = 0,
) -> TradeBalance:
  """Returns the trade balance of `code` in `matrix`."""
  domestic = matrix.cell(code, code)
  imports = matrix.hosted(code) - domestic
  exports = matrix.produced(code) - domestic
  if imports and exports:
    balance, flag = math.log2(imports / exports), None
  elif exports:
    balance, flag = None, NO_IMPORTS
  elif imports:
    balance, flag = None, NO_EXPORTS
  else:
    balance, flag = None, NO_TRADE
  productions = domestic + exports
  return TradeBalance(
      country=code,
      hosted_events=hosted_events,
      imports=imports,
      exports=exports,
      domestic=domestic,
      domestic_share=float(domestic / productions) if productions else None,
      balance=balance,
      flag=flag,
  )


def trade_balances(
    matrix: flow_matrix_lib.FlowMatrix,
    hosted_events: Mapping[str, int],
    min_hosted_events: int = DEFAULT_MIN_HOSTED_EVENTS,
) -> list[TradeBalance]:
  """Trade balances of the countries hosting at least `min_hosted_events`.

  Countries whose balance is undefined are kept with a flag.

  Returns:
    Balances sorted by country code.
  """
  eligible = sorted(
      code for code, n in hosted_events.items() if n >= min_hosted_events
  )
  balances = [
      country_trade(matrix, code, hosted_events[code]) for code in eligible
  ]
  flagged = sum(1 for b in balances if b.flag is not None)
  logging.info(
      'Trade balances: %d countries with >= %d events, %d flagged.',
      len(balances),
      min_hosted_events,
      flagged,
  )
  return balances


def total_imports_and_exports(
    matrix: flow_matrix_lib.FlowMatrix,
) -> tuple[fractions.Fraction, fractions.Fraction]:
  """Sums imports and exports over every country; the two are equal."""
  imports = exports = fractions.Fraction(0)
  for code in matrix.countries():
    trade = country_trade(matrix, code)
    imports += trade.imports
    exports += trade.exports
  return imports, exports


def trade_balance_frame(balances: Sequence[TradeBalance]) -> pd.DataFrame:
  return pd.DataFrame(
      [
          {
              'country': b.country,
              'hosted_events': b.hosted_events,
              'imports': float(b.imports),
              'exports': float(b.exports),
              'domestic': float(b.domestic),
              'domestic_share': b.domestic_share,
              'balance': b.balance,
              'flag': b.flag or '',
          }
          for b in balances
      ],
      columns=list(TRADE_BALANCE_COLUMNS),
  )
