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

"""The analyses behind each subcommand and the files they write."""

from collections.abc import Callable, Sequence
import dataclasses
import enum
import functools
import os

from absl import logging
from festcircuit import errors
from festcircuit.balance import accreditation as accreditation_lib
from festcircuit.balance import expectations
from festcircuit.balance import reports as reports_lib
from festcircuit.cli import config as config_lib
from festcircuit.cli import manifest as manifest_lib
from festcircuit.diversity import bootstrap
from festcircuit.diversity import embeddings
from festcircuit.flows import flow_matrix
from festcircuit.flows import star_network
from festcircuit.flows import trade_balance
from festcircuit.ingest import aliases as aliases_lib
from festcircuit.ingest import counts
from festcircuit.ingest import films
from festcircuit.ingest import screenings
from festcircuit.regression import design as design_lib
from festcircuit.regression import diagnostics
from festcircuit.regression import ols
from festcircuit.regression import prediction
from festcircuit.regression import univariate
from festcircuit.socioeconomic import covariates
from festcircuit.socioeconomic import geography
from festcircuit.socioeconomic import profiles as profiles_lib
from festcircuit.socioeconomic import world_bank
from festcircuit.typing import country
from festcircuit.typing import screening
from festcircuit.utils import audit as audit_lib
from festcircuit.utils import formatting
import pandas as pd

_MODULE = 'cli'

VALIDATION_FILE = 'validation.json'
BALANCE_REPORTS_FILE = 'balance_reports.csv'
BALANCE_LOG_VALUES_FILE = 'balance_log_values.csv'
COUNTRY_AGGREGATES_FILE = 'country_aggregates.csv'
COEFFICIENTS_FILE = 'regression_coefficients.csv'
RANKING_FILE = 'residual_ranking.csv'
FIT_SUMMARY_FILE = 'regression_summary.json'
UIS_FILE = 'uis_correlation.csv'
FLOW_MATRIX_FILE = 'flow_matrix.csv'
FLOW_SHARES_FILE = 'flow_shares.csv'
TRADE_BALANCE_FILE = 'trade_balance.csv'
STAR_NETWORK_FILE = 'star_network_{}.json'
DIVERSITY_SWEEP_FILE = 'diversity_sweep.csv'
DIVERSITY_POINT_FILE = 'diversity_point.json'

UIS_COLUMNS = ('country', 'appearances', 'productions', 'fitted', 'residual')


@enum.unique
class Analysis(enum.Enum):
  BALANCE = 'balance'
  FIT = 'fit'
  FLOWS = 'flows'
  DIVERSITY = 'diversity'
  ALL = 'all'


class Circuit:
  """The datasets of one run, each loaded on first use."""

  def __init__(
      self,
      config: config_lib.RunConfig,
      audit: audit_lib.AuditTrail | None = None,
  ):
    self.config = config
    self.audit = audit

  def require(self, key: str) -> str:
    """Returns the configured path of `key`.

    Raises:
      ConfigError: if the path is not configured.
    """
    path = getattr(self.config, key)
    if path is None:
      raise errors.ConfigError(f'this analysis needs `{key}` in the config')
    return path

  @functools.cached_property
  def aliases(self) -> aliases_lib.CountryAliasTable:
    return aliases_lib.CountryAliasTable.from_csv(self.config.aliases)

  @functools.cached_property
  def all_records(self) -> list[screening.ScreeningRecord]:
    """Every record of the entries file, film keys assigned."""
    return films.assign_film_keys(
        screenings.parse_screenings(self.config.entries, self.aliases)
    )

  @functools.cached_property
  def records(self) -> list[screening.ScreeningRecord]:
    """The records whose event year lies in the configured period."""
    records = films.filter_period(self.all_records, *self.config.period)
    logging.info(
        'Period %d-%d: %d of %d records.',
        *self.config.period,
        len(records),
        len(self.all_records),
    )
    return records

  @functools.cached_property
  def world_bank_data(self) -> world_bank.WorldBankData:
    return world_bank.load_world_bank(
        self.require('world_bank'),
        self.aliases,
        self.config.world_bank_indicators,
        self.audit,
    )

  @functools.cached_property
  def capitals(self) -> dict[str, geography.LatLon]:
    return geography.load_capitals(self.config.capitals)

  @functools.cached_property
  def profiles(self) -> dict[str, country.CountryProfile]:
    return profiles_lib.build_profiles(
        self.records,
        self.world_bank_data,
        capitals=self.capitals,
        regions=profiles_lib.load_regions(self.config.regions),
        audit=self.audit,
    )

  @functools.cached_property
  def accreditation(self) -> accreditation_lib.AccreditationTable:
    if self.config.accreditation is None:
      return accreditation_lib.AccreditationTable()
    return accreditation_lib.AccreditationTable.from_csv(
        self.config.accreditation
    )


class _Writer:
  """Writes output files into the output directory and remembers them."""

  def __init__(self, out_dir: str):
    os.makedirs(out_dir, exist_ok=True)
    self.out_dir = out_dir
    self.paths: list[str] = []

  def _path(self, name: str) -> str:
    path = os.path.join(self.out_dir, name)
    self.paths.append(path)
    return path

  def csv(self, name: str, frame: pd.DataFrame, *, index: bool = False):
    formatting.write_csv(self._path(name), frame, index=index)

  def json(self, name: str, payload: object):
    formatting.write_json(self._path(name), payload)


@dataclasses.dataclass(frozen=True, kw_only=True)
class ValidationReport:
  """What `cmd_validate` found.

  Attributes:
    summary: statistics of every record, None if names were unmapped.
    period_summary: statistics of the records in the configured period.
    unmapped_names: raw country names the alias table cannot resolve.
    missing_covariates: period countries without World Bank population or
      GDP; empty when no World Bank file is configured.
    missing_capitals: period countries without capital coordinates.
  """

  summary: counts.RecordSummary | None
  period_summary: counts.RecordSummary | None
  unmapped_names: tuple[str, ...] = ()
  missing_covariates: tuple[str, ...] = ()
  missing_capitals: tuple[str, ...] = ()

  @property
  def ok(self) -> bool:
    return not self.unmapped_names


def validate(
    config: config_lib.RunConfig,
    audit: audit_lib.AuditTrail | None = None,
) -> ValidationReport:
  """Checks that every configured input reads and resolves.

  Raises:
    ConfigError: if a configured file is missing.
    SchemaError, MalformedRowError: if an input cannot be read.
  """
  config.check_paths()
  circuit = Circuit(config, audit)
  frame = screenings.read_entries_frame(config.entries)
  names = {
      name
      for column in ('host_country', 'producer_country')
      for name in frame[column]
      if name.strip()
  }
  unmapped = circuit.aliases.unmapped(names)
  if unmapped:
    logging.error(
        '%d unmapped country names: %s', len(unmapped), ', '.join(unmapped)
    )
    return ValidationReport(
        summary=None, period_summary=None, unmapped_names=tuple(unmapped)
    )
  records = films.assign_film_keys(
      screenings.collapse_rows(frame, circuit.aliases.resolve_all(names))
  )
  period_records = films.filter_period(records, *config.period)
  participating = {
      code
      for record in period_records
      for code in (record.host_country, *record.producer_countries)
  }
  missing_covariates = ()
  if config.world_bank is not None:
    data = world_bank.load_world_bank(
        config.world_bank, circuit.aliases, config.world_bank_indicators
    )
    missing_covariates = tuple(
        sorted(
            code
            for code in participating
            if code not in data.population or code not in data.gdp
        )
    )
  missing_capitals = tuple(sorted(participating - set(circuit.capitals)))
  # The remaining inputs only need to read.
  if config.uis is not None:
    world_bank.load_uis(config.uis, circuit.aliases)
  if config.language_vectors is not None:
    embeddings.load_language_vectors(config.language_vectors)
  if config.accreditation is not None:
    accreditation_lib.AccreditationTable.from_csv(config.accreditation)
  report = ValidationReport(
      summary=counts.summarize_records(records),
      period_summary=counts.summarize_records(period_records),
      missing_covariates=missing_covariates,
      missing_capitals=missing_capitals,
  )
  logging.info(
      'Validated %d records: %d festivals in %d series, %d countries.',
      report.summary.records,
      report.summary.festivals,
      report.summary.series,
      report.summary.countries,
  )
  for code in missing_covariates:
    audit_lib.warn(audit, _MODULE, f'{code} has no World Bank covariates')
  for code in missing_capitals:
    audit_lib.warn(audit, _MODULE, f'{code} has no capital coordinates')
  return report


def cmd_validate(
    config: config_lib.RunConfig,
    audit: audit_lib.AuditTrail | None = None,
) -> ValidationReport:
  """Validates the inputs and writes the report and the manifest."""
  audit = audit or audit_lib.AuditTrail()
  report = validate(config, audit)
  writer = _Writer(config.out_dir)
  writer.json(
      VALIDATION_FILE,
      {
          'ok': report.ok,
          'summary': report.summary,
          'period': list(config.period),
          'period_summary': report.period_summary,
          'unmapped_names': report.unmapped_names,
          'missing_covariates': report.missing_covariates,
          'missing_capitals': report.missing_capitals,
      },
  )
  manifest_lib.write_manifest(
      config.out_dir,
      manifest_lib.build_manifest('validate', config, audit, writer.paths),
  )
  return report


def run_balance(circuit: Circuit, writer: _Writer) -> None:
  """Balance reports on every split, for population and GDP per capita."""
  config = circuit.config
  reports = []
  for attribute in country.Attribute:
    universe = expectations.participating_values(
        circuit.records,
        circuit.profiles,
        attribute,
        config.period,
        circuit.audit,
    )
    kept = reports_lib.records_with_attribute(
        circuit.records, attribute, circuit.profiles, circuit.audit
    )
    if not kept or not universe:
      audit_lib.warn(
          circuit.audit,
          'balance',
          f'no records with {attribute.value}, balance reports skipped',
      )
      continue
    for split in reports_lib.Split:
      reports.extend(
          reports_lib.split_report(
              kept,
              split,
              attribute,
              circuit.profiles,
              universe,
              accreditation=circuit.accreditation,
              region_groups=config.region_groups,
              max_workers=config.workers,
          )
      )
  writer.csv(BALANCE_REPORTS_FILE, reports_lib.reports_frame(reports))
  writer.csv(BALANCE_LOG_VALUES_FILE, reports_lib.log_values_frame(reports))


def _fit_summary(fit: ols.RegressionFit) -> dict[str, object]:
  return {
      'n_obs': fit.n_obs,
      'df_model': fit.df_model,
      'df_resid': fit.df_resid,
      'r_squared': fit.r_squared,
      'adj_r_squared': fit.adj_r_squared,
      'f_statistic': fit.f_statistic,
      'f_p_value': fit.f_p_value,
      'coefficients': dict(zip(fit.terms, fit.coefficients)),
  }


def _uis_frame(correlation: univariate.UisCorrelation) -> pd.DataFrame:
  fit = correlation.fit
  return pd.DataFrame(
      [
          {
              'country': code,
              'appearances': correlation.appearances[code],
              'productions': correlation.productions[code],
              'fitted': fitted,
              'residual': fit.residuals[code],
          }
          for code, fitted in zip(fit.countries, fit.fitted)
      ],
      columns=list(UIS_COLUMNS),
  )


def run_fit(circuit: Circuit, writer: _Writer) -> None:
  """The log-log model with diagnostics, residual ranking and UIS check."""
  config = circuit.config
  appearances = {
      code: int(n)
      for code, n in counts.country_appearance_counts(
          circuit.records, weighted=False
      ).items()
  }
  rows = covariates.build_covariate_rows(
      circuit.profiles,
      appearances,
      period=config.period,
      reference_country=config.reference_country,
      audit=circuit.audit,
  )
  design = design_lib.build_design(rows, circuit.audit)
  fit = ols.fit_design(design, max_workers=config.workers)
  summary = {
      'reference_country': config.reference_country,
      'world_bank_indicators': config.world_bank_indicators,
      'full': _fit_summary(fit),
      'diagnostics': diagnostics.diagnose(fit, design.matrix).to_dict(),
      'distance_only': _fit_summary(univariate.distance_only_fit(design)),
      'uis': None,
  }
  writer.csv(COEFFICIENTS_FILE, prediction.coefficients_frame(fit))
  writer.csv(
      RANKING_FILE,
      prediction.ranking_frame(prediction.residual_ranking(fit)),
  )
  writer.csv(
      COUNTRY_AGGREGATES_FILE,
      profiles_lib.country_aggregates(
          circuit.records, circuit.profiles, config.period
      ),
  )
  if config.uis is not None:
    uis_counts = world_bank.load_uis(config.uis, circuit.aliases)
    correlation = univariate.uis_correlation(
        *univariate.uis_inputs(
            circuit.all_records, uis_counts, config.uis_period
        ),
        circuit.audit,
    )
    summary['uis'] = {
        'period': list(config.uis_period),
        **_fit_summary(correlation.fit),
        'below_line': correlation.below_line(),
    }
    writer.csv(UIS_FILE, _uis_frame(correlation))
  writer.json(FIT_SUMMARY_FILE, summary)


def run_flows(circuit: Circuit, writer: _Writer) -> None:
  """The flow matrix, export shares, trade balances and star networks."""
  config = circuit.config
  matrix = flow_matrix.build_flow_matrix(
      circuit.records, partitions=config.workers, max_workers=config.workers
  )
  writer.csv(FLOW_MATRIX_FILE, matrix.frame(), index=True)
  writer.csv(
      FLOW_SHARES_FILE,
      flow_matrix.shares_frame(matrix, circuit.audit),
      index=True,
  )
  balances = trade_balance.trade_balances(
      matrix,
      profiles_lib.hosted_event_counts(circuit.records),
      config.min_hosted_events,
  )
  writer.csv(TRADE_BALANCE_FILE, trade_balance.trade_balance_frame(balances))
  for code in config.star_countries:
    network = star_network.star_network(matrix, code, config.star_coverage)
    writer.json(STAR_NETWORK_FILE.format(code), network.to_json())


def run_diversity(circuit: Circuit, writer: _Writer) -> None:
  """Point diversity and the bootstrap threshold sweeps."""
  config = circuit.config
  genre_space = embeddings.train_genre_embeddings(
      circuit.records, config.embedding_dimension
  )
  language_space = embeddings.load_language_vectors(
      circuit.require('language_vectors'), config.language_fallbacks
  )
  vectors = bootstrap.film_vectors(
      circuit.records, genre_space, language_space, circuit.audit
  )
  inputs = {
      'vectors': vectors,
      'genre_space': genre_space,
      'language_space': language_space,
      'normalization': config.normalization,
  }
  writer.json(
      DIVERSITY_POINT_FILE,
      {
          'records': len(circuit.records),
          'genre_dimension': genre_space.dimension,
          'language_dimension': language_space.dimension,
          'normalization': config.normalization.value,
          **dataclasses.asdict(
              bootstrap.point_diversity(circuit.records, **inputs)
          ),
      },
  )
  sweeps = [
      (country.Attribute.POPULATION, config.population_thresholds),
      (country.Attribute.GDP_PER_CAPITA, config.gdp_per_capita_thresholds),
  ]
  profiles = circuit.profiles if any(t for _, t in sweeps) else None
  estimates = [
      bootstrap.bootstrap_diversity(
          circuit.records,
          None,
          repeats=config.repeats,
          seed=config.seed,
          max_workers=config.workers,
          audit=circuit.audit,
          **inputs,
      )
  ]
  for attribute, thresholds in sweeps:
    if not thresholds:
      continue
    # Each sweep starts with the unfiltered estimate, already in the list.
    estimates.extend(
        bootstrap.threshold_sweep(
            circuit.records,
            attribute,
            thresholds,
            profiles=profiles,
            repeats=config.repeats,
            seed=config.seed,
            max_workers=config.workers,
            audit=circuit.audit,
            **inputs,
        )[1:]
    )
  writer.csv(DIVERSITY_SWEEP_FILE, bootstrap.sweep_frame(estimates))


_RUNNERS: dict[Analysis, Callable[[Circuit, _Writer], None]] = {
    Analysis.BALANCE: run_balance,
    Analysis.FIT: run_fit,
    Analysis.FLOWS: run_flows,
    Analysis.DIVERSITY: run_diversity,
}


def analyses(analysis: Analysis) -> Sequence[Analysis]:
  """The analyses `analysis` stands for, in run order."""
  if analysis is Analysis.ALL:
    return tuple(_RUNNERS)
  return (analysis,)


def cmd_run(
    config: config_lib.RunConfig,
    analysis: Analysis,
    audit: audit_lib.AuditTrail | None = None,
) -> list[str]:
  """Runs `analysis` and writes its files and the manifest.

  Analyses run one after the other; each parallelizes internally over
  `config.workers` threads.

  Returns:
    The paths written, the manifest last.

  Raises:
    FestCircuitError: from any module; the CLI reports it with its module.
  """
  audit = audit or audit_lib.AuditTrail()
  config.check_paths()
  circuit = Circuit(config, audit)
  writer = _Writer(config.out_dir)
  for step in analyses(analysis):
    logging.info('Running %s.', step.value)
    _RUNNERS[step](circuit, writer)
  path = manifest_lib.write_manifest(
      config.out_dir,
      manifest_lib.build_manifest(analysis.value, config, audit, writer.paths),
  )
  return writer.paths + [path]
