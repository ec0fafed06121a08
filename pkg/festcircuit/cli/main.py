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

r"""Command line entry point.

Usage:
  festcircuit validate --config=run.yaml
  festcircuit all --config=run.yaml --seed=1 --out-dir=/tmp/out --workers=4
"""

import argparse
from collections.abc import Sequence

from absl import app
from absl import logging
from absl.flags import argparse_flags
from festcircuit import errors
from festcircuit.cli import commands
from festcircuit.cli import config as config_lib

VALIDATE = 'validate'
COMMANDS = (VALIDATE, *(analysis.value for analysis in commands.Analysis))


def parse_flags(argv: Sequence[str]) -> argparse.Namespace:
  """Parses the command line, program name first."""
  parser = argparse_flags.ArgumentParser(
      description='Film festival circuit analytics.'
  )
  parser.add_argument('command', choices=COMMANDS)
  parser.add_argument(
      '--config', required=True, help='YAML run configuration.'
  )
  parser.add_argument(
      '--period',
      nargs=2,
      type=int,
      metavar=('START', 'END'),
      help='Inclusive event years; overrides the config.',
  )
  parser.add_argument('--seed', type=int, help='Bootstrap seed.')
  parser.add_argument('--repeats', type=int, help='Bootstrap repeats.')
  parser.add_argument(
      '--reference-country',
      help='Country capital distances are measured from.',
  )
  parser.add_argument('--out-dir', help='Directory for the output files.')
  parser.add_argument(
      '--workers', type=int, help='Threads used inside each analysis.'
  )
  return parser.parse_args(argv[1:])


def main(args: argparse.Namespace) -> int:
  """Runs one command; returns the exit code."""
  try:
    config = config_lib.with_overrides(
        config_lib.load_config(args.config),
        period=args.period,
        seed=args.seed,
        repeats=args.repeats,
        reference_country=args.reference_country,
        out_dir=args.out_dir,
        workers=args.workers,
    )
    if args.command == VALIDATE:
      return 0 if commands.cmd_validate(config).ok else 1
    commands.cmd_run(config, commands.Analysis(args.command))
  except errors.FestCircuitError as e:
    logging.error('[%s] %s', e.module, e)
    return 1
  return 0


def run():
  app.run(main, flags_parser=parse_flags)


if __name__ == '__main__':
  run()
