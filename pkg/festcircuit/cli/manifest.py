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

"""The run manifest written next to every set of outputs."""

from collections.abc import Mapping, Sequence
import dataclasses
import datetime
import hashlib
import os
from typing import Any

from festcircuit.cli import config as config_lib
from festcircuit.utils import audit as audit_lib
from festcircuit.utils import formatting

SCHEMA_VERSION = '1.0.0'
MANIFEST_FILE = 'manifest.json'

_CHUNK_BYTES = 1 << 20


def sha256_file(path: str | os.PathLike[str]) -> str:
  digest = hashlib.sha256()
  with open(path, 'rb') as f:
    while chunk := f.read(_CHUNK_BYTES):
      digest.update(chunk)
  return digest.hexdigest()


def input_digests(config: config_lib.RunConfig) -> dict[str, dict[str, str]]:
  """Path and SHA-256 of every configured input file."""
  return {
      key: {'path': path, 'sha256': sha256_file(path)}
      for key in config_lib.PATH_KEYS
      if (path := getattr(config, key)) is not None
  }


@dataclasses.dataclass(frozen=True, kw_only=True)
class Manifest:
  """What a run read, how it was configured and what it wrote.

  Attributes:
    command: the subcommand that ran.
    config: the resolved configuration.
    config_hash: `RunConfig.fingerprint()`.
    seed: the bootstrap seed.
    inputs: config key to input path and digest.
    outputs: output file name to digest, sorted by name.
    exclusions: items left out of analyses, in publication order.
    warnings: recoverable data problems, in publication order.
    created: UTC timestamp of the run; the only field that changes between
      identical runs.
  """

  command: str
  config: Mapping[str, Any]
  config_hash: str
  seed: int
  inputs: Mapping[str, Mapping[str, str]]
  outputs: Mapping[str, str]
  exclusions: Sequence[Mapping[str, Any]]
  warnings: Sequence[Mapping[str, Any]]
  created: str
  schema_version: str = SCHEMA_VERSION


def build_manifest(
    command: str,
    config: config_lib.RunConfig,
    audit: audit_lib.AuditTrail,
    outputs: Sequence[str],
) -> Manifest:
  """Collects the manifest of a finished run.

  Args:
    command: the subcommand.
    config: the configuration the run used.
    audit: the run's audit trail.
    outputs: paths of the files the run wrote.
  """
  return Manifest(
      command=command,
      config=config.to_dict(),
      config_hash=config.fingerprint(),
      seed=config.seed,
      inputs=input_digests(config),
      outputs={
          os.path.basename(path): sha256_file(path)
          for path in sorted(outputs, key=os.path.basename)
      },
      exclusions=audit.entries(audit_lib.EXCLUSIONS),
      warnings=audit.entries(audit_lib.WARNINGS),
      created=datetime.datetime.now(datetime.timezone.utc).isoformat(),
  )


def write_manifest(out_dir: str | os.PathLike[str], manifest: Manifest) -> str:
  path = os.path.join(out_dir, MANIFEST_FILE)
  formatting.write_json(path, manifest)
  return path
