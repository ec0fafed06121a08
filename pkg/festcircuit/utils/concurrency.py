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

"""Thread-pool helpers whose results never depend on scheduling order."""

from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from concurrent import futures
import contextlib
from typing import TypeVar

from absl import logging

_T = TypeVar('_T')
_R = TypeVar('_R')


@contextlib.contextmanager
def _pool(max_workers: int) -> Iterator[futures.ThreadPoolExecutor]:
  """Yields a thread pool that is drained on success and abandoned on error.

  When the body raises, pending work is cancelled and running tasks are not
  joined.

  Args:
    max_workers: size of the pool.
  """
  pool = futures.ThreadPoolExecutor(
      max_workers=max_workers, thread_name_prefix='festcircuit'
  )
  try:
    yield pool
  except BaseException:
    pool.shutdown(wait=False, cancel_futures=True)
    raise
  pool.shutdown(wait=True)


def _call(key: str, task: Callable[[], _T]) -> _T:
  try:
    return task()
  except Exception:
    logging.exception('Task %s failed', key)
    raise


def run_tasks(
    tasks: Mapping[str, Callable[[], _T]],
    *,
    max_workers: int | None = None,
) -> dict[str, _T]:
  """Runs keyed thread-safe callables and waits for all of them.

  Args:
    tasks: callables sharing only read-only state.
    max_workers: pool size. None means one worker per task; 1 runs the tasks
      inline in key order.

  Returns:
    A mapping from key to result, in the key order of `tasks`.

  Raises:
    Exception: the first error raised by any task.
  """
  if not tasks:
    return {}
  if max_workers == 1:
    return {key: _call(key, task) for key, task in tasks.items()}
  if max_workers is None:
    max_workers = len(tasks)
  with _pool(max_workers) as pool:
    future_by_key = {
        key: pool.submit(_call, key, task) for key, task in tasks.items()
    }
    for future in futures.as_completed(future_by_key.values()):
      # Surface the first failure without waiting for the others.
      future.result()
  return {key: future.result() for key, future in future_by_key.items()}


def map_ordered(
    fn: Callable[[_T], _R],
    items: Iterable[_T],
    *,
    max_workers: int | None = None,
) -> Sequence[_R]:
  """Returns `[fn(item) for item in items]`, computed in parallel.

  The output order is the input order regardless of which task finishes
  first, so reductions over the results are schedule-independent.

  Args:
    fn: function to execute (MUST BE THREADSAFE).
    items: the arguments, one call per item.
    max_workers: the maximum number of parallel jobs, see `run_tasks`.
  """
  items = list(items)
  tasks = {
      str(n): (lambda item=item: fn(item)) for n, item in enumerate(items)
  }
  results = run_tasks(tasks, max_workers=max_workers)
  return [results[str(n)] for n in range(len(items))]


def partition(items: Sequence[_T], parts: int) -> list[Sequence[_T]]:
  """Splits `items` into at most `parts` contiguous chunks of similar size."""
  if parts < 1:
    raise ValueError(f'parts must be positive, got {parts}')
  parts = min(parts, len(items)) or 1
  size, remainder = divmod(len(items), parts)
  chunks = []
  start = 0
  for n in range(parts):
    stop = start + size + (1 if n < remainder else 0)
    chunks.append(items[start:stop])
    start = stop
  return chunks
