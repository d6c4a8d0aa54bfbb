"""
Sweep - Bounded run of the eliminations over every candidate degree
Degrees are handed to worker processes in chunks; results come back in degree
order, so the output does not depend on the number of workers.
"""

import logging
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, Optional

from tqdm import tqdm

from .elimination import STEINER_T, SweepResult, eliminate_degree
from .engine_config import DEFAULT_CONFIG, EngineConfig
from .errors import InvalidInputError
from .group_catalog import has_non_alternating

logger = logging.getLogger(__name__)


@dataclass
class SweepStats:
    """Counters of a finished sweep"""
    degrees: int = 0
    certificates: int = 0
    survivors: int = 0
    externally_cited: int = 0
    duration: float = 0.0

    def add(self, result: SweepResult) -> None:
        self.degrees += 1
        self.certificates += len(result.certificates)
        self.survivors += len(result.survivors)
        self.externally_cited += len(result.externally_cited)


def sweep_degrees(v_max: int) -> List[int]:
    """Degrees 9..v_max with at least one non-alternating candidate"""
    if not isinstance(v_max, int) or v_max < 9:
        raise InvalidInputError(f"sweep needs v_max >= 9, got {v_max!r}")
    return [v for v in range(9, v_max + 1) if has_non_alternating(v)]


def _eliminate_chunk(args) -> List[SweepResult]:
    t, degrees = args
    return [eliminate_degree(v, t) for v in degrees]


def _make_executor(jobs: int) -> ProcessPoolExecutor:
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        ctx = multiprocessing.get_context()
    return ProcessPoolExecutor(max_workers=jobs, mp_context=ctx)


def iter_sweep(
    t: int = STEINER_T,
    v_max: int = 9,
    jobs: int = 1,
    config: EngineConfig = DEFAULT_CONFIG,
    progress: bool = False,
    stats: Optional[SweepStats] = None,
) -> Iterator[SweepResult]:
    """Yield one SweepResult per degree, in increasing degree order"""
    if not isinstance(jobs, int) or jobs < 1:
        raise InvalidInputError(f"jobs must be a positive integer, got {jobs!r}")
    degrees = sweep_degrees(v_max)
    size = config.sweep_chunk_size
    chunks = [(t, degrees[i:i + size]) for i in range(0, len(degrees), size)]
    logger.info(f"[Sweep] t={t} v_max={v_max}: {len(degrees)} degrees in {len(chunks)} chunks, {jobs} job(s)")

    start = time.time()
    bar = tqdm(total=len(degrees), desc="degrees", unit="v", disable=not progress)
    try:
        if jobs == 1:
            batches = map(_eliminate_chunk, chunks)
            for batch in batches:
                for result in batch:
                    if stats is not None:
                        stats.add(result)
                    bar.update(1)
                    yield result
        else:
            with _make_executor(jobs) as executor:
                # map() returns in submission order
                for batch in executor.map(_eliminate_chunk, chunks):
                    for result in batch:
                        if stats is not None:
                            stats.add(result)
                        bar.update(1)
                        yield result
    finally:
        bar.close()
        if stats is not None:
            stats.duration = time.time() - start
            logger.info(f"[Sweep] {stats.certificates} certificates, {stats.survivors} survivors, "
                        f"{stats.externally_cited} cited in {stats.duration:.1f}s")


def sweep(
    t: int = STEINER_T,
    v_max: int = 9,
    jobs: int = 1,
    config: EngineConfig = DEFAULT_CONFIG,
    progress: bool = False,
) -> SweepResult:
    """Collect a whole sweep in memory"""
    merged = SweepResult()
    for result in iter_sweep(t, v_max, jobs, config, progress):
        merged.extend(result)
    return merged
