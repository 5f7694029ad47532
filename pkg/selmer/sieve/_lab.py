#
# Copyright (c) 2026 The selmer-census authors.
#
# This file is part of selmer-census.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
#
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, sqrt
from typing import Tuple, List, Dict, Optional, Any, Sequence, Callable

import numpy as np
from sympy import primerange

from selmer.census import CensusCache
from selmer.core import PreconditionError, CensusIntegrityError, resolve_worker_count, DEFAULT_SEED
from selmer.curves import ap_membership_table, is_in_Ap, minimal_mask
from selmer.densities import heuristic_local_torsion_mass

MODE_EXHAUSTIVE = "exhaustive"
MODE_MONTE_CARLO = "monte-carlo"

DEFAULT_BETAS = (1, 2, 4, 8)
CHUNK_PAIRS = 1 << 14
MAX_EXHAUSTIVE_PAIRS = 50_000_000
# one-sided 99% normal quantile
Z_99 = 2.326

logger = logging.getLogger(__name__)


def sieve_primes(Y: int) -> List[int]:
    return list(primerange(5, Y + 1))


@dataclass(frozen=True)
class SieveConfig:
    """
    One sieve run over the box |a| < box_c, |b| < box_d. Monte Carlo runs draw ``samples`` uniform pairs from
    ``seed``; exhaustive runs visit every pair of the box.
    """

    Y: int
    box_c: int
    box_d: int
    mode: str = MODE_MONTE_CARLO
    samples: int = 0
    seed: int = DEFAULT_SEED
    betas: Tuple[float, ...] = DEFAULT_BETAS
    minimal_only: bool = False
    allow_small_box: bool = False

    def validate(self) -> None:
        if self.Y < 5:
            raise PreconditionError(f"Sieve ceiling must be at least 5, got {self.Y}")
        if self.box_c < 1 or self.box_d < 1:
            raise PreconditionError("Box bounds must be positive")
        if not self.betas or any(beta <= 0 for beta in self.betas):
            raise PreconditionError("Band widths must be positive")
        if self.mode == MODE_MONTE_CARLO:
            if self.samples <= 0:
                raise PreconditionError("Monte Carlo runs need a positive sample count")
            if not self.allow_small_box and min(self.box_c, self.box_d) <= self.Y ** 4:
                raise PreconditionError(f"Box bounds must exceed Y^4 = {self.Y ** 4} (override to allow smaller)")
        elif self.mode == MODE_EXHAUSTIVE:
            period = lcm(*(p * p for p in sieve_primes(self.Y)))
            sides = (2 * self.box_c - 1, 2 * self.box_d - 1)
            if any(side % period for side in sides):
                raise PreconditionError(f"Exhaustive box sides {sides} must be multiples of {period}")
            if sides[0] * sides[1] > MAX_EXHAUSTIVE_PAIRS:
                raise PreconditionError(f"Exhaustive box holds more than {MAX_EXHAUSTIVE_PAIRS} pairs")
        else:
            raise PreconditionError(f"Unknown sampling mode {self.mode}")


@dataclass(frozen=True)
class BandRow:
    beta: float
    observed_fraction: Fraction
    chebyshev_ceiling: Fraction
    margin: float

    @property
    def consistent(self) -> bool:
        return float(self.observed_fraction) <= float(self.chebyshev_ceiling) + self.margin


@dataclass
class SieveReport:
    Y: int
    mode: str
    P_Y: Fraction
    heuristic_mass: float
    sample_size: int
    histogram: Dict[int, int]
    mean: Fraction
    variance: Fraction
    mean_square_ratio: Fraction
    bands: List[BandRow] = field(default_factory=list)

    @property
    def c_emp(self) -> Fraction:
        return self.mean_square_ratio

    def to_dict(self) -> Dict[str, Any]:
        return {
            "Y": self.Y,
            "mode": self.mode,
            "P_Y": str(self.P_Y),
            "P_Y_decimal": float(self.P_Y),
            "heuristic_mass": self.heuristic_mass,
            "sample_size": self.sample_size,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "mean": float(self.mean),
            "variance": float(self.variance),
            "mean_square_ratio": float(self.mean_square_ratio),
            "c_emp": float(self.c_emp),
            "bands": [
                {
                    "beta": row.beta,
                    "observed_fraction": float(row.observed_fraction),
                    "chebyshev_ceiling": float(row.chebyshev_ceiling),
                    "margin": row.margin,
                }
                for row in self.bands
            ],
        }


def P_of_Y(Y: int, census: CensusCache) -> Fraction:
    """Sum of #A_p / p^4 over the primes 5 <= p <= Y, read from census records with mod p^2 counts."""
    return sum((Fraction(census.require(p, require_ap=True).ap, p ** 4) for p in sieve_primes(Y)), Fraction(0))


def P_of_Y_m(m: Tuple[int, int], Y: int) -> int:
    """Number of primes 5 <= p <= Y with (a mod p^2, b mod p^2) in the local torsion locus."""
    if Y < 5:
        raise PreconditionError(f"Sieve ceiling must be at least 5, got {Y}")
    a, b = m
    return sum(1 for p in sieve_primes(Y) if is_in_Ap(a % (p * p), b % (p * p), p))


def _local_torsion_counts(a: np.ndarray, b: np.ndarray, tables: Dict[int, np.ndarray]) -> np.ndarray:
    counts = np.zeros(a.shape, dtype=np.int64)
    for p, table in tables.items():
        modulus = p * p
        counts += table[np.mod(a, modulus), np.mod(b, modulus)]
    return counts


def _chunk_histogram(a: np.ndarray, b: np.ndarray, tables: Dict[int, np.ndarray], minimal_only: bool) -> np.ndarray:
    if minimal_only:
        keep = minimal_mask(a, b)
        a, b = a[keep], b[keep]
    return np.bincount(_local_torsion_counts(a, b, tables), minlength=len(tables) + 1)


def _exhaustive_jobs(config: SieveConfig) -> List[Tuple[int, int]]:
    # row slices [start, stop) of a in -(C-1)..C-1
    length = 2 * config.box_d - 1
    step = max(1, CHUNK_PAIRS // length)
    first = -(config.box_c - 1)
    return [(start, min(start + step, config.box_c)) for start in range(first, config.box_c, step)]


def _exhaustive_chunk(config: SieveConfig, start: int, stop: int) -> Tuple[np.ndarray, np.ndarray]:
    rows = np.arange(start, stop, dtype=np.int64)
    columns = np.arange(-(config.box_d - 1), config.box_d, dtype=np.int64)
    return np.repeat(rows, len(columns)), np.tile(columns, len(rows))


def _monte_carlo_jobs(config: SieveConfig) -> List[Tuple[np.random.SeedSequence, int]]:
    sizes = [CHUNK_PAIRS] * (config.samples // CHUNK_PAIRS)
    if config.samples % CHUNK_PAIRS:
        sizes.append(config.samples % CHUNK_PAIRS)
    return list(zip(np.random.SeedSequence(config.seed).spawn(len(sizes)), sizes))


def _monte_carlo_chunk(config: SieveConfig, seed_sequence: np.random.SeedSequence, size: int):
    rng = np.random.default_rng(seed_sequence)
    a = rng.integers(-(config.box_c - 1), config.box_c, size=size, dtype=np.int64)
    b = rng.integers(-(config.box_d - 1), config.box_d, size=size, dtype=np.int64)
    return a, b


def chebyshev_band_table(
    histogram: Dict[int, int], n: int, P: Fraction, mean_square_ratio: Fraction, betas: Sequence[float]
) -> List[BandRow]:
    rows = []
    for beta in sorted(betas):
        width = Fraction(beta) ** 2 * P
        outside = sum(count for k, count in histogram.items() if (k - P) ** 2 >= width)
        fraction = Fraction(outside, n)
        f = float(fraction)
        margin = Z_99 * sqrt(f * (1 - f) / n)
        rows.append(BandRow(beta, fraction, mean_square_ratio / Fraction(beta) ** 2, margin))
    return rows


def run_sieve_experiment(
    config: SieveConfig, census: Optional[CensusCache] = None, parallelism: int = 0
) -> SieveReport:
    """
    Computes P(Y; m) for every sampled pair and summarizes the distribution against P(Y). Membership is read
    from precomputed tables mod p^2, so pairs never need to be nonsingular or minimal globally. Samples are cut
    into fixed-size chunks, each with its own spawned seed, so the report does not depend on the worker count.

    :param census: Read-only source of #A_p; every sieve prime needs a record with mod p^2 counts, and the
        cached counts are cross-checked against the membership tables.
    """
    config.validate()
    primes = sieve_primes(config.Y)
    tables = {p: ap_membership_table(p) for p in primes}
    P = Fraction(0)
    for p, table in tables.items():
        members = int(table.sum())
        if census is not None:
            cached = census.require(p, require_ap=True).ap
            if cached != members:
                raise CensusIntegrityError(f"Cached #A_{p} = {cached} but the membership table holds {members}")
        P += Fraction(members, p ** 4)

    if config.mode == MODE_EXHAUSTIVE:
        jobs: List[Tuple[Any, int]] = _exhaustive_jobs(config)
        build: Callable[..., Tuple[np.ndarray, np.ndarray]] = _exhaustive_chunk
    else:
        jobs = _monte_carlo_jobs(config)
        build = _monte_carlo_chunk

    def run_chunk(job: Tuple[Any, int]) -> np.ndarray:
        return _chunk_histogram(*build(config, *job), tables, config.minimal_only)

    with ThreadPoolExecutor(max_workers=resolve_worker_count(parallelism)) as executor:
        partial = list(executor.map(run_chunk, jobs))
    totals = np.sum(partial, axis=0)
    histogram = {k: int(count) for k, count in enumerate(totals) if count}
    n = sum(histogram.values())
    if n == 0:
        raise PreconditionError("No pairs survived the sampling filter")

    mean = Fraction(sum(k * count for k, count in histogram.items()), n)
    variance = sum((count * (k - mean) ** 2 for k, count in histogram.items()), Fraction(0)) / n
    if P > 0:
        mean_square_ratio = sum((count * (k - P) ** 2 for k, count in histogram.items()), Fraction(0)) / (n * P)
    else:
        mean_square_ratio = Fraction(0)
    report = SieveReport(
        Y=config.Y,
        mode=config.mode,
        P_Y=P,
        heuristic_mass=heuristic_local_torsion_mass(config.Y),
        sample_size=n,
        histogram=histogram,
        mean=mean,
        variance=variance,
        mean_square_ratio=mean_square_ratio,
        bands=chebyshev_band_table(histogram, n, P, mean_square_ratio, config.betas),
    )
    logger.info(f"Sieve run Y={config.Y} ({config.mode}): n={n}, P(Y)={float(P):.6g}, mean={float(mean):.6g}")
    return report
