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
from typing import List, Dict, Any, Iterator

from sympy import primerange

from selmer.census import count_sbar, table1
from selmer.core import Result, RegressionFailure, resolve_worker_count, DEFAULT_SEED, DEFAULT_PADIC_PRECISION
from selmer.curves import anomalous_pairs, verify_fibers, verify_lemma_rank, verify_oracle_equivalence
from selmer.hurwitz import verify_waterhouse_schoof

SUITE_WATERHOUSE_SCHOOF = "waterhouse-schoof"
SUITE_CLASS_COUNT = "class-count"
SUITE_FIBERS = "fibers"
SUITE_LEMMA_RANK = "lemma-rank"
SUITE_ORACLE_EQUIVALENCE = "oracle-equivalence"
SUITE_TABLE1 = "table1"
SUITES = (
    SUITE_WATERHOUSE_SCHOOF,
    SUITE_CLASS_COUNT,
    SUITE_FIBERS,
    SUITE_LEMMA_RANK,
    SUITE_ORACLE_EQUIVALENCE,
    SUITE_TABLE1,
)

# p^4 rank tests per prime
LEMMA_RANK_CEILING = 13

logger = logging.getLogger(__name__)


@dataclass
class SuiteOutcome:
    suite: str
    p: int
    checked: int = 0
    failures: List[Any] = field(default_factory=list)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "p": self.p,
            "checked": self.checked,
            "passed": self.passed,
            "skipped": self.skipped,
            "failures": [list(f) if isinstance(f, tuple) else f for f in self.failures],
            "rows": self.rows,
        }


def _waterhouse_schoof(p: int, seed: int, precision: int) -> SuiteOutcome:
    report = verify_waterhouse_schoof(p)
    outcome = SuiteOutcome(SUITE_WATERHOUSE_SCHOOF, p, checked=len(report.rows))
    for row in report.rows:
        outcome.rows.append({"t": row.t, "classes": row.classes, "hurwitz": row.hurwitz, "match": row.match})
        if not row.match:
            outcome.failures.append(row.t)
    return outcome


def _class_count(p: int, seed: int, precision: int) -> SuiteOutcome:
    # count_sbar cross-checks enumeration against the class numbers itself
    sbar = count_sbar(p)
    return SuiteOutcome(SUITE_CLASS_COUNT, p, checked=1, rows=[{"sbar": sbar}])


def _fibers(p: int, seed: int, precision: int) -> SuiteOutcome:
    outcome = SuiteOutcome(SUITE_FIBERS, p)
    for a, b in anomalous_pairs(p):
        if a == 0 or b == 0:
            continue
        outcome.checked += 1
        count = verify_fibers(a, b, p)
        if count != p:
            outcome.failures.append((a, b, count))
    return outcome


def _lemma_rank(p: int, seed: int, precision: int) -> SuiteOutcome:
    if p > LEMMA_RANK_CEILING:
        logger.info(f"Skipping exhaustive rank check for p={p} > {LEMMA_RANK_CEILING}")
        return SuiteOutcome(SUITE_LEMMA_RANK, p, skipped=True)
    report = verify_lemma_rank(p)
    return SuiteOutcome(
        SUITE_LEMMA_RANK,
        p,
        checked=report.pairs,
        failures=list(report.violations),
        rows=[{"nonsingular": report.nonsingular, "rank_two": report.rank_two}],
    )


def _oracle_equivalence(p: int, seed: int, precision: int) -> SuiteOutcome:
    report = verify_oracle_equivalence(p, seed=seed, precision=precision)
    return SuiteOutcome(SUITE_ORACLE_EQUIVALENCE, p, checked=report.tested, failures=list(report.disagreements))


_PER_PRIME = {
    SUITE_WATERHOUSE_SCHOOF: _waterhouse_schoof,
    SUITE_CLASS_COUNT: _class_count,
    SUITE_FIBERS: _fibers,
    SUITE_LEMMA_RANK: _lemma_rank,
    SUITE_ORACLE_EQUIVALENCE: _oracle_equivalence,
}


def _table1_suite(low: int, high: int, parallelism: int) -> SuiteOutcome:
    outcome = SuiteOutcome(SUITE_TABLE1, high)
    try:
        rows = table1(max_p=high + 1, min_p=max(low, 7), check=True, parallelism=parallelism)
    except RegressionFailure as e:
        outcome.failures.append(str(e))
        return outcome
    for row in rows:
        if row.published is not None:
            outcome.checked += 1
            outcome.rows.append({"p": row.p, "computed": row.rendered, "published": row.published})
    return outcome


def run_suite(
    suite: str,
    low: int,
    high: int,
    seed: int = DEFAULT_SEED,
    parallelism: int = 0,
    precision: int = DEFAULT_PADIC_PRECISION,
) -> Iterator[Result]:
    """
    Runs one verification suite over the primes low <= p <= high.

    :param precision: Starting p-adic precision of the oracle in the oracle equivalence suite.

    :return: Results in prime order, each carrying a :class:`SuiteOutcome` or the exception raised for its prime.
    """
    if suite == SUITE_TABLE1:
        return iter([Result(data=_table1_suite(low, high, parallelism), source=suite)])
    check = _PER_PRIME[suite]

    def run_check(p):
        try:
            return Result(data=check(p, seed, precision), source=p)
        except Exception as e:
            return Result(exception=e, source=p)

    with ThreadPoolExecutor(max_workers=resolve_worker_count(parallelism)) as executor:
        return executor.map(run_check, list(primerange(max(low, 5), high + 1)))
