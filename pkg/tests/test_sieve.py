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
import json
import logging
from dataclasses import replace
from fractions import Fraction

import pytest

from selmer.census import CensusCache, census_prime
from selmer.core import CensusIntegrityError, MissingCensusError, PreconditionError
from selmer.curves import ap_membership_table
from selmer.sieve import (
    MODE_EXHAUSTIVE,
    MODE_MONTE_CARLO,
    SieveConfig,
    P_of_Y,
    P_of_Y_m,
    chebyshev_band_table,
    run_sieve_experiment,
    sieve_primes,
)

logging.basicConfig(level=logging.INFO)


@pytest.fixture
def cache(tmp_path):
    return CensusCache(tmp_path / "census.jsonl")


def test_sieve_primes():
    assert sieve_primes(4) == []
    assert sieve_primes(13) == [5, 7, 11, 13]


def test_P_of_Y_without_primes(cache):
    assert P_of_Y(4, cache) == 0


def test_P_of_Y_needs_census(cache):
    with pytest.raises(MissingCensusError):
        P_of_Y(5, cache)


def test_P_of_Y_reads_census(cache):
    records = [cache.get_or_compute(p) for p in (5, 7)]

    assert P_of_Y(7, cache) == Fraction(records[0].ap, 5 ** 4) + Fraction(records[1].ap, 7 ** 4)


def test_P_of_Y_m():
    a, b = (int(x) for x in next(zip(*ap_membership_table(5).nonzero())))

    assert P_of_Y_m((1, 1), 5) == 0
    assert P_of_Y_m((a, b), 5) == 1
    assert P_of_Y_m((a + 25, b - 50), 5) == 1
    assert P_of_Y_m((a, b), 30) <= len(sieve_primes(30))


def test_P_of_Y_m_rejects_small_ceiling():
    with pytest.raises(PreconditionError):
        P_of_Y_m((1, 1), 4)


@pytest.mark.parametrize(
    "config",
    [
        SieveConfig(4, 1000, 1000, samples=10),
        SieveConfig(5, 0, 1000, samples=10),
        SieveConfig(5, 1000, 1000, samples=10, betas=()),
        SieveConfig(5, 1000, 1000, samples=10, betas=(1, 0)),
        SieveConfig(5, 1000, 1000, samples=0),
        SieveConfig(5, 600, 1000, samples=10),
        SieveConfig(5, 10, 13, mode=MODE_EXHAUSTIVE),
        SieveConfig(5, 3538, 3538, mode=MODE_EXHAUSTIVE),
        SieveConfig(5, 13, 13, mode="stratified"),
    ],
)
def test_invalid_configurations(config):
    with pytest.raises(PreconditionError):
        config.validate()


def test_small_box_override():
    SieveConfig(5, 600, 1000, samples=10, allow_small_box=True).validate()


def test_exhaustive_single_prime():
    report = run_sieve_experiment(SieveConfig(5, 13, 13, mode=MODE_EXHAUSTIVE), parallelism=2)
    members = int(ap_membership_table(5).sum())

    assert report.sample_size == 625
    assert report.histogram == {0: 625 - members, 1: members}
    assert report.P_Y == Fraction(members, 625)
    assert report.mean == report.P_Y


def test_exhaustive_mean_is_exact():
    report = run_sieve_experiment(SieveConfig(7, 613, 613, mode=MODE_EXHAUSTIVE))

    assert report.sample_size == 1225 ** 2
    assert report.mean == report.P_Y


def test_exhaustive_run_with_census(cache):
    cache.get_or_compute(5)
    report = run_sieve_experiment(SieveConfig(5, 13, 13, mode=MODE_EXHAUSTIVE), census=cache)

    assert P_of_Y(5, cache) == report.P_Y


def test_run_leaves_census_untouched(tmp_path):
    path = tmp_path / "census.jsonl"

    with pytest.raises(MissingCensusError):
        run_sieve_experiment(SieveConfig(5, 13, 13, mode=MODE_EXHAUSTIVE), census=CensusCache(path))
    assert not path.exists()


def test_census_mismatch_is_detected(tmp_path):
    record = census_prime(5)
    tampered = replace(record, ap=record.ap + 1, ap2=record.ap2 + 1)
    path = tmp_path / "tampered.jsonl"
    path.write_text(json.dumps(tampered.to_json_dict()) + "\n", encoding="utf-8")

    with pytest.raises(CensusIntegrityError):
        run_sieve_experiment(SieveConfig(5, 13, 13, mode=MODE_EXHAUSTIVE), census=CensusCache(path))


def test_monte_carlo_is_reproducible():
    config = SieveConfig(7, 2500, 2500, mode=MODE_MONTE_CARLO, samples=40000, seed=11)

    first = run_sieve_experiment(config, parallelism=1)
    second = run_sieve_experiment(config, parallelism=4)

    assert first.to_dict() == second.to_dict()
    assert first.sample_size == 40000


def test_minimal_only_filters_pairs():
    config = SieveConfig(5, 700, 700, samples=5000, seed=3, minimal_only=True)
    report = run_sieve_experiment(config)

    assert 0 < report.sample_size <= 5000


def test_bands_never_exceed_chebyshev_ceiling():
    config = SieveConfig(11, 100, 100, samples=20000, seed=5, allow_small_box=True, betas=(4, 1, 2))
    report = run_sieve_experiment(config)

    assert [row.beta for row in report.bands] == [1, 2, 4]
    for row in report.bands:
        assert row.observed_fraction <= row.chebyshev_ceiling
        assert row.consistent
    fractions = [row.observed_fraction for row in report.bands]
    assert fractions == sorted(fractions, reverse=True)


def test_report_statistics():
    report = run_sieve_experiment(SieveConfig(7, 50, 50, samples=3000, seed=2, allow_small_box=True))
    n = report.sample_size
    histogram = report.histogram

    assert sum(histogram.values()) == n
    assert report.mean == Fraction(sum(k * c for k, c in histogram.items()), n)
    assert report.variance == sum(c * (k - report.mean) ** 2 for k, c in histogram.items()) / n
    assert report.c_emp == sum(c * (k - report.P_Y) ** 2 for k, c in histogram.items()) / (n * report.P_Y)
    assert report.to_dict()["P_Y"] == str(report.P_Y)


def test_chebyshev_band_table():
    rows = chebyshev_band_table({0: 90, 1: 8, 2: 2}, 100, Fraction(1, 10), Fraction(3, 2), (1,))

    # |k - 1/10| >= sqrt(1/10) holds for k = 1 and k = 2
    assert rows[0].observed_fraction == Fraction(10, 100)
    assert rows[0].chebyshev_ceiling == Fraction(3, 2)


@pytest.mark.slow
def test_bands_within_variance_ceiling_at_twenty():
    box = 20 ** 4 + 1
    report = run_sieve_experiment(SieveConfig(20, box, box, samples=10 ** 5, seed=1, betas=(1, 2, 4, 8)))

    assert report.sample_size == 10 ** 5
    for row in report.bands:
        ceiling = report.variance / (Fraction(row.beta) ** 2 * report.P_Y)
        assert float(row.observed_fraction) <= float(ceiling) + row.margin
    fractions = [row.observed_fraction for row in report.bands]
    assert fractions == sorted(fractions, reverse=True)
