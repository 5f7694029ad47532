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
import math
from dataclasses import replace

import pytest
from sympy import primerange

from selmer.census import METHOD_SP_ONLY, census_prime
from selmer.core import MissingCensusError, PreconditionError
from selmer.densities import (
    BOUND_BP,
    BOUND_DP,
    BOUND_FP,
    DISCLAIMER,
    E5_HEURISTIC,
    E5_SUPPLIED,
    bound_Bp,
    bound_Dp,
    bound_Fp,
    bound_report,
    delaunay_term,
    heuristic_local_torsion_mass,
    zeta,
    zeta_minus_one,
)

logging.basicConfig(level=logging.INFO)


@pytest.fixture(scope="module")
def record_7():
    return census_prime(7)


def test_zeta_two():
    value = zeta(2)

    assert value.contains(math.pi ** 2 / 6)
    assert value.error <= 2e-12


def test_zeta_ten():
    assert abs(zeta(10).value - 1.000994575127818) < 1e-12


def test_zeta_tolerance_is_respected():
    assert zeta(4, tol=1e-6).contains(math.pi ** 4 / 90)
    assert zeta(4, tol=1e-6).error <= 2e-6


def test_zeta_minus_one_has_no_cancellation():
    value = zeta_minus_one(20).value

    assert 2 ** -20 < value < 2 ** -20 * 1.001


@pytest.mark.parametrize("s", [1, 0, -2])
def test_zeta_rejects_small_arguments(s):
    with pytest.raises(PreconditionError):
        zeta(s)
    with pytest.raises(PreconditionError):
        zeta_minus_one(s)


def test_delaunay_term_five():
    assert 0.2066 < delaunay_term(5).value < 0.2067


def test_delaunay_term_exceeds_first_factor():
    previous = 1.0
    for p in primerange(5, 60):
        value = delaunay_term(p).value
        assert 1 / p <= value < previous
        previous = value


def test_heuristic_local_torsion_mass():
    assert heuristic_local_torsion_mass(4) == 0
    assert abs(heuristic_local_torsion_mass(6) - 1 / (4 * 5 ** 1.5)) < 1e-15
    assert heuristic_local_torsion_mass(100) < heuristic_local_torsion_mass(200)


def test_bound_Fp(record_7):
    report = bound_Fp(7, record_7)

    assert report.bound == BOUND_FP
    assert report.census_count == 4
    assert abs(report.census_term - zeta(10).value * 4 / 49) < 1e-12
    assert abs(report.total - (report.census_term + report.delaunay_term + report.tamagawa_term)) < 1e-12
    assert not report.vacuous
    assert report.disclaimer == DISCLAIMER
    assert report.to_dict()["disclaimer"] == DISCLAIMER


def test_bound_Bp_is_dominated_by_structural_bounds(record_7):
    for p in (5, 7, 11, 13):
        report = bound_Bp(p, census_prime(p) if p != 7 else record_7)
        assert report.census_quantity == "ap"
        assert report.census_term <= report.refined_bound * (1 + 1e-12)
        assert report.census_term <= report.coarse_bound * (1 + 1e-12)


def test_bound_Dp_default_e5(record_7):
    report = bound_Dp(7, record_7)
    base = bound_Bp(7, record_7)

    assert report.e5_source == E5_HEURISTIC
    assert abs(report.e5_term - 1 / 14) < 1e-15
    assert abs(report.total - base.total - 1 / 14) < 1e-12


def test_bound_Dp_supplied_e5(record_7):
    report = bound_Dp(7, record_7, e5_density=0.25)

    assert report.e5_source == E5_SUPPLIED
    assert report.e5_term == 0.25


def test_bound_Dp_rejects_density_out_of_range(record_7):
    with pytest.raises(PreconditionError):
        bound_Dp(7, record_7, e5_density=1.5)


def test_vacuous_bound_is_flagged(record_7):
    assert bound_Fp(7, replace(record_7, sp=49)).vacuous


def test_missing_census():
    with pytest.raises(MissingCensusError):
        bound_Fp(7, None)
    with pytest.raises(MissingCensusError):
        bound_Bp(7, census_prime(7, METHOD_SP_ONLY))


def test_census_for_other_prime(record_7):
    with pytest.raises(PreconditionError):
        bound_Fp(11, record_7)


def test_bound_report(record_7):
    assert bound_report(BOUND_DP, 7, record_7).bound == BOUND_DP
    assert bound_report(BOUND_BP, 7, record_7).bound == BOUND_BP
    with pytest.raises(PreconditionError):
        bound_report("Zp", 7, record_7)
