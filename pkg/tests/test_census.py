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
from dataclasses import replace
from fractions import Fraction
from io import StringIO

import pytest
from sympy import primerange

from selmer.core import CensusIntegrityError, InvalidModulusError, PreconditionError
from selmer.curves import ap_membership_table
from selmer.hurwitz import hurwitz_H
from selmer.census import (
    CSV_HEADER,
    METHOD_EXHAUSTIVE,
    METHOD_FIBER,
    METHOD_SP_ONLY,
    census_prime,
    census_range,
    count_ap,
    count_sbar,
    count_sp,
    render_decimal,
    sp_from_classes,
    sp_upper_bound,
    write_csv,
)

logging.basicConfig(level=logging.INFO)


@pytest.mark.parametrize("p, expected", [(5, 2), (7, 2), (11, 1)])
def test_count_sbar(p, expected):
    assert count_sbar(p) == expected


@pytest.mark.slow
def test_count_sbar_is_class_number_up_to_200():
    for p in primerange(7, 201):
        assert count_sbar(p) == hurwitz_H(1 - 4 * p)


@pytest.mark.parametrize("p, expected", [(7, 4), (11, 5), (13, 12)])
def test_count_sp(p, expected):
    assert count_sp(p)[0] == expected


def test_count_sp_splits_special_j():
    for p in primerange(5, 40):
        sp, sp_j0, sp_j1728 = count_sp(p)
        assert sp_j0 + sp_j1728 <= sp <= sp_upper_bound(p)


def test_sp_from_classes_agrees():
    for p in primerange(5, 32):
        assert sp_from_classes(p) == count_sp(p)[0]


def test_count_sp_rejects_small_primes():
    with pytest.raises(InvalidModulusError):
        count_sp(3)


def test_count_ap_fiber_structure():
    for p in (5, 7, 11):
        sp, sp_j0, sp_j1728 = count_sp(p)
        ap, ap1, ap2 = count_ap(p)
        assert ap == ap1 + ap2
        assert ap2 == p * (sp - sp_j0 - sp_j1728)
        assert ap1 < 2 * p ** 3


def test_membership_table_matches_count():
    assert int(ap_membership_table(5).sum()) == count_ap(5)[0]
    assert int(ap_membership_table(7).sum()) == count_ap(7)[0]


@pytest.mark.slow
@pytest.mark.parametrize("p", [5, 7])
def test_count_ap_exhaustive_matches_fiber(p):
    assert count_ap(p, METHOD_EXHAUSTIVE) == count_ap(p, METHOD_FIBER)


def test_count_ap_exhaustive_is_bounded():
    with pytest.raises(PreconditionError):
        count_ap(17, METHOD_EXHAUSTIVE)


def test_count_ap_unknown_mode():
    with pytest.raises(PreconditionError):
        count_ap(7, "guess")


def test_census_prime():
    record = census_prime(7)

    assert (record.p, record.sbar, record.sp) == (7, 2, 4)
    assert record.sp_star == record.sp_j0 + record.sp_j1728
    assert record.has_ap
    assert record.method == METHOD_FIBER
    record.check_invariants()


def test_census_prime_sp_only():
    record = census_prime(11, METHOD_SP_ONLY)

    assert not record.has_ap
    assert record.ap is None
    assert record.csv_row()[-3:] == ["", "", ""]


def test_census_prime_unknown_method():
    with pytest.raises(PreconditionError):
        census_prime(7, "guess")


def test_check_invariants_rejects_broken_record():
    record = census_prime(7)

    with pytest.raises(CensusIntegrityError):
        replace(record, ap=record.ap + 1).check_invariants()
    with pytest.raises(CensusIntegrityError):
        replace(record, sp_star=record.sp_star + 1).check_invariants()


def test_json_dict_round_trip():
    record = census_prime(5)
    payload = record.to_json_dict()

    assert payload["p"] == "5"
    assert isinstance(payload["ap"], str)
    assert record.from_json_dict(payload) == record


def test_census_range_keeps_input_order():
    results = list(census_range([13, 5, 7, 3], METHOD_SP_ONLY, parallelism=3))

    assert [r.source for r in results] == [13, 5, 7, 3]
    assert [r.successful() for r in results] == [True, True, True, False]
    assert [r.data.sp for r in results[:3]] == [12, count_sp(5)[0], 4]
    assert isinstance(results[3].exception, InvalidModulusError)


def test_write_csv():
    stream = StringIO()
    write_csv([census_prime(7, METHOD_SP_ONLY)], stream)
    lines = stream.getvalue().split("\n")

    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1].startswith("7,2,4,")
    assert lines[1].endswith(",,,")


@pytest.mark.parametrize(
    "value, expected",
    [
        (Fraction(8, 289), "0.0276816608996540"),
        (Fraction(4, 49), "0.0816326530612245"),
        (Fraction(1, 3), "0.333333333333333"),
        (Fraction(2, 3), "0.666666666666667"),
        (Fraction(1), "1.00000000000000"),
        (Fraction(9999999999999999, 10 ** 16), "1.00000000000000"),
        (Fraction(0), "0"),
    ],
)
def test_render_decimal(value, expected):
    assert render_decimal(value) == expected


def test_render_decimal_rejects_negative_values():
    with pytest.raises(PreconditionError):
        render_decimal(Fraction(-1, 2))
