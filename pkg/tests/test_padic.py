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
import random

import pytest

from selmer.arith import PAdicScalar
from selmer.core import PrecisionExhaustedError, DivisionByZeroError, PreconditionError

logging.basicConfig(level=logging.INFO)


def scalar(valuation, unit, precision=8, prime=5):
    return PAdicScalar(prime, valuation, unit, precision)


def test_from_int():
    x = PAdicScalar.from_int(250, 5)

    assert x.valuation == 3
    assert x.unit == 2
    assert x.absolute_precision == 11


def test_from_zero_is_exact_sentinel():
    zero = PAdicScalar.from_int(0, 5)

    assert zero.is_exact_zero
    assert zero.absolute_precision is None
    assert str(zero) == "0"


def test_multiplication_adds_valuations():
    product = scalar(0, 3) * scalar(1, 2)

    assert product.valuation == 1
    assert product.unit == 6


def test_addition_keeps_lower_valuation():
    total = scalar(2, 1) + scalar(0, 1)

    assert total.valuation == 0
    assert total.unit == 26


def test_division_subtracts_valuations():
    quotient = scalar(0, 1, precision=2) / scalar(3, 1, precision=2)

    assert quotient.valuation == -3
    assert quotient.precision == 2


def test_division_by_exact_zero():
    with pytest.raises(DivisionByZeroError):
        scalar(0, 1) / PAdicScalar.zero(5)


def test_cancellation_below_precision_is_an_error():
    x = scalar(0, 1, precision=2)

    with pytest.raises(PrecisionExhaustedError):
        x - scalar(0, 1, precision=2)


def test_cancellation_loses_digits():
    difference = scalar(0, 1 + 5, precision=3) - scalar(0, 1, precision=3)

    assert difference.valuation == 1
    assert difference.precision == 2


def test_integer_operands_are_exact():
    x = scalar(0, 2)

    total = x + 3
    assert (total.valuation, total.unit, total.precision) == (1, 1, 7)
    assert (x * 5).valuation == 1
    assert (1 / scalar(1, 1)).valuation == -1


def test_reduce_mod():
    assert scalar(1, 7).reduce_mod(2) == 35 % 25
    assert PAdicScalar.zero(5).reduce_mod(2) == 0
    with pytest.raises(PreconditionError):
        scalar(-1, 1).reduce_mod(2)


def test_precision_never_increases():
    rng = random.Random(11)
    for _ in range(200):
        x = scalar(rng.randint(-3, 3), rng.choice([u for u in range(1, 125) if u % 5]), precision=3)
        y = scalar(rng.randint(-3, 3), rng.choice([u for u in range(1, 5 ** 6) if u % 5]), precision=6)
        assert (x * y).precision <= min(x.precision, y.precision)
        assert (x / y).precision <= min(x.precision, y.precision)


def unit(rng):
    u = rng.randrange(1, 5 ** 8)
    return u if u % 5 else u + 1


def test_multiply_then_divide_round_trips():
    rng = random.Random(5)
    for _ in range(500):
        x = scalar(rng.randint(-5, 5), unit(rng))
        y = scalar(rng.randint(-5, 5), unit(rng))

        assert (x * y) / y == x
