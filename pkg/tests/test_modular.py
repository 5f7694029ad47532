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

import pytest
from sympy import primerange

from selmer.arith import (
    Residue,
    require_prime,
    inverse_mod,
    valuation,
    legendre_symbol,
    sqrt_mod_p,
    hensel_sqrt_lift,
)
from selmer.core import InvalidModulusError, PreconditionError, HenselLiftError, DivisionByZeroError

logging.basicConfig(level=logging.INFO)


@pytest.mark.parametrize("p", [5, 7, 101])
def test_require_prime_accepts(p):
    assert require_prime(p) == p


@pytest.mark.parametrize("p", [2, 3, 4, 9, 1, 0, -7, True, 7.0])
def test_require_prime_rejects(p):
    with pytest.raises(InvalidModulusError):
        require_prime(p)


def test_residue_arithmetic_is_reduced():
    x = Residue.of(5, 7)

    assert x + 4 == Residue(2, 7)
    assert x * x == Residue(4, 7)
    assert -x == Residue(2, 7)
    assert 3 - x == Residue(5, 7)
    assert x ** -1 == Residue(3, 7)
    assert int(x.inverse() * x) == 1


def test_residue_rejects_mixed_moduli():
    with pytest.raises(PreconditionError):
        Residue(1, 7) + Residue(1, 5)


def test_residue_rejects_unreduced_value():
    with pytest.raises(PreconditionError):
        Residue(7, 7)


def test_inverse_mod():
    assert inverse_mod(3, 7) == 5
    assert inverse_mod(2, 49) * 2 % 49 == 1


def test_inverse_mod_of_non_unit():
    with pytest.raises(DivisionByZeroError):
        inverse_mod(7, 49)


def test_valuation():
    assert valuation(250, 5) == 3
    assert valuation(-49, 7) == 2
    assert valuation(3, 5) == 0
    with pytest.raises(PreconditionError):
        valuation(0, 5)


@pytest.mark.parametrize("a, expected", [(4, 1), (0, 0), (3, -1), (2, 1), (14, 0)])
def test_legendre_symbol(a, expected):
    assert legendre_symbol(a, 7) == expected


def test_legendre_symbol_rejects_even_modulus():
    with pytest.raises(InvalidModulusError):
        legendre_symbol(1, 2)


def test_legendre_symbol_is_multiplicative():
    for p in primerange(5, 100):
        for a in range(p):
            for b in range(p):
                assert legendre_symbol(a, p) * legendre_symbol(b, p) == legendre_symbol(a * b, p)


def test_sqrt_mod_p_examples():
    assert sqrt_mod_p(4, 7) == Residue(2, 7)
    assert sqrt_mod_p(Residue(2, 7), 7) == Residue(3, 7)
    assert sqrt_mod_p(3, 7) is None
    assert sqrt_mod_p(0, 7) == Residue(0, 7)


def test_sqrt_mod_p_recovers_roots():
    for p in primerange(5, 100):
        for r in range(1, p):
            root = sqrt_mod_p(r * r % p, p)
            assert int(root) in (r, p - r)
            assert int(root) <= p - int(root)


def test_hensel_sqrt_lift_examples():
    assert hensel_sqrt_lift(Residue(4, 49), Residue(2, 7), 7, 2) == Residue(2, 49)
    assert hensel_sqrt_lift(Residue(2, 49), 3, 7, 2) == Residue(10, 49)


def test_hensel_sqrt_lift_rejects_double_root():
    with pytest.raises(HenselLiftError):
        hensel_sqrt_lift(0, 0, 7, 2)


def test_hensel_sqrt_lift_rejects_wrong_root():
    with pytest.raises(PreconditionError):
        hensel_sqrt_lift(2, 2, 7, 2)


def test_hensel_sqrt_lift_squares_back():
    for p in primerange(5, 14):
        for k in range(1, 5):
            modulus = p ** k
            for r in range(1, p):
                for a in range(r * r % p, modulus, p):
                    lifted = hensel_sqrt_lift(a, r, p, k)
                    assert (int(lifted) ** 2 - a) % modulus == 0
                    assert int(lifted) % p == r
