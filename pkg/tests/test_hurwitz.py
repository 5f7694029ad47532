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

from selmer.core import InvalidDiscriminantError, PreconditionError
from selmer.hurwitz import (
    QuadForm,
    act,
    enumerate_reduced_forms,
    hurwitz_H,
    kronecker_decomposition,
    primitive_reduced_forms,
    reduce_form,
    verify_waterhouse_schoof,
)

logging.basicConfig(level=logging.INFO)

SL2_SAMPLES = [((1, 1), (0, 1)), ((0, -1), (1, 0)), ((2, 1), (1, 1)), ((1, -3), (0, 1)), ((5, 2), (2, 1))]


@pytest.mark.parametrize(
    "disc, expected", [(-3, 1), (-4, 1), (-12, 2), (-16, 2), (-19, 1), (-20, 2), (-23, 3), (-27, 2), (-43, 1)]
)
def test_hurwitz_H(disc, expected):
    assert hurwitz_H(disc) == expected


@pytest.mark.parametrize("disc", [0, 5, -1, -2, -5, -6])
def test_hurwitz_H_rejects_non_discriminants(disc):
    with pytest.raises(InvalidDiscriminantError):
        hurwitz_H(disc)


def test_enumerate_reduced_forms():
    assert enumerate_reduced_forms(-12) == [QuadForm(1, 0, 3), QuadForm(2, 2, 2)]
    assert enumerate_reduced_forms(-27) == [QuadForm(1, 1, 7), QuadForm(3, 3, 3)]


def test_reduced_forms_are_reduced():
    for disc in range(-3, -400, -1):
        if disc % 4 not in (0, 1):
            continue
        for form in enumerate_reduced_forms(disc):
            assert form.is_reduced()
            assert form.discriminant == disc
            assert reduce_form(form) == form


def test_primitive_reduced_forms():
    assert primitive_reduced_forms(-12) == [QuadForm(1, 0, 3)]


def test_kronecker_decomposition_sums_to_H():
    for disc in range(-3, -400, -1):
        if disc % 4 not in (0, 1):
            continue
        decomposition = kronecker_decomposition(disc)
        assert decomposition[1] == len(primitive_reduced_forms(disc))
        assert sum(decomposition.values()) == hurwitz_H(disc)


def test_reduce_form_is_class_invariant():
    for form in enumerate_reduced_forms(-84) + enumerate_reduced_forms(-243):
        for matrix in SL2_SAMPLES:
            moved = act(form, matrix)
            assert moved.discriminant == form.discriminant
            assert reduce_form(moved) == form


def test_act_rejects_non_unimodular_matrix():
    with pytest.raises(PreconditionError):
        act(QuadForm(1, 0, 1), ((2, 0), (0, 1)))


def test_reduce_form_rejects_indefinite_form():
    with pytest.raises(PreconditionError):
        reduce_form(QuadForm(1, 3, 1))


def test_waterhouse_schoof_small_prime():
    report = verify_waterhouse_schoof(7)

    assert report.passed()
    assert {row.t for row in report.rows} == {-5, -4, -3, -2, -1, 1, 2, 3, 4, 5}


@pytest.mark.slow
def test_waterhouse_schoof():
    for p in primerange(5, 51):
        assert verify_waterhouse_schoof(p).passed(), p
