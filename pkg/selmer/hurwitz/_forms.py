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
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt
from typing import List, Tuple, Dict

from selmer.arith import require_prime
from selmer.core import InvalidDiscriminantError, PreconditionError
from selmer.curves import isogeny_census

Matrix = Tuple[Tuple[int, int], Tuple[int, int]]


@dataclass(frozen=True, order=True)
class QuadForm:
    """The positive definite form a*x^2 + b*x*y + c*y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def is_primitive(self) -> bool:
        return self.content == 1

    def is_reduced(self) -> bool:
        if not (self.a > 0 and abs(self.b) <= self.a <= self.c):
            return False
        return self.b >= 0 or (abs(self.b) != self.a and self.a != self.c)

    def normalize(self) -> "QuadForm":
        """Translates x -> x + r*y so that -a < b <= a."""
        r = (self.a - self.b) // (2 * self.a)
        return QuadForm(self.a, self.b + 2 * r * self.a, self.a * r * r + self.b * r + self.c)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


def _validate_discriminant(disc: int) -> None:
    if disc >= 0 or disc % 4 not in (0, 1):
        raise InvalidDiscriminantError(f"{disc} is not a negative discriminant")


@lru_cache(maxsize=4096)
def _reduced_forms(disc: int) -> Tuple[QuadForm, ...]:
    forms = []
    for a in range(1, isqrt(-disc // 3) + 1):
        for b in range(-a, a + 1):
            if (b - disc) % 2 != 0:
                continue
            numerator = b * b - disc
            if numerator % (4 * a) != 0:
                continue
            c = numerator // (4 * a)
            form = QuadForm(a, b, c)
            if form.is_reduced():
                forms.append(form)
    return tuple(sorted(forms))


def enumerate_reduced_forms(disc: int) -> List[QuadForm]:
    """
    Every reduced form of discriminant ``disc``, primitive or not, in lexicographic order. Each SL2(Z) class
    contributes exactly one form.
    """
    _validate_discriminant(disc)
    return list(_reduced_forms(disc))


def hurwitz_H(disc: int) -> int:
    """Unweighted Hurwitz class number: the number of SL2(Z) classes of forms of discriminant ``disc``."""
    _validate_discriminant(disc)
    return len(_reduced_forms(disc))


def primitive_reduced_forms(disc: int) -> List[QuadForm]:
    return [form for form in enumerate_reduced_forms(disc) if form.is_primitive()]


def kronecker_decomposition(disc: int) -> Dict[int, int]:
    """
    Splits the class count by content: maps every f with f^2 | disc and disc/f^2 a discriminant to the
    number of primitive reduced forms of discriminant disc/f^2.
    """
    _validate_discriminant(disc)
    return {
        f: len(primitive_reduced_forms(disc // (f * f)))
        for f in range(1, isqrt(-disc) + 1)
        if disc % (f * f) == 0 and (disc // (f * f)) % 4 in (0, 1)
    }


def reduce_form(form: QuadForm) -> QuadForm:
    """Reduces a positive definite form to the canonical representative of its SL2(Z) class."""
    if form.a <= 0 or form.discriminant >= 0:
        raise PreconditionError(f"{form} is not positive definite")
    form = form.normalize()
    while not (form.a < form.c or (form.a == form.c and form.b >= 0)):
        form = QuadForm(form.c, -form.b, form.a).normalize()
    return form


def act(form: QuadForm, matrix: Matrix) -> QuadForm:
    """The form f(p*x + q*y, r*x + s*y) for a matrix ((p, q), (r, s)) of determinant 1."""
    (p, q), (r, s) = matrix
    if p * s - q * r != 1:
        raise PreconditionError(f"{matrix} is not in SL2(Z)")
    a, b, c = form.a, form.b, form.c
    return QuadForm(
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )


@dataclass(frozen=True)
class TraceComparison:
    t: int
    classes: int
    hurwitz: int

    @property
    def match(self) -> bool:
        return self.classes == self.hurwitz


@dataclass
class WaterhouseSchoofReport:
    p: int
    rows: List[TraceComparison] = field(default_factory=list)

    def passed(self) -> bool:
        return all(row.match for row in self.rows)


def verify_waterhouse_schoof(p: int) -> WaterhouseSchoofReport:
    """
    Compares, for every trace t with p not dividing t and t^2 < 4p, the number of F_p-isomorphism classes with
    trace t against H(t^2 - 4p).
    """
    require_prime(p)
    census = isogeny_census(p)
    report = WaterhouseSchoofReport(p)
    bound = isqrt(4 * p - 1)
    for t in range(-bound, bound + 1):
        if t % p == 0:
            continue
        report.rows.append(TraceComparison(t, census.get(t, 0), hurwitz_H(t * t - 4 * p)))
    return report
