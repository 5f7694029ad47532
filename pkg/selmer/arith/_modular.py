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
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from sympy import isprime, multiplicity
from sympy.ntheory.residue_ntheory import sqrt_mod

from selmer.core import InvalidModulusError, PreconditionError, HenselLiftError, DivisionByZeroError

SMALLEST_PRIME = 5


@lru_cache(maxsize=None)
def _is_admissible_prime(p: int) -> bool:
    return p >= SMALLEST_PRIME and bool(isprime(p))


def require_prime(p: int) -> int:
    """
    Validates that ``p`` is a prime the library works with. Short Weierstrass arithmetic degenerates in
    characteristic 2 and 3, so those primes are rejected together with composites.
    """
    if not isinstance(p, int) or isinstance(p, bool) or not _is_admissible_prime(p):
        raise InvalidModulusError(f"Expected a prime p >= {SMALLEST_PRIME}, got {p!r}")
    return p


@dataclass(frozen=True)
class Residue:
    """An element of Z/m, stored as its least nonnegative representative."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidModulusError(f"Modulus must be positive, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise PreconditionError(f"Residue value {self.value} not reduced mod {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        return cls(value % modulus, modulus)

    def _coerce(self, other: Union["Residue", int]) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise PreconditionError(f"Moduli differ: {self.modulus} and {other.modulus}")
            return other.value
        return other

    def __add__(self, other: Union["Residue", int]) -> "Residue":
        return Residue.of(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Union["Residue", int]) -> "Residue":
        return Residue.of(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other: int) -> "Residue":
        return Residue.of(other - self.value, self.modulus)

    def __mul__(self, other: Union["Residue", int]) -> "Residue":
        return Residue.of(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        return Residue.of(-self.value, self.modulus)

    def __pow__(self, exponent: int) -> "Residue":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Residue(pow(self.value, exponent, self.modulus), self.modulus)

    def inverse(self) -> "Residue":
        return Residue(inverse_mod(self.value, self.modulus), self.modulus)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


def inverse_mod(a: int, m: int) -> int:
    try:
        return pow(a, -1, m)
    except ValueError:
        raise DivisionByZeroError(f"{a} is not invertible mod {m}") from None


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise PreconditionError("The valuation of 0 is infinite")
    return int(multiplicity(p, abs(n)))


def legendre_symbol(a: int, p: int) -> int:
    """
    Legendre symbol (a/p) by Euler's criterion, a^((p-1)/2) mod p.

    :return: 0 if p divides a, 1 if a is a nonzero square mod p, -1 otherwise.
    """
    require_prime(p)
    symbol = pow(a % p, (p - 1) // 2, p)
    return -1 if symbol == p - 1 else symbol


def sqrt_mod_p(a: Union[Residue, int], p: int) -> Optional[Residue]:
    """
    Square root of ``a`` modulo the prime ``p``. Of the two roots the smaller representative is returned;
    ``None`` signals a non-residue.
    """
    require_prime(p)
    value = int(a) % p
    if value == 0:
        return Residue(0, p)
    if legendre_symbol(value, p) != 1:
        return None
    root = int(sqrt_mod(value, p))
    return Residue(min(root, p - root), p)


def hensel_sqrt_lift(a: Union[Residue, int], root: Union[Residue, int], p: int, k: int) -> Residue:
    """
    Lifts a simple square root of ``a`` mod p to the unique root mod p^k congruent to it (Newton iteration,
    doubling the number of correct digits per step).
    """
    require_prime(p)
    if k < 1:
        raise PreconditionError(f"Lifting exponent must be at least 1, got {k}")
    modulus = p ** k
    target = int(a) % modulus
    y = int(root) % p
    if y == 0:
        raise HenselLiftError(f"Root {y} of {target} is not simple mod {p}")
    if (y * y - target) % p != 0:
        raise PreconditionError(f"{y}^2 is not congruent to {target} mod {p}")

    digits = 1
    while digits < k:
        digits = min(2 * digits, k)
        step_modulus = p ** digits
        y = (y - (y * y - target) * inverse_mod(2 * y, step_modulus)) % step_modulus
    return Residue(y % modulus, modulus)
